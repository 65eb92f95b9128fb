#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wlab/transducer.hpp"

namespace wlab {

struct AdversaryResult {
  std::size_t forced_resets = 0;
  std::size_t steps = 0;
  bool bound_hit = false;
  bool never_commits = false;
  Word input;                       // the constructed input prefix
  std::vector<std::string> transcript;
  std::string flag;
};

// Plays against a machine claiming to solve bar(C_N) on range-coded names
// under a completion (0 pads, 1 carries nothing, n+2 excludes n; answers
// are n+1). Feeds the name of N and excludes every committed value until
// budget+1 resets are forced or the step bound is reached.
AdversaryResult adversary_barCN(const Machine& m, std::size_t budget, std::size_t step_bound = 10000);

}  // namespace wlab
