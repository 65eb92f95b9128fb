#include "wlab/adversary.hpp"

#include <optional>

namespace wlab {

AdversaryResult adversary_barCN(const Machine& m, std::size_t budget, std::size_t step_bound) {
  AdversaryResult res;
  MachinePtr run = m.clone();
  std::optional<std::uint64_t> committed;  // value written since the last reset
  bool ever_committed = false;
  std::optional<std::uint64_t> to_exclude;
  while (res.forced_resets < budget + 1) {
    if (res.steps >= step_bound) {
      res.bound_hit = true;
      break;
    }
    Digit d = 1;  // nothing excluded
    if (to_exclude) {
      d = *to_exclude + 2;
      res.transcript.push_back("step " + std::to_string(res.steps) + ": exclude " + std::to_string(*to_exclude));
      to_exclude.reset();
    }
    res.input.push_back(d);
    Word out;
    run->feed(d, out);
    ++res.steps;
    for (Digit o : out) {
      if (o == kReset) {
        ++res.forced_resets;
        committed.reset();
        res.transcript.push_back("step " + std::to_string(res.steps) + ": reset " +
                                 std::to_string(res.forced_resets));
      } else if (o != 0 && !committed) {
        committed = o - 1;
        ever_committed = true;
        to_exclude = *committed;
        res.transcript.push_back("step " + std::to_string(res.steps) + ": commit " + std::to_string(*committed));
      }
    }
  }
  if (!ever_committed) {
    res.never_commits = true;
    res.flag = "never commits on name of N";
  } else if (res.bound_hit) {
    res.flag = "step bound reached with " + std::to_string(res.forced_resets) + " resets";
  }
  return res;
}

}  // namespace wlab
