#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "wlab/constructions.hpp"

namespace wlab {

struct SampleReport {
  std::string input;
  std::string k_output;
  std::string g_answer;
  std::string h_output;
  bool pass = false;
  bool flagged = false;  // K(p) left dom(g) on an input outside dom(f)
  std::string reason;
};

struct ReductionReport {
  std::string reduction;
  std::string witness;
  std::vector<SampleReport> entries;  // one per (input, answer) combination
  std::size_t inputs = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t flagged = 0;

  bool all_pass() const { return failed == 0 && !entries.empty(); }
  nlohmann::json to_json(bool include_passing = true) const;
};

// Runs H<id, G K> on every sample, with G ranging over the canonical solver of
// g and its adversarial answer sampler. Passing is non-refutation only.
ReductionReport verify_reduction(const WitnessPair& w, const std::vector<NameStream>& samples, Rng& rng);

// Exact output of c on x, checked digit by digit against c's machine.
// Throws std::runtime_error when the two disagree.
Exact evaluate(const Construction& c, const NameStream& x);

}  // namespace wlab
