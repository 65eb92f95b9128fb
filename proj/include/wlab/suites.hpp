#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace wlab {

struct SuiteOptions {
  std::string kb_path = "facts/paper.kb";
  std::string diagram_path = "facts/diagram.txt";
  std::uint64_t seed = 1;
};

struct SuiteCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  int criterion = 0;
  std::string title;
  bool pass = false;
  double seconds = 0;
  std::vector<SuiteCheck> checks;
  std::vector<std::string> notes;  // informational, never affect the verdict

  // One line: "[PASS] 4 realizer-oracles: ... (12.3 s)".
  std::string summary_line() const;
  std::string report() const;
  nlohmann::json to_json() const;
};

// fig2-kb, corollaries, matrix-diff, realizer-oracles, adversary, witnesses, formats;
// the acceptance criteria 1 to 7 in that order.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
// Throws std::invalid_argument for an unknown name; data errors propagate.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt = {});

// Time limits of the criteria, in seconds.
constexpr double kFigureSeconds = 5.0;
constexpr double kOracleSeconds = 30.0;
// Adversary step bound and budgets.
constexpr std::size_t kAdversarySteps = 10000;
constexpr std::size_t kAdversaryMaxBudget = 5;

}  // namespace wlab
