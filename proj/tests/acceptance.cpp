// Runs the seven acceptance suites and prints one verdict line per criterion,
// followed by the per-check details. Exit status 0 only if all pass.
#include <iostream>

#include "wlab/suites.hpp"

int main() {
  wlab::SuiteOptions opt;
  opt.kb_path = WLAB_KB_PATH;
  opt.diagram_path = WLAB_DIAGRAM_PATH;
  opt.seed = 1;

  std::vector<wlab::SuiteResult> results;
  for (const auto& name : wlab::suite_names()) {
    try {
      results.push_back(wlab::run_suite(name, opt));
    } catch (const std::exception& e) {
      wlab::SuiteResult r;
      r.name = name;
      r.criterion = static_cast<int>(results.size()) + 1;
      r.title = std::string("error: ") + e.what();
      results.push_back(r);
    }
    std::cout << results.back().summary_line() << std::endl;
  }
  std::cout << "\n";
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    std::cout << r.report() << "\n";
  }
  std::cout << (all ? "all criteria pass" : "some criteria fail") << "\n";
  return all ? 0 : 1;
}
