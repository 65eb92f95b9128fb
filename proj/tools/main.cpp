#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace cli = wlab::cli;

int main(int argc, char** argv) {
  CLI::App app{"wlab: Weihrauch degrees of completions, derivations and realizers"};
  app.require_subcommand(1);
  std::string kb, diagram;
  app.add_option("--kb", kb, "knowledge base (default facts/paper.kb)");
  app.add_option("--diagram", diagram, "diagram transcription (default facts/diagram.txt)");

  std::string statement;
  auto* q = app.add_subcommand("query", "decide \"f <=W g\" (also SW, TW, STW, and !<= for a refutation)");
  q->add_option("statement", statement)->required();

  bool list_all = false;
  auto* d = app.add_subcommand("derive", "saturate the KB and report");
  d->add_flag("--list", list_all, "print every derived fact with its rule");

  std::string filter;
  bool derived = false;
  auto* f = app.add_subcommand("facts", "list base facts, or derived ones, containing a substring");
  f->add_option("filter", filter);
  f->add_flag("--derived", derived);

  std::string nodes = "fig2", order = "W", out_path;
  auto* h = app.add_subcommand("hasse", "DOT Hasse diagram of derived <=");
  h->add_option("--nodes", nodes, "fig2, fig2-plain, or comma-separated terms")->capture_default_str();
  h->add_option("--order", order)->capture_default_str();
  h->add_option("--out", out_path, "output file (default stdout)");

  std::string orders = "W,TW";
  bool diff = false;
  std::string mnodes = "fig2-plain";
  auto* m = app.add_subcommand("matrix", "classification matrices and their diff");
  m->add_option("--orders", orders)->capture_default_str();
  m->add_option("--nodes", mnodes)->capture_default_str();
  m->add_flag("--diff", diff);

  std::string realizer, input;
  std::size_t steps = 20;
  auto* r = app.add_subcommand("run", "run a realizer on a stream \"u;v\" or a family literal");
  r->add_option("realizer", realizer)->required();
  r->add_option("--input", input)->required();
  r->add_option("--steps", steps)->capture_default_str();

  std::string what, json_path;
  std::uint64_t seed = 1;
  bool all_samples = false;
  auto* v = app.add_subcommand("verify", "run a suite or a witness pair");
  v->add_option("what", what, "suite or witness-pair name")->required();
  v->add_option("--seed", seed)->capture_default_str();
  v->add_option("--json", json_path, "write the JSON report here");
  v->add_flag("--all-samples", all_samples, "include passing samples in the JSON report");

  std::string machine;
  std::size_t budget = 0, bound = 10000;
  auto* a = app.add_subcommand("adversary", "force mind changes on a bar(C_N) solver");
  a->add_option("machine", machine)->required();
  a->add_option("--budget", budget)->required();
  a->add_option("--steps", bound)->capture_default_str();

  auto* l = app.add_subcommand("list", "realizers, witness pairs and suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kError;
  }

  try {
    cli::Paths p = cli::resolve_paths(kb, diagram);
    if (*q) return cli::query(p, statement, std::cout);
    if (*d) return cli::derive(p, list_all, std::cout);
    if (*f) return cli::facts(p, filter, derived, std::cout);
    if (*h) return cli::hasse(p, nodes, order, out_path, std::cout);
    if (*m) return cli::matrix(p, mnodes, orders, diff, std::cout);
    if (*r) return cli::run(realizer, input, steps, std::cout);
    if (*v) return cli::verify(p, what, seed, json_path, all_samples, std::cout);
    if (*a) return cli::adversary(machine, budget, bound, std::cout);
    if (*l) return cli::list(std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kError;
  }
  return cli::kError;
}
