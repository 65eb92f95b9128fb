#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "wlab/adversary.hpp"
#include "wlab/constructions.hpp"
#include "wlab/harness.hpp"
#include "wlab/lattice/export.hpp"
#include "wlab/suites.hpp"

namespace wlab::cli {

namespace lat = wlab::lattice;

namespace {

std::string pick(const std::string& given, const std::string& local, const std::string& built_in) {
  if (!given.empty()) return given;
  if (std::filesystem::exists(local)) return local;
  return built_in;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

lat::Order order_of(const std::string& s) {
  auto o = lat::parse_order(s);
  if (!o) throw std::invalid_argument("unknown order '" + s + "' (W, SW, TW, STW)");
  return *o;
}

// Saturates; a contradiction in the KB is a data error reported with both traces.
bool saturate_or_report(lat::Engine& e, std::ostream& out) {
  const auto& c = e.saturate();
  if (c.empty()) return true;
  out << "contradiction in the knowledge base\n" << e.trace(c.front().positive) << "---\n" << e.trace(c.front().negative);
  return false;
}

std::vector<lat::Term> node_list(const Paths& p, const lat::KnowledgeBase& kb, const std::string& spec) {
  if (spec == "fig2" || spec == "fig2-plain") {
    lat::Diagram d = lat::load_diagram(p.diagram, kb.atoms);
    if (spec == "fig2") return d.nodes;
    // The non-completion nodes; C_1 is drawn as the completion of C_0.
    std::vector<lat::Term> out;
    for (const auto& t : d.nodes)
      if (!t.is_bar() && !(t == lat::atom("C_1"))) out.push_back(t);
    return out;
  }
  std::vector<lat::Term> out;
  for (const auto& s : split(spec, ',')) out.push_back(lat::parse_term(s, kb.atoms));
  return out;
}

std::string show_word(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + (w[i] == kReset ? std::string("R") : std::to_string(w[i]));
  return s;
}

std::string show_stream(const NameStream& s) { return show_word(s.prefix()) + ";" + show_word(s.period()); }

NameStream parse_input(const std::string& text) {
  if (text.find('|') != std::string::npos || text.find('@') != std::string::npos)
    return tuple_infinite(Family::parse(text));
  return NameStream::parse(text);
}

const std::map<std::string, std::function<MachinePtr()>>& machines() {
  static const std::map<std::string, std::function<MachinePtr()>> m = {
      {"minus_one", minus_one_machine},
      {"retraction_double_completion", [] { return retraction_double_completion(Space::naturals()).make(); }},
      {"compactness_expand", [] { return compactness_expand().make(); }},
      {"compactness_compress", [] { return compactness_compress().make(); }},
      {"retraction_Nbar", retraction_Nbar},
      {"inf_to_lpojump", [] { return inf_to_lpojump().make(); }},
      {"lpojump_to_inf", [] { return lpojump_to_inf().make(); }},
      {"inf_to_neg", [] { return inf_to_neg().make(); }},
      {"wbwt_to_barCN", [] { return wbwt_to_barCN().K.make(); }},
      {"choice_retraction_cantor", [] { return choice_retraction_cantor().make(); }},
      {"choice_retraction_finite", [] { return choice_retraction_finite(3).make(); }},
      {"conc_retraction_interval", [] { return conc_retraction_interval().make(); }},
      {"jump_choice_zero_replace", [] { return jump_choice_zero_replace(Space::naturals()).make(); }},
      {"project_lift", [] { return MachinePtr(std::make_unique<ProjectLiftMachine>()); }},
      {"cn_fmc_solver", cn_fmc_solver},
      {"cn_fmc_solver_lazy", cn_fmc_solver_lazy},
      {"cn_fmc_solver_cautious", cn_fmc_solver_cautious},
      {"never_committing", never_committing_machine},
  };
  return m;
}

const std::map<std::string, std::function<LimitMachinePtr()>>& limit_machines() {
  static const std::map<std::string, std::function<LimitMachinePtr()>> m = {
      {"retraction_Bairebar", retraction_Bairebar},
      {"sort_machine", sort_machine},
      {"neg_via_measure", neg_via_measure},
  };
  return m;
}

std::string collapse_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != ' ') out += c;
  return out;
}

void write_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << j.dump(2) << "\n";
  if (!f) throw std::runtime_error("cannot write " + path);
}

}  // namespace

Paths resolve_paths(const std::string& kb, const std::string& diagram) {
  return {pick(kb, "facts/paper.kb", WLAB_DEFAULT_KB), pick(diagram, "facts/diagram.txt", WLAB_DEFAULT_DIAGRAM)};
}

int query(const Paths& p, const std::string& statement, std::ostream& out) {
  lat::KnowledgeBase kb = lat::load_kb(p.kb);
  lat::Statement s = lat::parse_statement(statement, kb.atoms);
  lat::Engine e(kb);
  if (!saturate_or_report(e, out)) return kError;
  lat::QueryResult q = e.query(s.lhs, s.order, s.rhs);
  if (!e.contradictions().empty()) {
    saturate_or_report(e, out);
    return kError;
  }
  out << lat::print_statement(s.positive, s.order, s.lhs, s.rhs) << ": ";
  if (q.verdict == lat::Verdict::open) {
    out << "open (neither the relation nor its refutation is derivable)\n";
    return kOpen;
  }
  const bool holds = (q.verdict == lat::Verdict::yes) == s.positive;
  out << (holds ? "true" : "false") << "\n" << q.trace;
  return holds ? kTrue : kFalse;
}

int derive(const Paths& p, bool list_all, std::ostream& out) {
  lat::KnowledgeBase kb = lat::load_kb(p.kb);
  lat::Engine e(kb);
  bool ok = saturate_or_report(e, out);
  if (list_all)
    for (int i = 0; i < static_cast<int>(e.facts().size()); ++i) out << e.describe(i) << "\n";
  out << p.kb << ": " << kb.facts.size() << " relations and " << kb.preds.size() << " predicates; "
      << e.facts().size() << " facts over " << e.universe_size() << " terms in " << e.passes() << " passes, "
      << e.contradictions().size() << " contradictions\n";
  return ok ? kTrue : kError;
}

int facts(const Paths& p, const std::string& filter, bool derived, std::ostream& out) {
  lat::KnowledgeBase kb = lat::load_kb(p.kb);
  std::size_t shown = 0;
  auto emit = [&](const std::string& line) {
    if (filter.empty() || line.find(filter) != std::string::npos) {
      out << line << "\n";
      ++shown;
    }
  };
  if (derived) {
    lat::Engine e(kb);
    if (!saturate_or_report(e, out)) return kError;
    for (int i = 0; i < static_cast<int>(e.facts().size()); ++i) emit(e.describe(i));
  } else {
    for (const auto& f : kb.facts)
      emit(lat::print_statement(f.positive, f.order, f.lhs, f.rhs) + "   \"" + f.citation + "\"");
    for (const auto& f : kb.preds)
      emit(std::string(f.positive ? "" : "not ") + lat::pred_name(f.pred) + "(" + lat::print_term(f.term) + ")   \"" +
           f.citation + "\"");
  }
  return shown ? kTrue : kFalse;
}

int hasse(const Paths& p, const std::string& nodes, const std::string& order, const std::string& path, std::ostream& out) {
  lat::KnowledgeBase kb = lat::load_kb(p.kb);
  auto list = node_list(p, kb, nodes);
  lat::Engine e(kb);
  if (!saturate_or_report(e, out)) return kError;
  if (path.empty()) {
    out << lat::hasse_dot(e, order_of(order), list);
  } else {
    lat::export_hasse(e, order_of(order), list, path);
    out << "wrote " << path << " (" << list.size() << " nodes)\n";
  }
  return kTrue;
}

int matrix(const Paths& p, const std::string& nodes, const std::string& orders, bool diff, std::ostream& out) {
  lat::KnowledgeBase kb = lat::load_kb(p.kb);
  auto list = node_list(p, kb, nodes);
  lat::Engine e(kb);
  if (!saturate_or_report(e, out)) return kError;
  std::vector<lat::Matrix> ms;
  for (const auto& o : split(orders, ',')) {
    ms.push_back(lat::classification_matrix(e, list, order_of(o)));
    out << lat::format_matrix(ms.back(), kb.atoms) << "\n";
  }
  if (!diff) return kTrue;
  if (ms.size() != 2) throw std::invalid_argument("--diff needs exactly two orders");
  lat::MatrixDiff d = lat::diff_matrices(ms[0], ms[1]);
  const std::string a = lat::order_name(ms[0].order), b = lat::order_name(ms[1].order);
  out << "cells classified differently by " << a << " and " << b << ": " << d.differ.size() << "\n";
  for (auto c : d.differ)
    out << "  " << lat::print_term(list[c.row]) << " <= " << lat::print_term(list[c.col]) << "   " << a << ": "
        << (ms[0].cells[c.row][c.col] == lat::Cell::le ? "yes" : "no") << ", " << b << ": "
        << (ms[1].cells[c.row][c.col] == lat::Cell::le ? "yes" : "no") << "\n";
  out << "cells open in " << a << " or " << b << " (not counted): " << d.open.size() << "\n";
  return kTrue;
}

int run(const std::string& realizer, const std::string& input, std::size_t steps, std::ostream& out) {
  NameStream p = parse_input(input);
  if (auto it = limit_machines().find(realizer); it != limit_machines().end()) {
    LimitMachinePtr m = it->second();
    for (std::size_t s = 0; s <= steps; ++s) out << "stage " << s << ": " << m->stage(p.take(s)).to_string() << "\n";
    if (p.is_ep()) {
      auto lim = m->stage_family(p).limit();
      out << "limit: " << (lim ? lim->to_string() : std::string("none")) << "\n";
    }
    return kTrue;
  }
  auto it = machines().find(realizer);
  if (it == machines().end()) throw std::invalid_argument("unknown realizer '" + realizer + "' (see `wlab list`)");
  MachinePtr m = it->second();
  Word raw = wlab::run(*m, p, steps);
  Committed c = after_last_reset(raw);
  out << "input: " << (p.family() ? p.family()->to_string() : p.to_string()) << "\n";
  out << "raw output after " << steps << " input digits: " << show_word(raw) << "\n";
  out << "committed: " << show_word(c.digits) << "\n";
  out << "resets: " << c.resets << "\n";
  if (p.is_ep() && !p.family()) {
    RunResult r = run_ep(*it->second(), p);
    if (r.kind == RunResult::Kind::infinite)
      out << "exact output: " << show_stream(r.output) << (r.resets_diverge ? " (resets forever)" : "") << "\n";
    else if (r.kind == RunResult::Kind::finite)
      out << "exact output: finite, " << show_word(r.finite_output) << "\n";
    else
      out << "exact output: no certificate within the period bound\n";
  }
  return kTrue;
}

int verify(const Paths& p, const std::string& what, std::uint64_t seed, const std::string& json_path, bool all_samples,
           std::ostream& out) {
  if (is_suite(what)) {
    SuiteOptions opt{p.kb, p.diagram, seed};
    SuiteResult r = run_suite(what, opt);
    out << r.report();
    if (!json_path.empty()) write_json(r.to_json(), json_path);
    return r.pass ? kTrue : kFalse;
  }
  std::optional<WitnessPair> w;
  for (auto& c : witness_pairs()) {
    std::string reduction = c.f->name() + (c.strong ? "<=sW" : "<=W") + c.g->name();
    if (c.name == what || collapse_spaces(what) == collapse_spaces(reduction)) w = c;
  }
  if (!w) throw std::invalid_argument("unknown suite or witness pair '" + what + "' (see `wlab list`)");
  Rng rng(seed);
  ReductionReport rep = verify_reduction(*w, w->samples(rng), rng);
  out << rep.reduction << " via " << rep.witness << "\n"
      << rep.inputs << " inputs, " << rep.passed << " checks passed, " << rep.failed << " failed, " << rep.flagged
      << " flagged\n";
  std::size_t shown = 0;
  for (const auto& e : rep.entries)
    if (!e.pass && shown++ < 5) out << "  fail on " << e.input << ": " << e.reason << "\n";
  if (!json_path.empty()) write_json(rep.to_json(all_samples), json_path);
  return rep.all_pass() ? kTrue : kFalse;
}

int adversary(const std::string& machine, std::size_t budget, std::size_t steps, std::ostream& out) {
  auto it = machines().find(machine);
  if (it == machines().end()) throw std::invalid_argument("unknown machine '" + machine + "' (see `wlab list`)");
  MachinePtr m = it->second();
  AdversaryResult r = adversary_barCN(*m, budget, steps);
  for (const auto& line : r.transcript) out << line << "\n";
  out << "input prefix: " << show_word(r.input) << "\n"
      << "forced resets: " << r.forced_resets << " (budget " << budget << ") in " << r.steps << " steps\n";
  if (!r.flag.empty()) out << "flag: " << r.flag << "\n";
  if (r.forced_resets >= budget + 1) return kTrue;
  return r.never_commits || r.bound_hit ? kOpen : kFalse;
}

int list(std::ostream& out) {
  out << "realizers:\n";
  for (const auto& e : library()) out << "  " << e.name << " [" << e.kind << "] " << e.summary << "\n";
  out << "  never_committing [mind-change] reads forever, commits nothing\n";
  out << "witness pairs:\n";
  for (const auto& w : witness_pairs())
    out << "  " << w.name << ": " << w.f->name() << (w.strong ? " <=sW " : " <=W ") << w.g->name() << "\n";
  out << "suites:\n";
  for (const auto& s : suite_names()) out << "  " << s << "\n";
  return kTrue;
}

}  // namespace wlab::cli
