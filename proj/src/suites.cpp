#include "wlab/suites.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include <boost/dynamic_bitset.hpp>

#include "wlab/adversary.hpp"
#include "wlab/constructions.hpp"
#include "wlab/harness.hpp"
#include "wlab/lattice/export.hpp"
#include "wlab/sampling.hpp"

namespace wlab {

namespace lat = wlab::lattice;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fixed(double x, int digits = 2) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << x;
  return s.str();
}

void check(SuiteResult& r, std::string name, bool pass, std::string detail) {
  r.checks.push_back({std::move(name), pass, std::move(detail)});
}

bool is_figure_citation(const std::string& c) { return c.rfind("diagram:", 0) == 0; }

lat::KnowledgeBase without_figure_facts(const lat::KnowledgeBase& kb) {
  lat::KnowledgeBase out = kb;
  out.facts.clear();
  for (const auto& f : kb.facts)
    if (!is_figure_citation(f.citation)) out.facts.push_back(f);
  return out;
}

std::string short_list(const std::vector<std::string>& items, std::size_t max = 6) {
  std::string s;
  for (std::size_t i = 0; i < items.size() && i < max; ++i) s += (i ? "; " : "") + items[i];
  if (items.size() > max) s += "; ... (" + std::to_string(items.size()) + " in all)";
  return s;
}

// 1. diagram reproduction -----------------------------------------------------

SuiteResult fig2_kb(const SuiteOptions& opt) {
  SuiteResult r;
  r.title = "diagram arrows and dashed-box strictness derived from the shipped KB";
  auto t0 = Clock::now();
  lat::KnowledgeBase kb = lat::load_kb(opt.kb_path);
  lat::Diagram d = lat::load_diagram(opt.diagram_path, kb.atoms);
  lat::Engine e(kb);
  e.extend(d.nodes);
  const auto& contra = e.saturate();
  const double secs = since(t0);

  check(r, "no contradictions", contra.empty(),
        contra.empty() ? "0 contradictions" : std::to_string(contra.size()) + " contradiction(s), first: " +
                                                  e.statement(contra.front().positive) + " vs " +
                                                  e.statement(contra.front().negative));

  std::vector<std::string> missing;
  std::size_t curved = 0;
  for (const auto& a : d.arrows) {
    if (a.curved) ++curved;
    if (!e.find(true, lat::Order::W, *e.id(a.to), *e.id(a.from)))
      missing.push_back(lat::print_statement(true, lat::Order::W, a.to, a.from));
  }
  check(r, "arrows derived", missing.empty(),
        std::to_string(d.arrows.size() - missing.size()) + "/" + std::to_string(d.arrows.size()) + " arrows (" +
            std::to_string(curved) + " curved)" + (missing.empty() ? "" : "; missing: " + short_list(missing)));

  const std::set<std::string> expected_boxes = {"C_NN", "C_N", "C_N'", "C_R", "PC_R", "PC_2N", "PCC_01", "Low", "C_0"};
  std::set<std::string> boxes;
  std::vector<std::string> not_strict;
  for (const auto& f : d.boxed) {
    boxes.insert(lat::print_term(f));
    auto b = e.id(lat::bar(f));
    bool strict = b && e.find(true, lat::Order::W, *e.id(f), *b) && e.find(false, lat::Order::W, *b, *e.id(f));
    if (!strict) not_strict.push_back(lat::print_term(f));
  }
  check(r, "dashed-box pairs", boxes == expected_boxes,
        std::to_string(boxes.size()) + " boxes transcribed, expected the 9 pairs of choice, jump and low problems");
  check(r, "strictness derived", not_strict.empty(),
        std::to_string(d.boxed.size() - not_strict.size()) + "/" + std::to_string(d.boxed.size()) +
            " pairs f <W bar(f)" + (not_strict.empty() ? "" : "; not derived: " + short_list(not_strict)));

  check(r, "runtime", secs < kFigureSeconds,
        "load and saturation " + fixed(secs, 3) + " s (limit " + fixed(kFigureSeconds, 0) + " s)");

  std::size_t bad = 0;
  std::string why, first;
  for (int i = 0; i < static_cast<int>(e.facts().size()); ++i)
    if (!e.replay(i, &why) && bad++ == 0) first = why;
  check(r, "traces replay", bad == 0,
        std::to_string(e.facts().size()) + " facts, " + std::to_string(bad) + " replay failures" +
            (first.empty() ? "" : ", first: " + first));

  // The transcription must not contradict the in-text facts on their own.
  lat::Engine text(without_figure_facts(kb));
  text.extend(d.nodes);
  text.saturate();
  std::vector<std::string> against;
  std::size_t from_text = 0;
  for (const auto& a : d.arrows) {
    int to = *text.id(a.to), from = *text.id(a.from);
    if (text.find(false, lat::Order::W, to, from)) against.push_back(lat::print_statement(true, lat::Order::W, a.to, a.from));
    if (text.find(true, lat::Order::W, to, from)) ++from_text;
  }
  check(r, "transcription cross-check", against.empty() && text.contradictions().empty(),
        against.empty() ? "no arrow is refuted by the in-text facts alone"
                        : "refuted by in-text facts: " + short_list(against));
  r.notes.push_back(std::to_string(from_text) + " arrows follow from in-text facts alone; " +
                    std::to_string(d.arrows.size() - from_text) + " need the figure-only facts");
  r.notes.push_back("universe " + std::to_string(e.universe_size()) + " terms, " + std::to_string(e.passes()) +
                    " passes");
  return r;
}

// 2. corollaries ----------------------------------------------------------------

struct Target {
  bool positive;
  lat::Order order;
  std::string lhs, rhs;
  std::string source;
};

SuiteResult corollaries(const SuiteOptions& opt) {
  SuiteResult r;
  r.title = "named corollaries rederived from other base facts by rules R1-R20";
  lat::KnowledgeBase kb = lat::load_kb(opt.kb_path);
  lat::Engine e(kb);
  e.saturate();
  auto P = [&](const std::string& s) { return lat::parse_term(s, kb.atoms); };

  struct Chain {
    std::string name;
    lat::Order order;
    std::vector<std::string> terms;
  };
  std::vector<Chain> chains;
  for (int n = 1; n <= 4; ++n)
    chains.push_back({"Cor. after Prop. Finite choice", lat::Order::TW, {"C_" + std::to_string(n), "C_" + std::to_string(n + 1)}});
  chains.push_back({"Cor. TCN-CNS", lat::Order::W, {"T(C_N)", "C_N * bar(C_N)", "C_N'"}});
  chains.push_back({"Thm. Choice on Baire space", lat::Order::W, {"C_NN", "bar(C_NN)", "T(C_NN)"}});

  std::vector<Target> targets;
  for (const auto& c : chains)
    for (std::size_t i = 0; i + 1 < c.terms.size(); ++i) {
      targets.push_back({true, c.order, c.terms[i], c.terms[i + 1], c.name});
      targets.push_back({false, c.order, c.terms[i + 1], c.terms[i], c.name});
    }
  std::vector<std::vector<lat::Term>> ids;
  for (const auto& t : targets) ids.push_back({P(t.lhs), P(t.rhs)});

  for (std::size_t k = 0; k < targets.size(); ++k) {
    const Target& t = targets[k];
    lat::QueryResult q = e.query(ids[k][0], t.order, ids[k][1]);
    const std::string stmt = lat::print_statement(t.positive, t.order, ids[k][0], ids[k][1]) + " [" + t.source + "]";
    const bool want = t.positive ? q.verdict == lat::Verdict::yes : q.verdict == lat::Verdict::no;
    if (!want) {
      check(r, stmt, false, "verdict " + lat::verdict_name(q.verdict));
      continue;
    }
    auto support = e.support(q.fact);
    std::size_t bases = 0, bad_replay = 0;
    std::vector<std::string> circular;
    for (int f : support) {
      const lat::Derived& d = e.facts()[static_cast<std::size_t>(f)];
      if (!e.replay(f)) ++bad_replay;
      if (d.rule != lat::Rule::base) continue;
      ++bases;
      if (d.is_pred) continue;
      // A target shipped as a base fact would make the derivation circular.
      for (std::size_t j = 0; j < targets.size(); ++j) {
        auto a = e.id(ids[j][0]), b = e.id(ids[j][1]);
        if (a && b && d.positive == targets[j].positive && d.order == targets[j].order && d.lhs == *a && d.rhs == *b)
          circular.push_back(e.statement(f));
      }
    }
    const bool derived = e.facts()[static_cast<std::size_t>(q.fact)].rule != lat::Rule::base;
    const bool ok = derived && circular.empty() && bad_replay == 0;
    std::string detail = "fact [" + std::to_string(q.fact) + "] by " +
                         lat::rule_name(e.facts()[static_cast<std::size_t>(q.fact)].rule) + ", support " +
                         std::to_string(support.size()) + " facts of which " + std::to_string(bases) + " base";
    if (!derived) detail += "; is itself a base fact";
    if (!circular.empty()) detail += "; rests on target base facts: " + short_list(circular);
    if (bad_replay) detail += "; " + std::to_string(bad_replay) + " steps fail to replay";
    check(r, stmt, ok, detail);
  }
  return r;
}

// 3. matrix diff ----------------------------------------------------------------

std::vector<lat::Term> matrix_nodes(const lat::Diagram& d, bool with_c1) {
  // Completions are excluded; C_1 is drawn as the completion of C_0.
  std::vector<lat::Term> nodes;
  for (const auto& t : d.nodes)
    if (!t.is_bar() && (with_c1 || !(t == lat::atom("C_1")))) nodes.push_back(t);
  return nodes;
}

SuiteResult matrix_diff(const SuiteOptions& opt) {
  SuiteResult r;
  r.title = "W and TW classifications of the diagram's non-completion nodes differ only at WBWT_2";
  lat::KnowledgeBase kb = lat::load_kb(opt.kb_path);
  lat::Diagram d = lat::load_diagram(opt.diagram_path, kb.atoms);
  lat::Engine e(kb);
  e.saturate();
  const lat::Term wbwt = lat::atom("WBWT_2");

  auto run = [&](bool with_c1, std::vector<std::string>& outside, std::vector<std::string>& inside, std::size_t& open) {
    auto nodes = matrix_nodes(d, with_c1);
    auto w = lat::classification_matrix(e, nodes, lat::Order::W);
    auto tw = lat::classification_matrix(e, nodes, lat::Order::TW);
    auto diff = lat::diff_matrices(w, tw);
    for (auto c : diff.differ) {
      std::string s = lat::print_term(nodes[c.row]) + " <= " + lat::print_term(nodes[c.col]) + " (W " +
                      (w.cells[c.row][c.col] == lat::Cell::le ? "yes" : "no") + ", TW " +
                      (tw.cells[c.row][c.col] == lat::Cell::le ? "yes" : "no") + ")";
      (nodes[c.row] == wbwt || nodes[c.col] == wbwt ? inside : outside).push_back(s);
    }
    open = diff.open.size();
    return nodes.size();
  };

  std::vector<std::string> outside, inside;
  std::size_t open = 0;
  std::size_t n = run(false, outside, inside, open);
  check(r, "diff inside the WBWT_2 row/column", outside.empty(),
        std::to_string(n) + " nodes, " + std::to_string(inside.size() + outside.size()) + " differing cells, " +
            std::to_string(outside.size()) + " outside" + (outside.empty() ? "" : ": " + short_list(outside)));
  r.notes.push_back("differing cells: " + (inside.empty() ? std::string("none") : short_list(inside, 10)));
  r.notes.push_back(std::to_string(open) + " cells open in W or TW, reported and not counted");

  std::vector<std::string> o1, i1;
  std::size_t open1 = 0;
  run(true, o1, i1, open1);
  r.notes.push_back("with C_1 as a separate node: " + std::to_string(o1.size()) + " cell(s) outside the WBWT_2 lines" +
                    (o1.empty() ? "" : " (" + short_list(o1) + ")"));
  return r;
}

// 4. realizer oracles -----------------------------------------------------------

using Mask = boost::dynamic_bitset<>;

// Exhaustive check of a retraction on every ball list up to max_len followed
// by empty balls: the output names the input set when that is nonempty and
// some nonempty set otherwise. removed(code) is the part of a finite grid a
// ball removes; the grid must separate all sets reachable from the alphabet.
struct RetractionOracle {
  std::vector<Digit> alphabet;
  std::size_t max_len = 0;
  std::size_t grid = 0;
  std::function<Mask(Digit)> removed;
  std::function<bool(const Mask&)> in_domain = [](const Mask&) { return true; };

  std::size_t cases = 0, failures = 0;
  std::string first;

  const Mask& mask(Digit c) {
    auto it = cache_.find(c);
    if (it == cache_.end()) it = cache_.emplace(c, removed(c)).first;
    return it->second;
  }

  void run(const std::function<MachinePtr()>& make) {
    Word list;
    MachinePtr m = make();
    visit(*m, list, Mask(grid), Mask(grid));
  }

 private:
  std::map<Digit, Mask> cache_;

  void visit(const Machine& m, Word& list, const Mask& in, const Mask& out) {
    if (in_domain(in)) {
      ++cases;
      Mask o = out;
      std::string why;
      RunResult rr = run_ep(m, NameStream::constant(0));
      Word tail;
      if (rr.kind == RunResult::Kind::infinite) {
        tail = rr.output.prefix();
        tail.insert(tail.end(), rr.output.period().begin(), rr.output.period().end());
      } else if (rr.kind == RunResult::Kind::finite) {
        tail = rr.finite_output;
        why = "finite output";
      } else {
        why = "no certificate";
      }
      try {
        for (Digit c : tail) {
          if (c == kReset) why = "reset in output";
          else o |= mask(c);
        }
      } catch (const std::logic_error& e) {
        why = e.what();
      }
      Mask in_set = ~in, out_set = ~o;
      if (why.empty()) {
        if (in_set.any() && out_set != in_set) why = "set changed";
        if (in_set.none() && out_set.none()) why = "empty output set";
      }
      if (!why.empty() && failures++ == 0) first = why + " on " + NameStream::periodic(list, {0}).to_string();
    }
    if (list.size() >= max_len) return;
    for (Digit c : alphabet) {
      MachinePtr next = m.clone();
      Word emitted;
      next->feed(c, emitted);
      Mask o = out;
      try {
        for (Digit x : emitted)
          if (x != kReset) o |= mask(x);
      } catch (const std::logic_error& e) {
        if (failures++ == 0) first = std::string(e.what()) + " after " + word_to_string(list);
        continue;
      }
      list.push_back(c);
      visit(*next, list, in | mask(c), o);
      list.pop_back();
    }
  }
};

RetractionOracle cantor_oracle() {
  RetractionOracle o;
  o.grid = 8;  // the depth-3 cylinders
  for (std::size_t len = 0; len <= 3; ++len)
    for (std::uint64_t bits = 0; bits < (1u << len); ++bits) {
      Word w(len);
      for (std::size_t i = 0; i < len; ++i) w[i] = (bits >> (len - 1 - i)) & 1;
      o.alphabet.push_back(cantor_cylinder_ball(w));
    }
  o.removed = [](Digit c) {
    Mask m(8);
    Ball b = ball_semantics(Space::cantor(), c);
    if (b.empty) return m;
    if (b.cylinder.size() > 3) throw std::logic_error("ball finer than the oracle grid");
    for (std::size_t x = 0; x < 8; ++x) {
      bool in = true;
      for (std::size_t i = 0; i < b.cylinder.size(); ++i) in = in && b.cylinder[i] == ((x >> (2 - i)) & 1);
      m[x] = in;
    }
    return m;
  };
  return o;
}

RetractionOracle finite_oracle(std::uint64_t n) {
  RetractionOracle o;
  o.grid = n;
  o.alphabet.push_back(0);
  for (std::uint64_t k = 0; k < n; ++k) o.alphabet.push_back(natural_ball(k));
  o.alphabet.push_back(BallCode{0, 2, 0}.encode());  // radius 2 covers the space
  o.removed = [n](Digit c) {
    Mask m(n);
    Ball b = ball_semantics(Space::finite(n), c);
    if (!b.empty)
      for (std::uint64_t k = 0; k < n; ++k) m[k] = b.naturals.contains(k);
    return m;
  };
  return o;
}

std::vector<Rational> farey(std::int64_t q_max) {
  std::set<Rational> s;
  for (std::int64_t q = 1; q <= q_max; ++q)
    for (std::int64_t p = 0; p <= q; ++p) s.insert(Rational(p, q));
  return {s.begin(), s.end()};
}

RetractionOracle interval_oracle(std::size_t max_len) {
  RetractionOracle o;
  // Endpoints have denominators dividing 840; twice as fine separates open from closed ends.
  const std::int64_t den = 1680;
  o.grid = den + 1;
  for (const Rational& a : farey(8)) {
    o.alphabet.push_back(left_interval_ball(a));
    o.alphabet.push_back(right_interval_ball(a));
  }
  o.max_len = max_len;
  o.removed = [den](Digit c) {
    Mask m(static_cast<std::size_t>(den + 1));
    Ball b = ball_semantics(Space::unit_interval(), c);
    for (std::int64_t i = 0; i <= den; ++i) m[static_cast<std::size_t>(i)] = ball_contains(b, Point::rational(Rational(i, den)));
    return m;
  };
  return o;
}

std::string oracle_detail(const RetractionOracle& o) {
  return std::to_string(o.cases) + " lists, " + std::to_string(o.failures) + " failures" +
         (o.first.empty() ? "" : ", first: " + o.first);
}

Rational brute_measure(const std::vector<std::uint64_t>& codes) {
  std::vector<Word> cyl;
  std::size_t depth = 0;
  for (auto c : codes) {
    Ball b = ball_semantics(Space::cantor(), c);
    if (b.empty) continue;
    depth = std::max(depth, b.cylinder.size());
    cyl.push_back(b.cylinder);
  }
  if (depth > 20) throw std::length_error("cylinder too deep for the brute-force measure");
  std::int64_t kept = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << depth); ++x) {
    bool removed = false;
    for (const auto& w : cyl) {
      bool prefix = true;
      for (std::size_t i = 0; i < w.size() && prefix; ++i) prefix = w[i] == ((x >> (depth - 1 - i)) & 1);
      removed = removed || prefix;
    }
    if (!removed) ++kept;
  }
  return Rational(kept, std::int64_t{1} << depth);
}

void witness_check(SuiteResult& r, const std::string& name, std::size_t expect_inputs, Rng& rng) {
  WitnessPair w = witness_pair(name);
  auto t0 = Clock::now();
  ReductionReport rep = verify_reduction(w, w.samples(rng), rng);
  std::string detail = rep.reduction + ": " + std::to_string(rep.inputs) + " inputs, " +
                       std::to_string(rep.passed) + " checks passed, " + std::to_string(rep.failed) + " failed, " +
                       std::to_string(rep.flagged) + " flagged (" + fixed(since(t0)) + " s)";
  for (const auto& e : rep.entries)
    if (!e.pass) {
      detail += "; first failure on " + e.input + ": " + e.reason;
      break;
    }
  check(r, name, rep.all_pass() && rep.inputs == expect_inputs, detail);
}

SuiteResult realizer_oracles(const SuiteOptions& opt) {
  SuiteResult r;
  r.title = "exact oracles for the realizers";
  auto t0 = Clock::now();
  Rng rng(opt.seed);

  witness_check(r, "inf_to_lpojump", all_ep_streams(2, 8).size(), rng);
  witness_check(r, "lpojump_to_inf", all_ep_streams(2, 8).size(), rng);
  witness_check(r, "wbwt_to_barCN", all_ep_streams(2, 10).size(), rng);

  {
    auto t = Clock::now();
    RetractionOracle o = cantor_oracle();
    o.max_len = 5;
    o.run([] { return choice_retraction_cantor().make(); });
    check(r, "choice_retraction_cantor", o.failures == 0 && o.cases > 0,
          "cylinders of depth <= 3, lists <= 5: " + oracle_detail(o) + " (" + fixed(since(t)) + " s)");
  }
  {
    std::string detail;
    bool ok = true;
    for (std::uint64_t n = 1; n <= 4; ++n) {
      RetractionOracle o = finite_oracle(n);
      o.max_len = 6;
      o.run([n] { return choice_retraction_finite(n).make(); });
      ok = ok && o.failures == 0;
      detail += (n > 1 ? "; " : "") + std::string("n=") + std::to_string(n) + ": " + oracle_detail(o);
    }
    check(r, "choice_retraction_finite", ok, "lists <= 6; " + detail);
  }
  {
    RetractionOracle o = interval_oracle(3);
    o.run([] { return conc_retraction_interval().make(); });
    check(r, "conc_retraction_interval", o.failures == 0 && o.cases > 0,
          "[0,l) and (r,1] balls with denominators <= 8, lists <= 3: " + oracle_detail(o));
  }
  {
    Construction c = retraction_double_completion(Space::naturals());
    std::size_t fixed_points = 0, bottoms = 0, skipped = 0, bad = 0;
    std::string first;
    for (int i = 0; i < 500; ++i) {
      NameStream p = random_name(c.input, rng);
      Observation in = c.input.decode(p);
      if (!in.is_point()) {
        ++skipped;
        continue;
      }
      RunResult run = run_ep(*c.make(), p);
      Observation out = run.kind == RunResult::Kind::infinite ? c.output.decode(run.output) : Observation::undefined("no infinite output");
      bool ok;
      if (in.point.is_bottom() && std::get<Bottom>(in.point.value).level == 2) {
        ok = out.is_point() && out.point == Point::bottom(1);
        ++bottoms;
      } else {
        ok = out.is_point() && out.point == in.point;
        ++fixed_points;
      }
      if (!ok && bad++ == 0) first = p.to_string();
    }
    check(r, "retraction_double_completion", bad == 0 && skipped == 0,
          "500 random names of bar(bar(N)): " + std::to_string(fixed_points) + " points fixed, " +
              std::to_string(bottoms) + " outer bottoms sent to bottom, " + std::to_string(skipped) +
              " undecodable" + (first.empty() ? "" : ", first failure " + first));
  }
  {
    std::size_t bad = 0;
    std::string first;
    for (int i = 0; i < 500; ++i) {
      NameStream p = random_ep(rng, 6);
      RunResult run = run_ep(*compose(compactness_expand().make(), compactness_compress().make()), p);
      if ((run.kind != RunResult::Kind::infinite || !(run.output == p)) && bad++ == 0) first = p.to_string();
    }
    check(r, "compactness round trip", bad == 0,
          "compress after expand on 500 random EP names: " + std::to_string(bad) + " mismatches" +
              (first.empty() ? "" : ", first " + first));
  }
  {
    std::vector<Family> families = {Family::parse("0;1|1;0"), Family::parse("2;0@<1>;0|0,2;1")};
    for (int i = 0; i < 100; ++i) {
      std::vector<NameStream> lead, per;
      for (std::size_t k = rng() % 3; k > 0; --k) lead.push_back(random_ep(rng, 2, 3, 2));
      for (std::size_t k = 1 + rng() % 2; k > 0; --k) per.push_back(random_ep(rng, 2, 3, 2));
      families.push_back(Family::eventually(lead, per));
    }
    std::size_t bad = 0;
    std::string first;
    for (const auto& f : families) {
      ProjectionCheck c = check_project_lift(f, 4);
      if (!c.ok && bad++ == 0) first = f.to_string() + ": " + c.detail;
    }
    check(r, "project_lift", bad == 0,
          std::to_string(families.size()) + " EP families over {0,1,2} to depth 4: " + std::to_string(bad) +
              " mismatches" + (first.empty() ? "" : ", first " + first));
  }
  {
    Representation sets = make_space(Space::closed_sets_of(Space::cantor()));
    std::size_t bad = 0, stages = 0;
    std::string first;
    for (int i = 0; i < 200; ++i) {
      NameStream e = random_name(sets, rng);
      auto codes = distinct_codes(e);
      Observation x = sets.decode(e);
      Rational last(2);
      bool ok = x.is_point();
      for (std::size_t s = 0; s <= codes.size() + 2 && ok; ++s, ++stages) {
        Rational m = measure_upper(e, s);
        std::vector<std::uint64_t> head(codes.begin(), codes.begin() + static_cast<std::ptrdiff_t>(std::min(s, codes.size())));
        ok = m == brute_measure(head) && m <= last;
        if (ok && s >= codes.size()) ok = m == std::get<CylinderUnion>(x.point.as_set()).measure();
        last = m;
      }
      if (!ok && bad++ == 0) first = e.to_string();
    }
    check(r, "measure_upper", bad == 0,
          "200 random closed-set codes, " + std::to_string(stages) + " stages against the cylinder count: " +
              std::to_string(bad) + " mismatches" + (first.empty() ? "" : ", first " + first));
  }

  const double secs = since(t0);
  check(r, "runtime", secs < kOracleSeconds,
        "suite " + fixed(secs) + " s (limit " + fixed(kOracleSeconds, 0) + " s)");
  return r;
}

// 5. adversary ------------------------------------------------------------------

SuiteResult adversary(const SuiteOptions&) {
  SuiteResult r;
  r.title = "the adversary forces budget+1 resets on finite-mind-change solvers for bar(C_N)";
  for (auto make : {cn_fmc_solver, cn_fmc_solver_lazy, cn_fmc_solver_cautious}) {
    MachinePtr m = make();
    bool ok = true;
    std::string detail;
    for (std::size_t b = 0; b <= kAdversaryMaxBudget; ++b) {
      AdversaryResult a = adversary_barCN(*m, b, kAdversarySteps);
      ok = ok && a.forced_resets >= b + 1 && a.steps <= kAdversarySteps && !a.never_commits;
      detail += (b ? ", " : "") + std::string("B=") + std::to_string(b) + ": " + std::to_string(a.forced_resets) +
                " resets in " + std::to_string(a.steps) + " steps";
      if (!a.flag.empty()) detail += " [" + a.flag + "]";
    }
    check(r, m->name(), ok, detail);
  }
  AdversaryResult silent = adversary_barCN(*never_committing_machine(), 3, kAdversarySteps);
  check(r, "silent machine flagged", silent.never_commits && silent.forced_resets == 0,
        "never-committing machine: " + (silent.flag.empty() ? std::string("no flag") : silent.flag));
  return r;
}

// 6. mutation sensitivity -----------------------------------------------------

SuiteResult witnesses(const SuiteOptions& opt) {
  SuiteResult r;
  r.title = "single-bit sabotage of K or H is caught for every witness pair";
  Rng rng(opt.seed);
  for (const auto& w : witness_pairs()) {
    std::string detail;
    bool ok = true;
    for (bool sabotage_k : {true, false}) {
      WitnessPair s = w;
      (sabotage_k ? s.K : s.H) = sabotaged(sabotage_k ? w.K : w.H);
      ReductionReport rep = verify_reduction(s, s.samples(rng), rng);
      ok = ok && rep.failed > 0;
      detail += std::string(sabotage_k ? "" : "; ") + (sabotage_k ? "K" : "H") + " flipped: " +
                std::to_string(rep.failed) + "/" + std::to_string(rep.failed + rep.passed) + " checks fail";
    }
    check(r, w.name, ok, detail);
  }
  {
    auto c = check_project_lift(Family::parse("0;1|1;0"), 4,
                                [] { return flip_output_bit(std::make_unique<ProjectLiftMachine>()); });
    check(r, "project_lift", !c.ok, c.ok ? "flipped machine accepted" : "flipped machine rejected: " + c.detail.substr(0, 120));
  }
  {
    RetractionOracle o = cantor_oracle();
    o.max_len = 2;
    o.run([] { return flip_output_bit(choice_retraction_cantor().make()); });
    check(r, "choice_retraction_cantor oracle", o.failures > 0, "flipped machine: " + oracle_detail(o));
  }
  {
    RetractionOracle o = finite_oracle(3);
    o.max_len = 3;
    o.run([] { return flip_output_bit(choice_retraction_finite(3).make()); });
    check(r, "choice_retraction_finite oracle", o.failures > 0, "flipped machine: " + oracle_detail(o));
  }
  {
    RetractionOracle o = interval_oracle(2);
    o.run([] { return flip_output_bit(conc_retraction_interval().make()); });
    check(r, "conc_retraction_interval oracle", o.failures > 0, "flipped machine: " + oracle_detail(o));
  }
  return r;
}

// 7. formats --------------------------------------------------------------------

lat::Term random_term(Rng& rng, const std::vector<std::string>& atoms, int depth) {
  if (depth <= 1 || rng() % 4 == 0) return lat::atom(atoms[rng() % atoms.size()]);
  auto sub = [&] { return random_term(rng, atoms, depth - 1); };
  switch (rng() % 9) {
    case 0: return lat::bar(sub());
    case 1: return lat::tot(sub());
    case 2: return lat::jump(sub());
    case 3: return lat::hat(sub());
    case 4: return lat::star(sub());
    case 5: return lat::times(sub(), sub());
    case 6: return lat::compose(sub(), sub());
    case 7: return lat::join(sub(), sub());
    default: return lat::meet(sub(), sub());
  }
}

SuiteResult formats(const SuiteOptions& opt) {
  SuiteResult r;
  r.title = "term and KB round trips";
  lat::KnowledgeBase kb = lat::load_kb(opt.kb_path);
  Rng rng(opt.seed);
  const auto atoms = kb.atoms.names();
  std::size_t bad = 0, deepest = 0;
  std::string first;
  for (int i = 0; i < 1000; ++i) {
    lat::Term t = random_term(rng, atoms, 4);
    deepest = std::max(deepest, t.depth());
    std::string s = lat::print_term(t);
    bool ok;
    try {
      ok = lat::parse_term(s, kb.atoms) == t;
    } catch (const std::exception& e) {
      ok = false;
      s += " (" + std::string(e.what()) + ")";
    }
    if (!ok && bad++ == 0) first = s;
  }
  check(r, "term round trip", bad == 0,
        "1000 random terms up to depth " + std::to_string(deepest) + ": " + std::to_string(bad) + " mismatches" +
            (first.empty() ? "" : ", first " + first));

  const auto path = std::filesystem::temp_directory_path() /
                    ("wlab-roundtrip-" + std::to_string(opt.seed) + "-" +
                     std::to_string(Clock::now().time_since_epoch().count()) + ".kb");
  lat::save_kb(kb, path.string());
  lat::KnowledgeBase back = lat::load_kb(path.string());
  std::filesystem::remove(path);
  lat::Engine a(kb), b(back);
  a.saturate();
  b.saturate();
  const bool same = a.fact_set() == b.fact_set();
  check(r, "KB round trip", same && lat::format_kb(back) == lat::format_kb(kb),
        std::to_string(kb.facts.size() + kb.preds.size()) + " base lines saved and reloaded; saturated fact sets " +
            (same ? "equal" : "differ") + " (" + std::to_string(a.fact_set().size()) + " facts)");
  return r;
}

struct Entry {
  const char* name;
  int criterion;
  SuiteResult (*run)(const SuiteOptions&);
};

const Entry kSuites[] = {
    {"fig2-kb", 1, fig2_kb},   {"corollaries", 2, corollaries}, {"matrix-diff", 3, matrix_diff},
    {"realizer-oracles", 4, realizer_oracles}, {"adversary", 5, adversary}, {"witnesses", 6, witnesses},
    {"formats", 7, formats},
};

}  // namespace

std::string SuiteResult::summary_line() const {
  return std::string(pass ? "[PASS]" : "[FAIL]") + " criterion " + std::to_string(criterion) + " " + name + ": " +
         title + " (" + fixed(seconds) + " s)";
}

std::string SuiteResult::report() const {
  std::string s = summary_line() + "\n";
  for (const auto& c : checks) s += std::string(c.pass ? "  ok    " : "  FAIL  ") + c.name + ": " + c.detail + "\n";
  for (const auto& n : notes) s += "  note  " + n + "\n";
  return s;
}

nlohmann::json SuiteResult::to_json() const {
  nlohmann::json j;
  j["suite"] = name;
  j["criterion"] = criterion;
  j["title"] = title;
  j["verdict"] = pass ? "pass" : "fail";
  j["seconds"] = seconds;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) list.push_back({{"name", c.name}, {"verdict", c.pass ? "pass" : "fail"}, {"detail", c.detail}});
  j["checks"] = std::move(list);
  j["notes"] = notes;
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : kSuites) v.push_back(e.name);
    return v;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  for (const auto& e : kSuites)
    if (name == e.name) return true;
  return false;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  for (const auto& e : kSuites)
    if (name == e.name) {
      auto t0 = Clock::now();
      SuiteResult r = e.run(opt);
      r.seconds = since(t0);
      r.name = e.name;
      r.criterion = e.criterion;
      r.pass = !r.checks.empty();
      for (const auto& c : r.checks) r.pass = r.pass && c.pass;
      return r;
    }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace wlab
