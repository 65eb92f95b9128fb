#include <filesystem>
#include <random>

#include "doctest.h"
#include "wlab/lattice/export.hpp"

using namespace wlab::lattice;

namespace {

const KnowledgeBase& shipped() {
  static const KnowledgeBase kb = load_kb(WLAB_KB_PATH);
  return kb;
}

Engine& saturated() {
  static Engine e = [] {
    Engine x(shipped());
    x.saturate();
    return x;
  }();
  return e;
}

Term T(const char* s) { return parse_term(s, shipped().atoms); }

Term random_term(std::mt19937_64& rng, const std::vector<std::string>& atoms, int depth) {
  if (depth <= 1 || rng() % 3 == 0) return atom(atoms[rng() % atoms.size()]);
  auto sub = [&] { return random_term(rng, atoms, depth - 1); };
  switch (rng() % 9) {
    case 0: return bar(sub());
    case 1: return tot(sub());
    case 2: return jump(sub());
    case 3: return hat(sub());
    case 4: return star(sub());
    case 5: return times(sub(), sub());
    case 6: return compose(sub(), sub());
    case 7: return join(sub(), sub());
    default: return meet(sub(), sub());
  }
}

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("terms print and parse back") {
  std::mt19937_64 rng(7);
  auto atoms = shipped().atoms.names();
  for (int i = 0; i < 1000; ++i) {
    Term t = random_term(rng, atoms, 4);
    REQUIRE(t.depth() <= 4);
    INFO(print_term(t));
    CHECK(parse_term(print_term(t), shipped().atoms) == t);
  }
  CHECK(print_term(T("C_N * bar(C_N)")) == "C_N * bar(C_N)");
  CHECK(T("K_N' * K_N'") == compose(jump(atom("K_N")), jump(atom("K_N"))));
  CHECK(T("C_2 x C_2 * C_N") == compose(times(atom("C_2"), atom("C_2")), atom("C_N")));
}

TEST_CASE("completion collapses") {
  CHECK(bar(bar(atom("C_N"))) == bar(atom("C_N")));
  CHECK(T("bar(bar(C_NN))") == T("bar(C_NN)"));
  CHECK(canonical(Term{Op::bar, "", {Term{Op::bar, "", {atom("C_N")}}}}) == bar(atom("C_N")));
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_term("bar(C_N", shipped().atoms);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 7);
  }
  CHECK_THROWS_AS(parse_term("C_N <= C_2", shipped().atoms), ParseError);
  CHECK_THROWS_AS(parse_term("NOPE", shipped().atoms), ParseError);
  CHECK_THROWS_AS(parse_statement("C_N <=X C_2", shipped().atoms), std::exception);
  Statement s = parse_statement("bar(C_N) !<=W C_N", shipped().atoms);
  CHECK_FALSE(s.positive);
  CHECK(s.lhs == T("bar(C_N)"));
}

TEST_CASE("KB errors carry a line") {
  try {
    parse_kb("atom A\npos W A\n", "x.kb");
    FAIL("no error");
  } catch (const KbError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("x.kb:2") == 0);
  }
  CHECK_THROWS_AS(parse_kb("pred not_a_predicate C_N ; \"x\"\n"), KbError);
  CHECK_THROWS_AS(parse_diagram("node C_N\nnode FOO\n", shipped().atoms), std::exception);
  CHECK_THROWS(load_kb("/nonexistent/paper.kb"));
}

TEST_CASE("KB format round trip") {
  const KnowledgeBase& kb = shipped();
  KnowledgeBase back = parse_kb(format_kb(kb));
  CHECK(format_kb(back) == format_kb(kb));
  CHECK(back.facts.size() == kb.facts.size());
  CHECK(back.preds.size() == kb.preds.size());
  Engine e(back);
  e.saturate();
  CHECK(e.fact_set() == saturated().fact_set());
}

TEST_CASE("shipped KB saturates without contradiction and every fact replays") {
  Engine& e = saturated();
  CHECK(e.contradictions().empty());
  for (int i = 0; i < static_cast<int>(e.facts().size()); ++i) {
    std::string why;
    const auto& d = e.facts()[static_cast<std::size_t>(i)];
    for (int p : d.premises) REQUIRE(p < i);
    if (!e.replay(i, &why)) FAIL_CHECK(e.describe(i) << ": " << why);
  }
}

TEST_CASE("saturation is a fixpoint") {
  Engine e(shipped());
  e.saturate();
  std::size_t n = e.facts().size();
  e.saturate();
  CHECK(e.facts().size() == n);
  CHECK(e.fact_set() == saturated().fact_set());
}

TEST_CASE("contradictions stop saturation") {
  KnowledgeBase kb = parse_kb("pos W C_N C_2 ; \"a\"\nneg W C_N C_2 ; \"b\"\n");
  Engine e(kb);
  const auto& c = e.saturate();
  REQUIRE(c.size() == 1);
  CHECK(e.statement(c[0].positive) == "C_N <=W C_2");
  CHECK(e.statement(c[0].negative) == "C_N !<=W C_2");
}

TEST_CASE("completion is coherent with total reducibility on every atom") {
  Engine& e = saturated();
  std::set<std::string> names;
  for (const auto& f : shipped().facts)
    for (const Term* t : {&f.lhs, &f.rhs})
      if (t->op == Op::atom) names.insert(t->name);
  for (const auto& n : names) {
    INFO(n);
    CHECK(e.query(atom(n), Order::TW, atom(n)).verdict == Verdict::yes);
    CHECK(e.query(atom(n), Order::W, bar(atom(n))).verdict == Verdict::yes);
  }
}

TEST_CASE("queries") {
  Engine& e = saturated();
  auto wbwt = e.query(T("WBWT_2"), Order::W, T("bar(C_N)"));
  CHECK(wbwt.verdict == Verdict::yes);
  CHECK(wbwt.trace.find("Weak Bolzano-Weierstrass") != std::string::npos);

  CHECK(e.query(T("bar(C_N)"), Order::W, T("C_N")).verdict == Verdict::no);
  auto refl = e.query(T("SORT"), Order::W, T("SORT"));
  REQUIRE(refl.verdict == Verdict::yes);
  CHECK(e.facts()[static_cast<std::size_t>(refl.fact)].rule == Rule::R1);

  CHECK(e.query(T("bar(C_2N)"), Order::W, T("C_2N")).verdict == Verdict::yes);
  CHECK(e.query(T("C_2N"), Order::W, T("bar(PC_2N)")).verdict == Verdict::no);
  for (int n = 1; n < 5; ++n) {
    Term a = atom("C_" + std::to_string(n)), b = atom("C_" + std::to_string(n + 1));
    CHECK(e.query(a, Order::TW, b).verdict == Verdict::yes);
    CHECK(e.query(b, Order::TW, a).verdict == Verdict::no);
  }
  // A term outside the universe extends it.
  auto deep = e.query(T("hat(C_2) * C_N"), Order::W, T("bar(hat(C_2) * C_N)"));
  CHECK(deep.verdict == Verdict::yes);
}

TEST_CASE("Hasse export") {
  Engine& e = saturated();
  std::string chain = hasse_dot(e, Order::W, {T("C_N"), T("bar(C_N)"), T("T(C_N)")});
  CHECK(count(chain, "->") == 2);
  CHECK(count(chain, "cluster_") == 1);
  CHECK(count(chain, "style=dashed") == 1);
  CHECK(chain.find("n1 -> n0") != std::string::npos);
  CHECK(chain.find("n2 -> n1") != std::string::npos);

  std::string one = hasse_dot(e, Order::W, {T("LPO")});
  CHECK(count(one, "[label=") == 1);
  CHECK(count(one, "->") == 0);

  CHECK_THROWS_AS(export_hasse(e, Order::W, {T("LPO")}, "/nonexistent/dir/x.dot"), std::runtime_error);
  auto path = std::filesystem::temp_directory_path() / "wlab-test-hasse.dot";
  export_hasse(e, Order::W, {T("LPO"), T("C_N")}, path.string());
  CHECK(read_file(path.string()).find("digraph") == 0);
  std::filesystem::remove(path);
}

TEST_CASE("diagram arrows lie in the transitive closure of the Hasse graph") {
  Engine& e = saturated();
  Diagram d = load_diagram(WLAB_DIAGRAM_PATH, shipped().atoms);
  CHECK(d.nodes.size() == 31);
  CHECK(d.arrows.size() == 47);
  CHECK(d.boxed.size() == 9);
  Matrix m = classification_matrix(e, d.nodes, Order::W);
  auto index = [&](const Term& t) {
    return static_cast<std::size_t>(std::find(d.nodes.begin(), d.nodes.end(), t) - d.nodes.begin());
  };
  for (const auto& a : d.arrows) {
    INFO(print_term(a.to) << " <=W " << print_term(a.from));
    CHECK(m.cells[index(a.to)][index(a.from)] == Cell::le);
  }
  std::string dot = hasse_dot(e, Order::W, d.nodes);
  CHECK(count(dot, "cluster_") == 9);
}

TEST_CASE("matrices") {
  Engine& e = saturated();
  Matrix empty = classification_matrix(e, {}, Order::W);
  CHECK(empty.cells.empty());
  CHECK(diff_matrices(empty, classification_matrix(e, {}, Order::TW)).differ.empty());

  std::vector<Term> nodes = {T("WBWT_2"), T("C_N"), T("LPO")};
  Matrix w = classification_matrix(e, nodes, Order::W), tw = classification_matrix(e, nodes, Order::TW);
  CHECK(w.cells[0][1] == Cell::nle);
  CHECK(tw.cells[0][1] == Cell::le);
  MatrixDiff d = diff_matrices(w, tw);
  REQUIRE(d.differ.size() == 1);
  CHECK(d.differ[0].row == 0);
  CHECK(d.differ[0].col == 1);
  CHECK_THROWS(diff_matrices(w, classification_matrix(e, {T("LPO")}, Order::TW)));
  CHECK(format_matrix(w, shipped().atoms).find("WBWT₂") != std::string::npos);
}
