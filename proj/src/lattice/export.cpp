#include "wlab/lattice/export.hpp"

#include <fstream>
#include <sstream>

namespace wlab::lattice {

namespace {

std::vector<int> prepare(Engine& engine, const std::vector<Term>& nodes) {
  if (engine.extend(nodes) || engine.passes() == 0) engine.saturate();
  std::vector<int> ids;
  for (const auto& t : nodes) ids.push_back(*engine.id(t));
  return ids;
}

}  // namespace

Matrix classification_matrix(Engine& engine, const std::vector<Term>& nodes, Order o) {
  Matrix m;
  m.order = o;
  m.nodes = nodes;
  auto ids = prepare(engine, nodes);
  for (int i : ids) {
    std::vector<Cell> row;
    for (int j : ids) {
      if (engine.find(true, o, i, j))
        row.push_back(Cell::le);
      else if (engine.find(false, o, i, j))
        row.push_back(Cell::nle);
      else
        row.push_back(Cell::open);
    }
    m.cells.push_back(std::move(row));
  }
  return m;
}

MatrixDiff diff_matrices(const Matrix& a, const Matrix& b) {
  if (a.nodes != b.nodes) throw std::invalid_argument("matrices over different nodes");
  MatrixDiff d;
  for (std::size_t i = 0; i < a.nodes.size(); ++i)
    for (std::size_t j = 0; j < a.nodes.size(); ++j) {
      Cell x = a.cells[i][j], y = b.cells[i][j];
      CellRef c{static_cast<int>(i), static_cast<int>(j)};
      if (x == Cell::open || y == Cell::open)
        d.open.push_back(c);
      else if (x != y)
        d.differ.push_back(c);
    }
  return d;
}

std::string format_matrix(const Matrix& m, const AtomTable& atoms) {
  std::ostringstream out;
  out << "order " << order_name(m.order) << "  (row <= column; '<' derived, '/' refuted, '?' open)\n";
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    out << (i < 10 ? " " : "") << i << " ";
    for (Cell c : m.cells[i]) out << (c == Cell::le ? '<' : c == Cell::nle ? '/' : '?');
    out << "  " << pretty_term(m.nodes[i], atoms) << "\n";
  }
  return out.str();
}

std::string hasse_dot(Engine& engine, Order o, const std::vector<Term>& nodes) {
  auto ids = prepare(engine, nodes);
  const AtomTable& atoms = engine.kb().atoms;
  const std::size_t n = ids.size();
  auto le = [&](int a, int b) { return a == b || engine.find(true, o, a, b).has_value(); };

  // ==-classes by mutual <=
  std::vector<int> cls(n, -1);
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = static_cast<int>(members.size());
    members.push_back({i});
    for (std::size_t j = i + 1; j < n; ++j)
      if (cls[j] < 0 && le(ids[i], ids[j]) && le(ids[j], ids[i])) {
        cls[j] = cls[i];
        if (ids[j] != ids[i]) members.back().push_back(j);  // repeated nodes are listed once
      }
  }
  const std::size_t k = members.size();
  auto rep = [&](std::size_t c) { return ids[members[c].front()]; };
  auto below = [&](std::size_t a, std::size_t b) { return a != b && le(rep(a), rep(b)); };  // a < b

  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n  node [shape=box, style=rounded];\n";
  out << "  label=\"derived <=" << order_name(o) << "; an edge points from the stronger class to the weaker\";\n";
  auto label = [&](std::size_t c) {
    std::string s;
    for (std::size_t m : members[c]) s += (s.empty() ? "" : " ≡ ") + pretty_term(nodes[m], atoms);
    return s;
  };

  // dashed clusters for f with bar(f) strictly above
  std::vector<bool> boxed(k, false);
  int cluster = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (nodes[i].is_bar()) continue;
    auto b = engine.id(bar(nodes[i]));
    if (!b || !engine.find(false, o, *b, ids[i])) continue;
    std::size_t partner = k;
    for (std::size_t j = 0; j < n && partner == k; ++j)
      if (le(ids[j], *b) && le(*b, ids[j])) partner = static_cast<std::size_t>(cls[j]);
    std::size_t own = static_cast<std::size_t>(cls[i]);
    if (partner == k || partner == own || boxed[own] || boxed[partner]) continue;
    boxed[own] = boxed[partner] = true;
    out << "  subgraph cluster_" << cluster++ << " {\n    style=dashed;\n";
    for (std::size_t c : {own, partner}) out << "    n" << c << " [label=\"" << label(c) << "\"];\n";
    out << "  }\n";
  }
  for (std::size_t c = 0; c < k; ++c)
    if (!boxed[c]) out << "  n" << c << " [label=\"" << label(c) << "\"];\n";

  // covering edges
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      if (!below(b, a)) continue;
      bool covered = true;
      for (std::size_t c = 0; c < k && covered; ++c)
        if (c != a && c != b && below(b, c) && below(c, a)) covered = false;
      if (covered) out << "  n" << a << " -> n" << b << ";\n";
    }
  out << "}\n";
  return out.str();
}

void export_hasse(Engine& engine, Order o, const std::vector<Term>& nodes, const std::string& path) {
  std::string dot = hasse_dot(engine, o, nodes);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << dot;
  if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace wlab::lattice
