#pragma once

#include <string>
#include <vector>

#include "wlab/lattice/engine.hpp"

namespace wlab::lattice {

enum class Cell { le, nle, open };

struct Matrix {
  Order order = Order::W;
  std::vector<Term> nodes;
  std::vector<std::vector<Cell>> cells;  // cells[i][j] classifies nodes[i] <= nodes[j]
};

struct CellRef {
  int row, col;
};

struct MatrixDiff {
  std::vector<CellRef> differ;  // both decided, classifications differ
  std::vector<CellRef> open;    // open in at least one matrix
};

// Extends the universe by the nodes and saturates before reading the cells.
Matrix classification_matrix(Engine& engine, const std::vector<Term>& nodes, Order o);
// Both matrices must be over the same node list.
MatrixDiff diff_matrices(const Matrix& a, const Matrix& b);
std::string format_matrix(const Matrix& m, const AtomTable& atoms);

// Graphviz DOT of the covering relation of derived <= on the ==-classes of the
// nodes, edges drawn from the stronger class to the weaker one. Each node f
// whose strictness bar(f) !<= f is derived is boxed with the node equivalent
// to bar(f) in a dashed cluster.
std::string hasse_dot(Engine& engine, Order o, const std::vector<Term>& nodes);
// Writes hasse_dot to path; throws std::runtime_error when it cannot.
void export_hasse(Engine& engine, Order o, const std::vector<Term>& nodes, const std::string& path);

}  // namespace wlab::lattice
