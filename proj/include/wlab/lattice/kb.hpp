#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wlab/lattice/term.hpp"

namespace wlab::lattice {

enum class Order { W, SW, TW, STW };
constexpr Order kOrders[] = {Order::W, Order::SW, Order::TW, Order::STW};

std::string order_name(Order o);  // "W", "SW", ...
std::optional<Order> parse_order(std::string_view s);

enum class Pred {
  complete,
  strongly_complete,
  co_complete,
  strongly_co_complete,
  co_total,
  strongly_co_total,
  diverse,
  single_valued_nonconstant,
  pointed,
  idempotent,
  cylinder,
  total_fractal,
};
constexpr int kPredCount = 12;

std::string pred_name(Pred p);
std::optional<Pred> parse_pred(std::string_view s);

struct Fact {
  bool positive = true;
  Order order = Order::W;
  Term lhs, rhs;
  std::string citation;
  int line = 0;
};

struct PredFact {
  bool positive = true;
  Pred pred = Pred::complete;
  Term term;
  std::string citation;
  int line = 0;
};

struct KnowledgeBase {
  AtomTable atoms;
  std::vector<std::string> declared;  // atoms added by `atom` lines, in order
  std::vector<Fact> facts;
  std::vector<PredFact> preds;
};

class KbError : public std::runtime_error {
 public:
  KbError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Line format:
//   pos|neg ORDER LHS RHS ; "citation"
//   pred [not_]PREDICATE TERM ; "citation"
//   atom NAME
//   # comment
// The predicates not_idempotent and not_cylinder are the negative forms.
KnowledgeBase parse_kb(const std::string& text, const std::string& source = "<kb>");
KnowledgeBase load_kb(const std::string& path);
std::string format_kb(const KnowledgeBase& kb);
void save_kb(const KnowledgeBase& kb, const std::string& path);

// "f <=W g" in the query syntax; also accepts "!<=W" for a negative.
struct Statement {
  bool positive = true;
  Order order = Order::W;
  Term lhs, rhs;
};
Statement parse_statement(const std::string& text, const AtomTable& atoms);
std::string print_statement(bool positive, Order o, const Term& lhs, const Term& rhs);

// The relational diagram of basic problems and their completions: its nodes,
// its arrows (an arrow from f to g is read as g <=W f) and the incomplete
// problems it boxes together with their completions.
struct Diagram {
  std::vector<Term> nodes;
  struct Arrow {
    Term from, to;
    bool curved = false;
    int line = 0;
  };
  std::vector<Arrow> arrows;
  std::vector<Term> boxed;  // f for each box {f, bar f}
};

// Line format: `node TERM`, `arrow TERM -> TERM`, `curved TERM -> TERM`, `box TERM`.
Diagram parse_diagram(const std::string& text, const AtomTable& atoms, const std::string& source = "<diagram>");
Diagram load_diagram(const std::string& path, const AtomTable& atoms);

std::string read_file(const std::string& path);

}  // namespace wlab::lattice
