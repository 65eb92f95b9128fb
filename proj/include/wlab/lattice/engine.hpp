#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "wlab/lattice/kb.hpp"

namespace wlab::lattice {

enum class Rule { base, R1, R2, R3, R4, R5, R6, R7, R8, R9, R10, R11, R12, R13, R14, R15, R16, R17, R18, R19, R20 };

std::string rule_name(Rule r);      // "R5"
std::string rule_summary(Rule r);   // what it says
std::string rule_source(Rule r);    // where it comes from

struct Derived {
  bool is_pred = false;
  bool positive = true;
  Order order = Order::W;
  int lhs = -1, rhs = -1;  // relations
  Pred pred = Pred::complete;
  int term = -1;  // predicates
  Rule rule = Rule::base;
  std::vector<int> premises;
  std::string citation;  // base facts
};

struct Contradiction {
  int positive, negative;
};

struct EngineOptions {
  std::size_t max_depth = 5;
};

enum class Verdict { yes, no, open };

struct QueryResult {
  Verdict verdict = Verdict::open;
  int fact = -1;
  std::string trace;
};

// Forward chaining over the term universe. Facts are numbered in the order
// they are derived; every premise of a fact has a smaller number.
class Engine {
 public:
  explicit Engine(KnowledgeBase kb, EngineOptions opt = {});

  // Adds the terms with their subterms, the jumps (bar f)' of jump terms f',
  // and one completion of everything. Returns true if the universe grew.
  bool extend(const std::vector<Term>& terms);
  // Runs the rules to a fixpoint, stopping at the first contradiction.
  const std::vector<Contradiction>& saturate();
  const std::vector<Contradiction>& contradictions() const { return contradictions_; }

  // Extends the universe and re-saturates when the terms are new.
  QueryResult query(const Term& lhs, Order o, const Term& rhs);

  std::optional<int> id(const Term& t) const;
  const Term& term(int id) const { return terms_[static_cast<std::size_t>(id)]; }
  std::size_t universe_size() const { return terms_.size(); }
  std::optional<int> find(bool positive, Order o, int lhs, int rhs) const;
  std::optional<int> find_pred(bool positive, Pred p, int t) const;

  const std::vector<Derived>& facts() const { return facts_; }
  const KnowledgeBase& kb() const { return kb_; }
  int passes() const { return passes_; }

  std::string statement(int fact) const;
  std::string describe(int fact) const;
  // The fact and all facts it rests on, in derivation order.
  std::vector<int> support(int fact) const;
  std::string trace(int fact) const;
  // Every fact as a statement string, for comparing saturations.
  std::set<std::string> fact_set() const;
  // Checks that the fact is an instance of its rule applied to its premises.
  bool replay(int fact, std::string* why = nullptr) const;

 private:
  struct Info {
    Op op = Op::atom;
    std::vector<int> args;
    int bar = -1;       // canonical completion
    int tot = -1;       // T(this), when present
    int jump_bar = -1;  // for f': (bar f)', when present
  };
  using Bits = boost::dynamic_bitset<>;

  int intern(const Term& t);
  void resize();
  bool add_rel(bool positive, Order o, int i, int j, Rule r, std::vector<int> prem);
  bool add_pred(bool positive, Pred p, int t, Rule r, std::vector<int> prem);
  int rel(bool positive, Order o, int i, int j) const;
  int prd(bool positive, Pred p, int t) const;
  bool pass();
  void load_base();

  KnowledgeBase kb_;
  EngineOptions opt_;
  std::vector<Term> terms_;
  std::map<Term, int> ids_;
  std::vector<Info> info_;
  std::vector<Derived> facts_;
  // [negative][order] -> per-row fact ids and bitsets
  std::array<std::array<std::vector<std::vector<int>>, 4>, 2> rel_;
  std::array<std::array<std::vector<Bits>, 4>, 2> rows_;
  std::array<std::vector<std::array<int, kPredCount>>, 2> preds_;
  std::vector<Contradiction> contradictions_;
  bool base_loaded_ = false;
  int passes_ = 0;
};

std::string verdict_name(Verdict v);

}  // namespace wlab::lattice
