#include "wlab/lattice/engine.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace wlab::lattice {

namespace {

constexpr int P = 0;  // positive index
constexpr int N = 1;  // negative index

int oi(Order o) { return static_cast<int>(o); }
int pi(Pred p) { return static_cast<int>(p); }
int side(bool positive) { return positive ? P : N; }

// (weaker-premise order, implied order) pairs for R3 and R4.
constexpr std::pair<Order, Order> kR3[] = {{Order::SW, Order::W}, {Order::STW, Order::TW}};
constexpr std::pair<Order, Order> kR4[] = {{Order::W, Order::TW}, {Order::SW, Order::STW}};

template <class F>
void each_bit(const boost::dynamic_bitset<>& b, F&& f) {
  for (auto j = b.find_first(); j != boost::dynamic_bitset<>::npos; j = b.find_next(j)) f(static_cast<int>(j));
}

}  // namespace

std::string rule_name(Rule r) {
  if (r == Rule::base) return "base";
  return "R" + std::to_string(static_cast<int>(r));
}

std::string rule_summary(Rule r) {
  switch (r) {
    case Rule::base:
      return "base fact";
    case Rule::R1:
      return "reflexivity";
    case Rule::R2:
      return "transitivity";
    case Rule::R3:
      return "SW => W, STW => TW";
    case Rule::R4:
      return "W => TW, SW => STW";
    case Rule::R5:
      return "f <=TW g iff f <=W bar(g); f <=STW g iff f <=SW bar(g)";
    case Rule::R6:
      return "f <=SW bar(f)";
    case Rule::R7:
      return "f <=W bar(g) iff bar(f) <=W bar(g) (and SW)";
    case Rule::R8:
      return "f ==STW bar(f)";
    case Rule::R9:
      return "complete(f) iff f ==W bar(f); strongly_complete(f) iff f ==SW bar(f)";
    case Rule::R10:
      return "co_complete(f) and f <=W bar(g) => f <=W g";
    case Rule::R11:
      return "co_total(f) and f <=W T(g) => f <=W g";
    case Rule::R12:
      return "diverse or single-valued non-constant => strongly_co_complete";
    case Rule::R13:
      return "co_complete(bar f) => complete(f)";
    case Rule::R14:
      return "bar(f') <=SW bar(f)'; jumps keep strong completeness";
    case Rule::R15:
      return "monotonicity of x, *, hat, star; f <=SW hat(f), star(f); pointed factors; bar(f x g) <=SW bar(f) x bar(g)";
    case Rule::R16:
      return "f x C_2 <=W bar(g) => f <=W g";
    case Rule::R17:
      return "incomplete f with C_2 <=W f => bar(f) not idempotent";
    case Rule::R18:
      return "co_total => co_complete";
    case Rule::R19:
      return "negative propagation";
    case Rule::R20:
      return "bar monotone under STW";
  }
  return "";
}

std::string rule_source(Rule r) {
  switch (r) {
    case Rule::R1:
    case Rule::R2:
    case Rule::R19:
      return "preorder laws and their contrapositives";
    case Rule::R3:
      return "strength of the four reducibilities";
    case Rule::R4:
      return "Cor. Partial and total Weihrauch reducibility";
    case Rule::R5:
    case Rule::R7:
      return "Lemma Completion and total Weihrauch reducibility";
    case Rule::R6:
      return "Prop. Diversity (proof)";
    case Rule::R8:
      return "Cor. f ==STW bar(f)";
    case Rule::R9:
      return "Def. Complete problems";
    case Rule::R10:
    case Rule::R11:
      return "Def. Co-completeness and co-totality";
    case Rule::R12:
      return "Prop. Diversity; Cor. Single-valuedness";
    case Rule::R13:
      return "Lemma Completeness and co-completeness";
    case Rule::R14:
      return "Prop. Jumps";
    case Rule::R15:
      return "external: standard lattice laws and the cited distribution of completion over products";
    case Rule::R16:
      return "Prop. Depletion";
    case Rule::R17:
      return "Cor. Idempotency and completeness";
    case Rule::R18:
      return "Cor. Co-completeness and co-totality";
    case Rule::R20:
      return "completion is a closure operator";
    default:
      return "";
  }
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "true";
    case Verdict::no:
      return "false";
    default:
      return "open";
  }
}

Engine::Engine(KnowledgeBase kb, EngineOptions opt) : kb_(std::move(kb)), opt_(opt) {
  std::vector<Term> ts = {atom("C_1"), atom("C_2")};
  for (const auto& f : kb_.facts) {
    ts.push_back(f.lhs);
    ts.push_back(f.rhs);
  }
  for (const auto& p : kb_.preds) ts.push_back(p.term);
  extend(ts);
}

std::optional<int> Engine::id(const Term& t) const {
  auto it = ids_.find(canonical(t));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

int Engine::intern(const Term& t) {
  auto it = ids_.find(t);
  if (it != ids_.end()) return it->second;
  Info in;
  in.op = t.op;
  for (const auto& a : t.args) in.args.push_back(intern(a));
  int id = static_cast<int>(terms_.size());
  terms_.push_back(t);
  ids_[t] = id;
  info_.push_back(std::move(in));
  return id;
}

bool Engine::extend(const std::vector<Term>& terms) {
  std::size_t before = terms_.size();
  for (const auto& t : terms) intern(canonical(t));
  // (bar f)' for every jump f', within the depth cap.
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].op != Op::jump) continue;
    Term jb = jump(bar(terms_[i].args[0]));
    if (jb.depth() <= opt_.max_depth) intern(jb);
  }
  // One completion of everything.
  std::size_t n = terms_.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!terms_[i].is_bar()) intern(bar(terms_[i]));
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    Info& in = info_[i];
    in.bar = terms_[i].is_bar() ? static_cast<int>(i) : ids_.at(bar(terms_[i]));
    if (in.op == Op::tot) info_[static_cast<std::size_t>(in.args[0])].tot = static_cast<int>(i);
    if (in.op == Op::jump) {
      auto it = ids_.find(jump(bar(terms_[i].args[0])));
      in.jump_bar = it == ids_.end() ? -1 : it->second;
    }
  }
  if (terms_.size() == before) return false;
  resize();
  return true;
}

void Engine::resize() {
  std::size_t n = terms_.size();
  for (int s = 0; s < 2; ++s) {
    for (int o = 0; o < 4; ++o) {
      auto& r = rel_[s][o];
      auto& b = rows_[s][o];
      r.resize(n);
      b.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        r[i].resize(n, -1);
        b[i].resize(n);
      }
    }
    std::array<int, kPredCount> none;
    none.fill(-1);
    preds_[s].resize(n, none);
  }
}

int Engine::rel(bool positive, Order o, int i, int j) const {
  return rel_[side(positive)][oi(o)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

int Engine::prd(bool positive, Pred p, int t) const {
  return preds_[side(positive)][static_cast<std::size_t>(t)][static_cast<std::size_t>(pi(p))];
}

std::optional<int> Engine::find(bool positive, Order o, int lhs, int rhs) const {
  int f = rel(positive, o, lhs, rhs);
  if (f < 0) return std::nullopt;
  return f;
}

std::optional<int> Engine::find_pred(bool positive, Pred p, int t) const {
  int f = prd(positive, p, t);
  if (f < 0) return std::nullopt;
  return f;
}

bool Engine::add_rel(bool positive, Order o, int i, int j, Rule r, std::vector<int> prem) {
  int s = side(positive);
  int& slot = rel_[s][oi(o)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  if (slot >= 0) return false;
  Derived d;
  d.positive = positive;
  d.order = o;
  d.lhs = i;
  d.rhs = j;
  d.rule = r;
  d.premises = std::move(prem);
  slot = static_cast<int>(facts_.size());
  facts_.push_back(std::move(d));
  rows_[s][oi(o)][static_cast<std::size_t>(i)].set(static_cast<std::size_t>(j));
  int other = rel(!positive, o, i, j);
  if (other >= 0) contradictions_.push_back(positive ? Contradiction{slot, other} : Contradiction{other, slot});
  return true;
}

bool Engine::add_pred(bool positive, Pred p, int t, Rule r, std::vector<int> prem) {
  int& slot = preds_[side(positive)][static_cast<std::size_t>(t)][static_cast<std::size_t>(pi(p))];
  if (slot >= 0) return false;
  Derived d;
  d.is_pred = true;
  d.positive = positive;
  d.pred = p;
  d.term = t;
  d.rule = r;
  d.premises = std::move(prem);
  slot = static_cast<int>(facts_.size());
  facts_.push_back(std::move(d));
  int other = prd(!positive, p, t);
  if (other >= 0) contradictions_.push_back(positive ? Contradiction{slot, other} : Contradiction{other, slot});
  return true;
}

void Engine::load_base() {
  for (const auto& f : kb_.facts) {
    int i = *id(f.lhs), j = *id(f.rhs);
    if (add_rel(f.positive, f.order, i, j, Rule::base, {})) facts_.back().citation = f.citation;
  }
  for (const auto& p : kb_.preds) {
    if (add_pred(p.positive, p.pred, *id(p.term), Rule::base, {})) facts_.back().citation = p.citation;
  }
  base_loaded_ = true;
}

const std::vector<Contradiction>& Engine::saturate() {
  if (!base_loaded_) load_base();
  while (contradictions_.empty() && pass()) ++passes_;
  return contradictions_;
}

bool Engine::pass() {
  const int n = static_cast<int>(terms_.size());
  const std::size_t before = facts_.size();
  auto stop = [&] { return !contradictions_.empty(); };
  auto& RP = rows_[P];
  auto& RN = rows_[N];
  const int c1 = *id(atom("C_1"));
  const int c2 = *id(atom("C_2"));
  auto U = [](int i) { return static_cast<std::size_t>(i); };

  // R1
  for (int i = 0; i < n; ++i)
    for (Order o : kOrders) add_rel(true, o, i, i, Rule::R1, {});

  // R6, R8, R20: completions
  for (int i = 0; i < n; ++i) {
    int b = info_[U(i)].bar;
    if (b == i) continue;
    add_rel(true, Order::SW, i, b, Rule::R6, {});
    add_rel(true, Order::STW, b, i, Rule::R8, {});
  }
  for (int i = 0; i < n; ++i)
    each_bit(RP[oi(Order::STW)][U(i)], [&](int j) {
      int bi = info_[U(i)].bar, bj = info_[U(j)].bar;
      if (bi != i || bj != j) add_rel(true, Order::STW, bi, bj, Rule::R20, {rel(true, Order::STW, i, j)});
    });

  // R3, R4 and their contrapositives (R19)
  auto strength = [&](Order from, Order to, Rule r) {
    for (int i = 0; i < n; ++i) {
      auto up = RP[oi(from)][U(i)] - RP[oi(to)][U(i)];
      each_bit(up, [&](int j) { add_rel(true, to, i, j, r, {rel(true, from, i, j)}); });
      auto down = RN[oi(to)][U(i)] - RN[oi(from)][U(i)];
      each_bit(down, [&](int j) { add_rel(false, from, i, j, Rule::R19, {rel(false, to, i, j)}); });
    }
  };
  for (auto [a, b] : kR3) strength(a, b, Rule::R3);
  for (auto [a, b] : kR4) strength(a, b, Rule::R4);
  if (stop()) return true;

  // R5, R7
  for (int g = 0; g < n; ++g) {
    int b = info_[U(g)].bar;
    for (int f = 0; f < n; ++f) {
      const std::pair<Order, Order> links[] = {{Order::TW, Order::W}, {Order::STW, Order::SW}};
      for (auto [t, w] : links) {
        for (bool pos : {true, false}) {
          int x = rel(pos, t, f, g), y = rel(pos, w, f, b);
          if (x >= 0 && y < 0) add_rel(pos, w, f, b, Rule::R5, {x});
          if (y >= 0 && x < 0) add_rel(pos, t, f, g, Rule::R5, {y});
        }
      }
      int bf = info_[U(f)].bar;
      if (bf != f && b == g) {
        for (Order w : {Order::W, Order::SW}) {
          if (int x = rel(true, w, f, g); x >= 0) add_rel(true, w, bf, g, Rule::R7, {x});
          if (int x = rel(false, w, bf, g); x >= 0) add_rel(false, w, f, g, Rule::R7, {x});
        }
      }
    }
  }
  if (stop()) return true;

  // R9, R13, R17, R18, R12 on single terms
  for (int f = 0; f < n; ++f) {
    int b = info_[U(f)].bar;
    const std::pair<Order, Pred> comp[] = {{Order::W, Pred::complete}, {Order::SW, Pred::strongly_complete}};
    if (b != f) {
      for (auto [o, pr] : comp) {
        if (int x = prd(true, pr, f); x >= 0) add_rel(true, o, b, f, Rule::R9, {x});
        if (int x = rel(true, o, b, f); x >= 0) add_pred(true, pr, f, Rule::R9, {x});
        if (int x = rel(false, o, b, f); x >= 0) add_pred(false, pr, f, Rule::R9, {x});
        if (int x = prd(false, pr, f); x >= 0) add_rel(false, o, b, f, Rule::R9, {x});
      }
      const std::pair<Pred, Pred> cc[] = {{Pred::co_complete, Pred::complete},
                                          {Pred::strongly_co_complete, Pred::strongly_complete}};
      for (auto [co, c] : cc) {
        if (int x = prd(true, co, b); x >= 0) add_pred(true, c, f, Rule::R13, {x});
        if (int x = prd(false, c, f); x >= 0) add_pred(false, co, b, Rule::R13, {x});
      }
      if (int x = prd(false, Pred::complete, f), y = rel(true, Order::W, c2, f); x >= 0 && y >= 0)
        add_pred(false, Pred::idempotent, b, Rule::R17, {x, y});
    }
    const std::pair<Pred, Pred> tc[] = {{Pred::co_total, Pred::co_complete},
                                        {Pred::strongly_co_total, Pred::strongly_co_complete}};
    for (auto [t, c] : tc) {
      if (int x = prd(true, t, f); x >= 0) add_pred(true, c, f, Rule::R18, {x});
      if (int x = prd(false, c, f); x >= 0) add_pred(false, t, f, Rule::R18, {x});
    }
    for (Pred pr : {Pred::diverse, Pred::single_valued_nonconstant})
      if (int x = prd(true, pr, f); x >= 0) add_pred(true, Pred::strongly_co_complete, f, Rule::R12, {x});
  }
  if (stop()) return true;

  // R10, R11: upper cones of co-complete and co-total problems
  for (int f = 0; f < n; ++f) {
    const std::tuple<Pred, Order, bool> cases[] = {
        {Pred::co_complete, Order::W, true},   {Pred::strongly_co_complete, Order::SW, true},
        {Pred::co_total, Order::W, false},     {Pred::strongly_co_total, Order::SW, false}};
    for (auto [pr, o, completion] : cases) {
      int x = prd(true, pr, f);
      if (x < 0) continue;
      Rule r = completion ? Rule::R10 : Rule::R11;
      for (int g = 0; g < n; ++g) {
        int up = completion ? info_[U(g)].bar : info_[U(g)].tot;
        if (up < 0 || up == g) continue;
        if (int y = rel(true, o, f, up); y >= 0) add_rel(true, o, f, g, r, {x, y});
        if (int y = rel(false, o, f, g); y >= 0) add_rel(false, o, f, up, r, {x, y});
      }
    }
  }
  if (stop()) return true;

  // R14
  for (int j = 0; j < n; ++j) {
    const Info& in = info_[U(j)];
    if (in.op != Op::jump) continue;
    if (in.jump_bar >= 0 && in.bar != j) add_rel(true, Order::SW, in.bar, in.jump_bar, Rule::R14, {});
    if (int x = prd(true, Pred::strongly_complete, in.args[0]); x >= 0)
      add_pred(true, Pred::strongly_complete, j, Rule::R14, {x});
  }

  // R15, R16: term operators
  std::map<std::pair<int, int>, int> times_of, compose_of;
  std::map<Op, std::vector<int>> by_op;
  for (int t = 0; t < n; ++t) {
    const Info& in = info_[U(t)];
    by_op[in.op].push_back(t);
    if (in.op == Op::times) times_of[{in.args[0], in.args[1]}] = t;
    if (in.op == Op::compose) compose_of[{in.args[0], in.args[1]}] = t;
  }
  auto monotone = [&](Op op, std::initializer_list<Order> orders) {
    const auto& group = by_op[op];
    for (int A : group)
      for (int B : group) {
        if (A == B) continue;
        const auto& a = info_[U(A)].args;
        const auto& b = info_[U(B)].args;
        for (Order o : orders) {
          if (a.size() == 1) {
            if (int x = rel(true, o, a[0], b[0]); x >= 0) add_rel(true, o, A, B, Rule::R15, {x});
            if (int x = rel(false, o, A, B); x >= 0) add_rel(false, o, a[0], b[0], Rule::R15, {x});
            continue;
          }
          int l = rel(true, o, a[0], b[0]), r = rel(true, o, a[1], b[1]);
          if (l >= 0 && r >= 0) add_rel(true, o, A, B, Rule::R15, {l, r});
          if (int x = rel(false, o, A, B); x >= 0) {
            if (l >= 0) add_rel(false, o, a[1], b[1], Rule::R15, {x, l});
            if (r >= 0) add_rel(false, o, a[0], b[0], Rule::R15, {x, r});
          }
        }
      }
  };
  monotone(Op::times, {Order::W, Order::SW});
  monotone(Op::compose, {Order::W});
  monotone(Op::hat, {Order::W, Order::SW});
  monotone(Op::star, {Order::W, Order::SW});
  for (Op op : {Op::hat, Op::star})
    for (int t : by_op[op]) add_rel(true, Order::SW, info_[U(t)].args[0], t, Rule::R15, {});
  for (Op op : {Op::times, Op::compose})
    for (int t : by_op[op]) {
      const auto& a = info_[U(t)].args;
      if (int x = rel(true, Order::W, c1, a[1]); x >= 0) add_rel(true, Order::W, a[0], t, Rule::R15, {x});
      if (int x = rel(true, Order::W, c1, a[0]); x >= 0) add_rel(true, Order::W, a[1], t, Rule::R15, {x});
    }
  for (auto [k, t] : compose_of) {
    auto it = times_of.find(k);
    if (it != times_of.end()) add_rel(true, Order::W, it->second, t, Rule::R15, {});
  }
  for (auto [k, t] : times_of) {
    auto it = times_of.find({info_[U(k.first)].bar, info_[U(k.second)].bar});
    if (it != times_of.end() && info_[U(t)].bar != t) add_rel(true, Order::SW, info_[U(t)].bar, it->second, Rule::R15, {});
  }
  for (auto [k, t] : times_of) {
    if (k.second != c2) continue;
    int f = k.first;
    for (int g = 0; g < n; ++g) {
      int b = info_[U(g)].bar;
      for (Order o : {Order::W, Order::SW}) {
        if (int x = rel(true, o, t, b); x >= 0) add_rel(true, o, f, g, Rule::R16, {x});
        if (int x = rel(false, o, f, g); x >= 0) add_rel(false, o, t, b, Rule::R16, {x});
      }
    }
  }
  if (stop()) return true;

  // R2 (Warshall) and R19 per order
  for (Order o : kOrders) {
    auto& rows = RP[oi(o)];
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        if (i == k || !rows[U(i)].test(U(k))) continue;
        auto add = rows[U(k)] - rows[U(i)];
        each_bit(add, [&](int j) { add_rel(true, o, i, j, Rule::R2, {rel(true, o, i, k), rel(true, o, k, j)}); });
      }
    if (stop()) return true;
    auto& neg = RN[oi(o)];
    // f <= h and f !<= g  =>  h !<= g
    for (int f = 0; f < n; ++f)
      each_bit(rows[U(f)], [&](int h) {
        if (h == f) return;
        auto add = neg[U(f)] - neg[U(h)];
        each_bit(add, [&](int g) { add_rel(false, o, h, g, Rule::R19, {rel(true, o, f, h), rel(false, o, f, g)}); });
      });
    // h <= g and f !<= g  =>  f !<= h
    std::vector<Bits> below(U(n), Bits(U(n)));
    for (int h = 0; h < n; ++h) each_bit(rows[U(h)], [&](int g) { below[U(g)].set(U(h)); });
    for (int f = 0; f < n; ++f) {
      Bits ng = neg[U(f)];
      each_bit(ng, [&](int g) {
        auto add = below[U(g)] - neg[U(f)];
        each_bit(add, [&](int h) { add_rel(false, o, f, h, Rule::R19, {rel(true, o, h, g), rel(false, o, f, g)}); });
      });
    }
    if (stop()) return true;
  }
  return facts_.size() != before;
}

QueryResult Engine::query(const Term& lhs, Order o, const Term& rhs) {
  if (extend({lhs, rhs}) || !base_loaded_) saturate();
  QueryResult q;
  int i = *id(lhs), j = *id(rhs);
  if (int f = rel(true, o, i, j); f >= 0) {
    q.verdict = Verdict::yes;
    q.fact = f;
  } else if (int g = rel(false, o, i, j); g >= 0) {
    q.verdict = Verdict::no;
    q.fact = g;
  }
  if (q.fact >= 0) q.trace = trace(q.fact);
  return q;
}

std::string Engine::statement(int fact) const {
  const Derived& d = facts_[static_cast<std::size_t>(fact)];
  if (d.is_pred) return (d.positive ? "" : "not ") + pred_name(d.pred) + "(" + print_term(term(d.term)) + ")";
  return print_statement(d.positive, d.order, term(d.lhs), term(d.rhs));
}

std::string Engine::describe(int fact) const {
  const Derived& d = facts_[static_cast<std::size_t>(fact)];
  std::ostringstream out;
  out << "[" << fact << "] " << statement(fact) << "   ";
  if (d.rule == Rule::base) {
    out << "base \"" << d.citation << "\"";
  } else {
    out << rule_name(d.rule) << " " << rule_summary(d.rule);
    if (!d.premises.empty()) {
      out << " from";
      for (int p : d.premises) out << " [" << p << "]";
    }
  }
  return out.str();
}

std::vector<int> Engine::support(int fact) const {
  std::set<int> seen;
  std::vector<int> stack = {fact};
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    if (!seen.insert(f).second) continue;
    for (int p : facts_[static_cast<std::size_t>(f)].premises) stack.push_back(p);
  }
  return {seen.begin(), seen.end()};
}

std::string Engine::trace(int fact) const {
  std::ostringstream out;
  std::set<Rule> rules;
  for (int f : support(fact)) {
    out << "  " << describe(f) << "\n";
    rules.insert(facts_[static_cast<std::size_t>(f)].rule);
  }
  for (Rule r : rules)
    if (r != Rule::base) out << "  " << rule_name(r) << ": " << rule_source(r) << "\n";
  return out.str();
}

std::set<std::string> Engine::fact_set() const {
  std::set<std::string> s;
  for (std::size_t i = 0; i < facts_.size(); ++i) s.insert(statement(static_cast<int>(i)));
  return s;
}

bool Engine::replay(int fact, std::string* why) const {
  auto fail = [&](const std::string& m) {
    if (why) *why = describe(fact) + ": " + m;
    return false;
  };
  const Derived& d = facts_.at(static_cast<std::size_t>(fact));
  for (int p : d.premises)
    if (p < 0 || p >= fact) return fail("premise [" + std::to_string(p) + "] is not an earlier fact");
  auto F = [&](std::size_t k) -> const Derived& { return facts_[static_cast<std::size_t>(d.premises.at(k))]; };
  auto T = [&](int i) -> const Term& { return term(i); };
  auto is_rel = [](const Derived& x, bool pos, Order o) { return !x.is_pred && x.positive == pos && x.order == o; };
  auto is_pred = [](const Derived& x, bool pos, Pred p) { return x.is_pred && x.positive == pos && x.pred == p; };
  auto same_pair = [](const Derived& a, const Derived& b) { return a.lhs == b.lhs && a.rhs == b.rhs; };
  const std::size_t np = d.premises.size();
  bool ok = false;
  switch (d.rule) {
    case Rule::base:
      ok = np == 0 && !d.citation.empty();
      break;
    case Rule::R1:
      ok = np == 0 && !d.is_pred && d.positive && d.lhs == d.rhs;
      break;
    case Rule::R2:
      ok = np == 2 && is_rel(d, true, d.order) && is_rel(F(0), true, d.order) && is_rel(F(1), true, d.order) &&
           F(0).lhs == d.lhs && F(0).rhs == F(1).lhs && F(1).rhs == d.rhs;
      break;
    case Rule::R3:
    case Rule::R4: {
      const auto* pairs = d.rule == Rule::R3 ? kR3 : kR4;
      for (int k = 0; k < 2; ++k)
        ok = ok || (np == 1 && is_rel(d, true, pairs[k].second) && is_rel(F(0), true, pairs[k].first) && same_pair(d, F(0)));
      break;
    }
    case Rule::R5:
      if (np == 1 && !d.is_pred && !F(0).is_pred && d.positive == F(0).positive && d.lhs == F(0).lhs) {
        const std::pair<Order, Order> links[] = {{Order::TW, Order::W}, {Order::STW, Order::SW}};
        for (auto [t, w] : links) {
          ok = ok || (d.order == w && F(0).order == t && T(d.rhs) == bar(T(F(0).rhs)));
          ok = ok || (d.order == t && F(0).order == w && T(F(0).rhs) == bar(T(d.rhs)));
        }
      }
      break;
    case Rule::R6:
      ok = np == 0 && is_rel(d, true, Order::SW) && T(d.rhs) == bar(T(d.lhs));
      break;
    case Rule::R7:
      if (np == 1 && !d.is_pred && (d.order == Order::W || d.order == Order::SW) &&
          is_rel(F(0), d.positive, d.order) && T(d.rhs).is_bar() && F(0).rhs == d.rhs) {
        const Term& small = T(d.positive ? F(0).lhs : d.lhs);
        const Term& big = T(d.positive ? d.lhs : F(0).lhs);
        ok = big == bar(small) && !small.is_bar();
      }
      break;
    case Rule::R8:
      ok = np == 0 && is_rel(d, true, Order::STW) && T(d.lhs) == bar(T(d.rhs));
      break;
    case Rule::R9: {
      const std::pair<Order, Pred> comp[] = {{Order::W, Pred::complete}, {Order::SW, Pred::strongly_complete}};
      for (auto [o, pr] : comp) {
        if (np != 1) break;
        const Derived& a = F(0);
        // relation bar(f) <= f  <->  predicate on f, either direction, same polarity
        const Derived* r = d.is_pred ? &a : &d;
        const Derived* q = d.is_pred ? &d : &a;
        ok = ok || (d.is_pred != a.is_pred && is_rel(*r, r->positive, o) && is_pred(*q, r->positive, pr) &&
                    r->rhs == q->term && T(r->lhs) == bar(T(r->rhs)) && !T(r->rhs).is_bar());
      }
      break;
    }
    case Rule::R10:
    case Rule::R11: {
      const bool completion = d.rule == Rule::R10;
      const std::tuple<Pred, Order>* cases;
      const std::tuple<Pred, Order> c10[] = {{Pred::co_complete, Order::W}, {Pred::strongly_co_complete, Order::SW}};
      const std::tuple<Pred, Order> c11[] = {{Pred::co_total, Order::W}, {Pred::strongly_co_total, Order::SW}};
      cases = completion ? c10 : c11;
      auto up = [&](const Term& g) { return completion ? bar(g) : tot(g); };
      for (int k = 0; k < 2 && np == 2; ++k) {
        auto [pr, o] = cases[k];
        const Derived& a = F(0);
        const Derived& b = F(1);
        if (!is_pred(a, true, pr) || a.term != d.lhs || b.lhs != d.lhs || d.is_pred || d.order != o) continue;
        if (d.positive)
          ok = ok || (is_rel(b, true, o) && T(b.rhs) == up(T(d.rhs)));
        else
          ok = ok || (is_rel(b, false, o) && T(d.rhs) == up(T(b.rhs)));
      }
      break;
    }
    case Rule::R12:
      ok = np == 1 && is_pred(d, true, Pred::strongly_co_complete) && F(0).term == d.term &&
           (is_pred(F(0), true, Pred::diverse) || is_pred(F(0), true, Pred::single_valued_nonconstant));
      break;
    case Rule::R13: {
      const std::pair<Pred, Pred> cc[] = {{Pred::co_complete, Pred::complete},
                                          {Pred::strongly_co_complete, Pred::strongly_complete}};
      for (auto [co, c] : cc) {
        if (np != 1) break;
        ok = ok || (is_pred(d, true, c) && is_pred(F(0), true, co) && T(F(0).term) == bar(T(d.term)) &&
                    !T(d.term).is_bar());
        ok = ok || (is_pred(d, false, co) && is_pred(F(0), false, c) && T(d.term) == bar(T(F(0).term)) &&
                    !T(F(0).term).is_bar());
      }
      break;
    }
    case Rule::R14:
      if (np == 0) {
        const Term& l = T(d.lhs);
        ok = is_rel(d, true, Order::SW) && l.is_bar() && l.args[0].op == Op::jump &&
             T(d.rhs) == jump(bar(l.args[0].args[0]));
      } else {
        ok = np == 1 && is_pred(d, true, Pred::strongly_complete) && is_pred(F(0), true, Pred::strongly_complete) &&
             T(d.term) == jump(T(F(0).term));
      }
      break;
    case Rule::R15: {
      if (d.is_pred) break;
      const Term& l = T(d.lhs);
      const Term& r = T(d.rhs);
      if (d.positive && np == 0) {
        // f x g <=W f * g, f <=SW hat(f), f <=SW star(f), or bar(f x g) <=SW bar(f) x bar(g)
        ok = (d.order == Order::W && l.op == Op::times && r.op == Op::compose && l.args == r.args) ||
             (d.order == Order::SW && (r.op == Op::hat || r.op == Op::star) && r.args[0] == l) ||
             (d.order == Order::SW && l.is_bar() && l.args[0].op == Op::times && r.op == Op::times &&
              r.args[0] == bar(l.args[0].args[0]) && r.args[1] == bar(l.args[0].args[1]));
      } else if (d.positive) {
        if (np == 1 && is_rel(F(0), true, Order::W) && T(F(0).lhs) == atom("C_1")) {
          // pointed factor
          ok = d.order == Order::W && (r.op == Op::times || r.op == Op::compose) &&
               ((r.args[0] == l && r.args[1] == T(F(0).rhs)) || (r.args[1] == l && r.args[0] == T(F(0).rhs)));
        }
        if (!ok) {
          ok = l.op == r.op && l.args.size() == np && l.op != Op::atom && l.op != Op::bar;
          for (std::size_t k = 0; ok && k < np; ++k)
            ok = is_rel(F(k), true, d.order) && T(F(k).lhs) == l.args[k] && T(F(k).rhs) == r.args[k];
        }
      } else if (np >= 1 && is_rel(F(0), false, d.order)) {
        const Term& A = T(F(0).lhs);
        const Term& B = T(F(0).rhs);
        if (A.op != B.op || A.args.size() != B.args.size() || A.op == Op::atom) break;
        if (np == 1) {
          ok = A.args.size() == 1 && A.args[0] == l && B.args[0] == r;
        } else if (np == 2 && A.args.size() == 2 && is_rel(F(1), true, d.order)) {
          for (int k = 0; k < 2; ++k)
            ok = ok || (T(F(1).lhs) == A.args[k] && T(F(1).rhs) == B.args[k] && l == A.args[1 - k] && r == B.args[1 - k]);
        }
      }
      break;
    }
    case Rule::R16:
      if (np == 1 && !d.is_pred && !F(0).is_pred && d.order == F(0).order && d.positive == F(0).positive &&
          (d.order == Order::W || d.order == Order::SW)) {
        const Derived& pr = F(0);
        const Derived& big = d.positive ? pr : d;    // f x C_2 <= bar g
        const Derived& small = d.positive ? d : pr;  // f <= g
        ok = T(big.lhs) == times(T(small.lhs), atom("C_2")) && T(big.rhs) == bar(T(small.rhs));
      }
      break;
    case Rule::R17:
      ok = np == 2 && is_pred(d, false, Pred::idempotent) && is_pred(F(0), false, Pred::complete) &&
           is_rel(F(1), true, Order::W) && T(F(1).lhs) == atom("C_2") && F(1).rhs == F(0).term &&
           T(d.term) == bar(T(F(0).term)) && !T(F(0).term).is_bar();
      break;
    case Rule::R18: {
      const std::pair<Pred, Pred> tc[] = {{Pred::co_total, Pred::co_complete},
                                          {Pred::strongly_co_total, Pred::strongly_co_complete}};
      for (auto [t, c] : tc)
        ok = ok || (np == 1 && F(0).term == d.term &&
                    ((is_pred(d, true, c) && is_pred(F(0), true, t)) || (is_pred(d, false, t) && is_pred(F(0), false, c))));
      break;
    }
    case Rule::R19:
      if (d.is_pred || d.positive) break;
      if (np == 1) {
        for (const auto* pairs : {kR3, kR4})
          for (int k = 0; k < 2; ++k)
            ok = ok || (d.order == pairs[k].first && is_rel(F(0), false, pairs[k].second) && same_pair(d, F(0)));
      } else if (np == 2 && is_rel(F(0), true, d.order) && is_rel(F(1), false, d.order)) {
        const Derived& le = F(0);
        const Derived& nl = F(1);
        ok = (le.lhs == nl.lhs && d.lhs == le.rhs && d.rhs == nl.rhs) ||  // f<=h, f!<=g => h!<=g
             (le.rhs == nl.rhs && d.lhs == nl.lhs && d.rhs == le.lhs);    // h<=g, f!<=g => f!<=h
      }
      break;
    case Rule::R20:
      ok = np == 1 && is_rel(d, true, Order::STW) && is_rel(F(0), true, Order::STW) &&
           T(d.lhs) == bar(T(F(0).lhs)) && T(d.rhs) == bar(T(F(0).rhs));
      break;
  }
  return ok ? true : fail("not an instance of " + rule_name(d.rule));
}

}  // namespace wlab::lattice
