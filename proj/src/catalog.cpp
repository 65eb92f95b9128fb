#include "wlab/problems.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace wlab {

namespace {

Representation rep(const Space& s) { return Representation(s); }
Representation sets_of(const Space& s, bool range = false) { return rep(Space::closed_sets_of(s, range)); }

bool has_zero(const NameStream& p) {
  auto z = [](const Word& w) { return std::find(w.begin(), w.end(), Digit{0}) != w.end(); };
  if (!p.is_ep()) throw std::invalid_argument("zero test needs an eventually periodic stream");
  return z(p.prefix()) || z(p.period());
}

// Lexicographic order on EP streams; two distinct EP streams differ before
// |u1|+|u2|+|v1|*|v2|.
bool lex_less(const NameStream& a, const NameStream& b) {
  std::size_t bound = a.prefix().size() + b.prefix().size() + a.period().size() * b.period().size() + 1;
  for (std::size_t i = 0; i < bound; ++i)
    if (a.digit(i) != b.digit(i)) return a.digit(i) < b.digit(i);
  return false;
}

NameStream extend_zeros(const Word& w) { return NameStream::periodic(w, {0}); }

const NatSet& nat_set(const Point& x) { return std::get<NatSet>(x.as_set()); }
const CylinderUnion& cylinders(const Point& x) { return std::get<CylinderUnion>(x.as_set()); }
const BaireSet& baire_set(const Point& x) { return std::get<BaireSet>(x.as_set()); }
const IntervalSet& intervals(const Point& x) { return std::get<IntervalSet>(x.as_set()); }

bool always(const Point&) { return true; }

Point bit(bool b) { return Point::natural(b ? 1 : 0); }

ProblemPtr decision(std::string name, Representation in, bool sierpinski, std::function<bool(const Point&)> f) {
  ProblemSpec s{std::move(name), std::move(in), rep(sierpinski ? Space::sierpinski() : Space::finite(2)), always,
                nullptr, nullptr, Point::natural(0), nullptr};
  s.solve = [f](const Point& x) { return bit(f(x)); };
  s.accepts = [f](const Point& x, const Point& y) { return y.is_natural() && y.as_natural() == (f(x) ? 1u : 0u); };
  return make_problem(std::move(s));
}

NameStream leftmost(const CylinderUnion& a) {
  std::optional<NameStream> best;
  auto offer = [&](const NameStream& s) {
    if (!best || lex_less(s, *best)) best = s;
  };
  for (const auto& w : a.cylinders) offer(extend_zeros(w));
  for (const auto& x : a.points) offer(x);
  if (!best) throw std::domain_error("leftmost point of the empty set");
  return *best;
}

// Lexicographically least path through the complement of finitely many cylinders.
NameStream greedy_path(const BaireSet& a, Word w = {}) {
  std::size_t depth = 0;
  for (const auto& r : a.removed) depth = std::max(depth, r.size());
  while (w.size() < depth) {
    Digit d = 0;
    for (;; ++d) {
      w.push_back(d);
      if (!a.removed.count(w)) break;
      w.pop_back();
    }
  }
  return extend_zeros(w);
}

bool blocked(const BaireSet& a, const Word& w) {
  for (std::size_t k = 0; k <= w.size(); ++k)
    if (a.removed.count(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k)))) return true;
  return false;
}

// Components of a K_N input: x(0)=m and component i at positions 1+i+m*j.
std::vector<NatSet> compact_components(const NameStream& x) {
  if (!x.is_ep()) throw std::invalid_argument("K_N input must be eventually periodic");
  const std::size_t m = x.digit(0);
  if (m > 4096) throw std::length_error("K_N input with too many components");
  std::vector<NatSet> out;
  for (std::size_t i = 0; i < m; ++i) {
    NameStream comp = NameStream::tabulate([&](std::size_t j) { return x.digit(1 + i + m * j); },
                                           x.prefix().size() / m + 2, x.period().size());
    out.push_back(std::get<NatSet>(set_members(Space::finite(2), comp)));
  }
  return out;
}

std::string trim(std::string_view t) {
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  return std::string(t);
}

}  // namespace

std::set<Digit> cluster_points(const NameStream& p) {
  if (!p.is_ep()) throw std::invalid_argument("cluster points need an eventually periodic stream");
  return std::set<Digit>(p.period().begin(), p.period().end());
}

ProblemPtr identity(const Space& sp) {
  ProblemSpec s{"id_" + sp.name(), rep(sp), rep(sp), always, nullptr, nullptr, Point::natural(0), nullptr};
  s.accepts = [](const Point& x, const Point& y) { return x == y; };
  s.solve = [](const Point& x) { return x; };
  if (sp.kind == Space::Kind::cantor || sp.kind == Space::Kind::baire) s.default_output = Point::stream({});
  if (sp.kind == Space::Kind::unit_interval) s.default_output = Point::rational(Rational(0));
  return make_problem(std::move(s));
}

ProblemPtr lpo(bool sierpinski_output) {
  return decision(sierpinski_output ? "LPO_S" : "LPO", rep(Space::baire()), sierpinski_output,
                  [](const Point& x) { return !has_zero(x.as_stream()); });
}

ProblemPtr inf(bool sierpinski_output) {
  return decision(sierpinski_output ? "INF_S" : "INF", rep(Space::baire()), sierpinski_output,
                  [](const Point& x) { return x.as_stream().infinitely_many_zeros(); });
}

ProblemPtr limit_baire() { return named_jump(identity(Space::baire()), "lim"); }
ProblemPtr limit_naturals() { return named_jump(identity(Space::naturals()), "limN"); }

ProblemPtr sort_problem() {
  auto sorted = [](const Point& x) {
    const NameStream& p = x.as_stream();
    if (p.infinitely_many_zeros()) return Point::stream(NameStream::constant(0));
    Word zeros;
    for (Digit d : p.prefix())
      if (d == 0) zeros.push_back(0);
    return Point::stream(NameStream::periodic(zeros, {1}));
  };
  ProblemSpec s{"SORT", rep(Space::cantor()), rep(Space::cantor()), always, nullptr, sorted,
                Point::stream({}), nullptr};
  s.accepts = [sorted](const Point& x, const Point& y) { return sorted(x) == y; };
  return make_problem(std::move(s));
}

ProblemPtr wbwt2() {
  ProblemSpec s{"WBWT2", rep(Space::cantor()), rep(Space::cantor()), always, nullptr, nullptr,
                Point::stream({}), nullptr};
  s.accepts = [](const Point& x, const Point& y) {
    const NameStream& q = y.as_stream();
    return q.period().size() == 1 && cluster_points(x.as_stream()).count(q.period()[0]) > 0;
  };
  s.solve = [](const Point& x) {
    return Point::stream(NameStream::constant(*cluster_points(x.as_stream()).begin()));
  };
  s.alternatives = [](const Point& x, Rng&) {
    std::vector<Point> out;
    for (Digit c : cluster_points(x.as_stream())) {
      out.push_back(Point::stream(NameStream::constant(c)));
      out.push_back(Point::stream(NameStream::periodic({1 - c, 1 - c, 1 - c}, {c})));
    }
    return out;
  };
  return make_problem(std::move(s));
}

ProblemPtr bwt2() {
  ProblemSpec s{"BWT2", rep(Space::cantor()), rep(Space::finite(2)), always, nullptr, nullptr, Point::natural(0),
                nullptr};
  s.accepts = [](const Point& x, const Point& y) {
    return y.is_natural() && cluster_points(x.as_stream()).count(y.as_natural()) > 0;
  };
  s.solve = [](const Point& x) { return Point::natural(*cluster_points(x.as_stream()).begin()); };
  s.alternatives = [](const Point& x, Rng&) {
    std::vector<Point> out;
    for (Digit c : cluster_points(x.as_stream())) out.push_back(Point::natural(c));
    return out;
  };
  return make_problem(std::move(s));
}

ProblemPtr neg() {
  return decision("NEG", sets_of(Space::cantor()), false,
                  [](const Point& x) { return cylinders(x).measure() == Rational(0); });
}

ProblemPtr choice_finite(std::uint64_t n) {
  ProblemSpec s{"C_fin(" + std::to_string(n) + ")", sets_of(Space::finite(n)), rep(Space::finite(n)), nullptr,
                nullptr, nullptr, Point::natural(0), nullptr};
  s.domain = [](const Point& x) { return !nat_set(x).empty(); };
  s.accepts = [](const Point& x, const Point& y) { return y.is_natural() && nat_set(x).contains(y.as_natural()); };
  s.solve = [](const Point& x) { return Point::natural(*nat_set(x).least()); };
  s.alternatives = [n](const Point& x, Rng&) {
    std::vector<Point> out;
    for (std::uint64_t k = 0; k < n; ++k)
      if (nat_set(x).contains(k)) out.push_back(Point::natural(k));
    return out;
  };
  return make_problem(std::move(s));
}

ProblemPtr choice_naturals(bool range_coding) {
  ProblemSpec s{range_coding ? "C_N_range" : "C_N", sets_of(Space::naturals(), range_coding),
                rep(Space::naturals()), nullptr, nullptr, nullptr, Point::natural(0), nullptr};
  s.domain = [](const Point& x) { return !nat_set(x).empty(); };
  s.accepts = [](const Point& x, const Point& y) { return y.is_natural() && nat_set(x).contains(y.as_natural()); };
  s.solve = [](const Point& x) { return Point::natural(*nat_set(x).least()); };
  s.alternatives = [](const Point& x, Rng& rng) {
    const NatSet& a = nat_set(x);
    std::vector<Point> out;
    std::uint64_t k = *a.least() + 1;
    for (int found = 0; found < 2 && k < *a.least() + 64; ++k)
      if (a.contains(k)) out.push_back(Point::natural(k)), ++found;
    if (a.cofinite) {
      std::uint64_t far = 100 + rng() % 1000;
      while (!a.contains(far)) ++far;
      out.push_back(Point::natural(far));
    }
    return out;
  };
  return make_problem(std::move(s));
}

ProblemPtr compact_choice_naturals() {
  ProblemSpec s{"K_N", rep(Space::baire()), rep(Space::baire()), nullptr, nullptr, nullptr, Point::stream({}),
                nullptr};
  s.domain = [](const Point& x) {
    auto comps = compact_components(x.as_stream());
    return std::none_of(comps.begin(), comps.end(), [](const NatSet& a) { return a.empty(); });
  };
  s.accepts = [](const Point& x, const Point& y) {
    auto comps = compact_components(x.as_stream());
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (!comps[i].contains(y.as_stream().digit(i))) return false;
    return true;
  };
  s.solve = [](const Point& x) {
    Word w;
    for (const auto& a : compact_components(x.as_stream())) w.push_back(*a.least());
    return Point::stream(extend_zeros(w));
  };
  s.alternatives = [](const Point& x, Rng&) {
    Word w;
    for (const auto& a : compact_components(x.as_stream())) w.push_back(a.contains(1) ? 1 : 0);
    return std::vector<Point>{Point::stream(NameStream::periodic(w, {7}))};
  };
  return make_problem(std::move(s));
}

ProblemPtr choice_cantor(bool positive) {
  ProblemSpec s{positive ? "PC_2N" : "C_2N", sets_of(Space::cantor()), rep(Space::cantor()), nullptr, nullptr,
                nullptr, Point::stream({}), nullptr};
  if (positive)
    s.domain = [](const Point& x) { return cylinders(x).measure() > Rational(0); };
  else
    s.domain = [](const Point& x) { return !cylinders(x).empty(); };
  s.accepts = [](const Point& x, const Point& y) { return cylinders(x).contains(y.as_stream()); };
  s.solve = [](const Point& x) { return Point::stream(leftmost(cylinders(x))); };
  s.alternatives = [](const Point& x, Rng&) {
    std::vector<Point> out;
    for (const auto& w : cylinders(x).cylinders) {
      out.push_back(Point::stream(NameStream::periodic(w, {1})));
      out.push_back(Point::stream(NameStream::periodic(w, {0, 1})));
    }
    for (const auto& p : cylinders(x).points) out.push_back(Point::stream(p));
    return out;
  };
  return make_problem(std::move(s));
}

ProblemPtr choice_interval(bool positive) {
  ProblemSpec s{positive ? "PCC_I" : "ConC_I", sets_of(Space::unit_interval()), rep(Space::unit_interval()),
                nullptr, nullptr, nullptr, Point::rational(Rational(0)), nullptr};
  s.domain = [positive](const Point& x) {
    const auto& parts = intervals(x).parts;
    return parts.size() == 1 && (!positive || parts[0].lo < parts[0].hi);
  };
  s.accepts = [](const Point& x, const Point& y) { return intervals(x).contains(y.as_rational()); };
  s.solve = [](const Point& x) { return Point::rational(intervals(x).parts[0].lo); };
  s.alternatives = [](const Point& x, Rng&) {
    const auto& c = intervals(x).parts[0];
    return std::vector<Point>{Point::rational(c.hi), Point::rational((c.lo + c.hi) / 2)};
  };
  return make_problem(std::move(s));
}

ProblemPtr choice_baire() {
  ProblemSpec s{"C_NN", sets_of(Space::baire()), rep(Space::baire()), nullptr, nullptr, nullptr, Point::stream({}),
                nullptr};
  s.domain = [](const Point& x) { return !baire_set(x).empty(); };
  s.accepts = [](const Point& x, const Point& y) { return baire_set(x).contains(y.as_stream()); };
  s.solve = [](const Point& x) { return Point::stream(greedy_path(baire_set(x))); };
  s.alternatives = [](const Point& x, Rng& rng) {
    std::vector<Point> out;
    Digit start = 1 + rng() % 5;
    for (Digit a = start; a < start + 3; ++a)
      if (!blocked(baire_set(x), {a})) out.push_back(Point::stream(greedy_path(baire_set(x), {a})));
    return out;
  };
  return make_problem(std::move(s));
}

ProblemPtr wft(bool sierpinski_output) {
  return decision(sierpinski_output ? "WFT_S" : "WFT", sets_of(Space::baire()), sierpinski_output,
                  [](const Point& x) { return baire_set(x).empty(); });
}

std::vector<ProblemPtr> catalog() {
  return {lpo(),
          lpo(true),
          jump(lpo()),
          jump(lpo(true)),
          inf(),
          inf(true),
          limit_baire(),
          limit_naturals(),
          sort_problem(),
          wbwt2(),
          bwt2(),
          neg(),
          choice_finite(1),
          choice_finite(2),
          choice_finite(3),
          choice_naturals(),
          choice_naturals(true),
          compact_choice_naturals(),
          choice_cantor(),
          choice_cantor(true),
          choice_interval(),
          choice_interval(true),
          choice_baire(),
          wft(),
          wft(true)};
}

ProblemPtr parse_problem(std::string_view text) {
  std::string t = trim(text);
  std::size_t jumps = 0;
  while (!t.empty() && t.back() == '\'') {
    ++jumps;
    t.pop_back();
  }
  t = trim(t);
  if (t.empty()) throw std::invalid_argument("empty problem name");

  ProblemPtr p;
  auto wrapped = [&](std::string_view head) {
    return t.size() > head.size() + 1 && t.compare(0, head.size(), head) == 0 && t.back() == ')';
  };
  auto inner = [&](std::size_t head) { return std::string_view(t).substr(head, t.size() - head - 1); };
  if (wrapped("bar(")) {
    p = completion(parse_problem(inner(4)));
  } else if (wrapped("T(")) {
    p = totalization(parse_problem(inner(2)));
  } else if (wrapped("C_fin(")) {
    std::string n = trim(inner(6));
    if (n.empty() || !std::all_of(n.begin(), n.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw std::invalid_argument("C_fin needs a natural number, got '" + n + "'");
    p = choice_finite(std::stoull(n));
  } else if (wrapped("id(")) {
    p = identity(Space::parse(trim(inner(3))));
  } else {
    static const std::vector<std::pair<std::vector<std::string>, ProblemPtr (*)()>> atoms = {
        {{"LPO"}, [] { return lpo(); }},
        {{"LPO_S"}, [] { return lpo(true); }},
        {{"INF"}, [] { return inf(); }},
        {{"INF_S"}, [] { return inf(true); }},
        {{"lim"}, limit_baire},
        {{"limN", "lim_N"}, limit_naturals},
        {{"SORT"}, sort_problem},
        {{"WBWT2", "WBWT_2"}, wbwt2},
        {{"BWT2", "BWT_2"}, bwt2},
        {{"NEG"}, neg},
        {{"C_N"}, [] { return choice_naturals(); }},
        {{"C_N_range"}, [] { return choice_naturals(true); }},
        {{"K_N"}, compact_choice_naturals},
        {{"C_2N"}, [] { return choice_cantor(); }},
        {{"PC_2N"}, [] { return choice_cantor(true); }},
        {{"ConC_I"}, [] { return choice_interval(); }},
        {{"PCC_I"}, [] { return choice_interval(true); }},
        {{"C_NN"}, choice_baire},
        {{"WFT"}, [] { return wft(); }},
        {{"WFT_S"}, [] { return wft(true); }},
    };
    for (const auto& [names, make] : atoms)
      if (std::find(names.begin(), names.end(), t) != names.end()) p = make();
    if (!p) {
      // C_n for a literal n is the finite choice problem on n points.
      if (t.size() > 2 && t.compare(0, 2, "C_") == 0 &&
          std::all_of(t.begin() + 2, t.end(), [](unsigned char c) { return std::isdigit(c); }))
        p = choice_finite(std::stoull(t.substr(2)));
      else
        throw std::invalid_argument("unknown problem '" + t + "'");
    }
  }
  for (std::size_t i = 0; i < jumps; ++i) p = jump(p);
  return p;
}

}  // namespace wlab
