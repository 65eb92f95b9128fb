#include "wlab/spaces.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>

#include "wlab/family.hpp"

namespace wlab {

namespace {

bool has_prefix(const Word& w, const Word& prefix) {
  return prefix.size() <= w.size() && std::equal(prefix.begin(), prefix.end(), w.begin());
}

// Least i with 2^-i < r, for 0 < r.
std::size_t cylinder_length(const Rational& r) {
  auto a = static_cast<unsigned __int128>(r.numerator());
  auto b = static_cast<unsigned __int128>(r.denominator());
  std::size_t i = 0;
  while ((a << i) <= b) ++i;
  return i;
}

void cantor_complement(const std::vector<Word>& removed, Word& node, std::set<Word>& out) {
  bool extended = false;
  for (const auto& w : removed) {
    if (has_prefix(node, w)) return;
    if (w.size() > node.size() && has_prefix(w, node)) extended = true;
  }
  if (!extended) {
    out.insert(node);
    return;
  }
  for (Digit b : {Digit{0}, Digit{1}}) {
    node.push_back(b);
    cantor_complement(removed, node, out);
    node.pop_back();
  }
}

std::vector<ClosedInterval> merge(std::vector<ClosedInterval> parts) {
  std::sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
  std::vector<ClosedInterval> out;
  for (const auto& p : parts) {
    if (!out.empty() && p.lo <= out.back().hi)
      out.back().hi = std::max(out.back().hi, p.hi);
    else
      out.push_back(p);
  }
  return out;
}

Word map_digits(const Word& w, std::uint64_t (*f)(Digit)) {
  Word out;
  for (Digit d : w) out.push_back(f(d));
  return out;
}

std::uint64_t range_digit_to_ball(Digit d) { return d == 0 ? 0 : natural_ball(d - 1); }

enum class NatBallKind { empty, single, whole };

NatBallKind classify_nat_ball(std::uint64_t code, std::uint64_t& n) {
  BallCode b = BallCode::decode(code);
  Rational r = b.radius();
  n = b.center;
  if (r == Rational(0)) return NatBallKind::empty;
  return r > Rational(1) ? NatBallKind::whole : NatBallKind::single;
}

std::uint64_t ball_digit_to_range(Digit code) {
  std::uint64_t n = 0;
  switch (classify_nat_ball(code, n)) {
    case NatBallKind::single: return n + 1;
    default: return 0;
  }
}

}  // namespace

// ---- Space ----------------------------------------------------------------

Space Space::finite(std::uint64_t n) {
  Space s;
  s.kind = Kind::finite;
  s.n = n;
  return s;
}
Space Space::naturals() { return Space{}; }
Space Space::sierpinski() {
  Space s;
  s.kind = Kind::sierpinski;
  return s;
}
Space Space::cantor() {
  Space s;
  s.kind = Kind::cantor;
  return s;
}
Space Space::baire() {
  Space s;
  s.kind = Kind::baire;
  return s;
}
Space Space::unit_interval() {
  Space s;
  s.kind = Kind::unit_interval;
  return s;
}

Space Space::closed_sets_of(const Space& base, bool range_coding) {
  if (!base.is_base() || base.kind == Kind::sierpinski)
    throw std::invalid_argument("closed sets are only available over N, fin(n), 2N, NN and I, not " + base.name());
  if (range_coding && base.kind != Kind::naturals)
    throw std::invalid_argument("range coding exists only for closed subsets of N");
  Space s;
  s.kind = Kind::closed_sets;
  s.inner = std::make_shared<const Space>(base);
  s.range_coding = range_coding;
  return s;
}

Space Space::parse(std::string_view name) {
  if (name == "N") return naturals();
  if (name == "2N") return cantor();
  if (name == "NN") return baire();
  if (name == "S") return sierpinski();
  if (name == "I") return unit_interval();
  if (name.substr(0, 4) == "fin(" && name.back() == ')') {
    std::uint64_t n = 0;
    auto digits = name.substr(4, name.size() - 5);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
      throw std::invalid_argument("bad finite space '" + std::string(name) + "'");
    return finite(n);
  }
  if (name.substr(0, 3) == "A-(" && name.back() == ')') {
    auto inner = name.substr(3, name.size() - 4);
    if (inner == "N;range") return closed_sets_of(naturals(), true);
    return closed_sets_of(parse(inner));
  }
  throw std::invalid_argument("unknown space '" + std::string(name) + "'");
}

std::string Space::name() const {
  switch (kind) {
    case Kind::finite: return "fin(" + std::to_string(n) + ")";
    case Kind::naturals: return "N";
    case Kind::sierpinski: return "S";
    case Kind::cantor: return "2N";
    case Kind::baire: return "NN";
    case Kind::unit_interval: return "I";
    case Kind::closed_sets: return "A-(" + inner->name() + (range_coding ? ";range" : "") + ")";
  }
  return "?";
}

bool Space::compact() const {
  return kind == Kind::finite || kind == Kind::cantor || kind == Kind::unit_interval;
}

bool Space::operator==(const Space& o) const { return name() == o.name(); }

// ---- Points ---------------------------------------------------------------

std::string Point::to_string() const {
  struct V {
    std::string operator()(std::uint64_t n) const { return std::to_string(n); }
    std::string operator()(const Bottom& b) const { return b.level == 1 ? "bot" : "bot" + std::to_string(b.level); }
    std::string operator()(const NameStream& s) const { return s.to_string(); }
    std::string operator()(const Rational& r) const { return wlab::to_string(r); }
    std::string operator()(const ClosedSet& c) const { return wlab::to_string(c); }
  };
  return std::visit(V{}, value);
}

std::string Observation::to_string() const {
  switch (status) {
    case Status::pending: return "pending";
    case Status::undefined: return "undefined(" + reason + ")";
    case Status::point: return point.to_string();
  }
  return "?";
}

// ---- Representation -------------------------------------------------------

Representation::Representation(Space base) : base_(std::move(base)) {}

Representation make_space(const Space& s) { return Representation(s); }

Representation Representation::precompletion() const {
  Representation r = *this;
  r.layers_.push_back(Layer::precompletion);
  return r;
}

Representation Representation::completion() const {
  Representation r = *this;
  r.layers_.push_back(Layer::completion);
  return r;
}

Representation Representation::jump() const {
  Representation r = *this;
  r.layers_.push_back(Layer::jump);
  return r;
}

bool Representation::total() const {
  if (!layers_.empty()) return layers_.back() == Layer::completion;
  return base_.kind != Space::Kind::finite && base_.kind != Space::Kind::cantor;
}

bool Representation::precomplete() const {
  return !layers_.empty() && layers_.back() != Layer::jump;
}

bool Representation::has_jump() const {
  return std::find(layers_.begin(), layers_.end(), Layer::jump) != layers_.end();
}

int Representation::completion_levels() const {
  return static_cast<int>(std::count(layers_.begin(), layers_.end(), Layer::completion));
}

std::string Representation::name() const {
  std::string s = base_.name();
  for (Layer l : layers_) {
    switch (l) {
      case Layer::precompletion: s = "pre(" + s + ")"; break;
      case Layer::completion: s = "bar(" + s + ")"; break;
      case Layer::jump: s += "'"; break;
    }
  }
  return s;
}

std::size_t Representation::certificate_depth(const NameStream& p) {
  if (!p.is_ep()) return std::numeric_limits<std::size_t>::max();
  return p.prefix().size() + 2 * p.period().size() + 1;
}

Observation Representation::decode(const NameStream& p, std::size_t depth) const {
  if (p.is_ep() && depth >= certificate_depth(p)) return exact(layers_.size(), p);
  if (!p.is_ep() && p.family() && depth >= 1 && has_jump()) return exact(layers_.size(), p);
  return from_prefix(layers_.size(), p.take(depth));
}

Observation Representation::decode(const NameStream& p) const {
  if (!p.is_ep() && !(p.family() && has_jump()))
    throw std::invalid_argument("exact decoding needs an eventually periodic name");
  return exact(layers_.size(), p);
}

Observation Representation::exact(std::size_t k, const NameStream& p) const {
  if (k == 0) {
    switch (base_.kind) {
      case Space::Kind::naturals: return Observation::of(Point::natural(p.digit(0)));
      case Space::Kind::finite:
        if (p.digit(0) < base_.n) return Observation::of(Point::natural(p.digit(0)));
        return Observation::undefined("first digit outside fin(" + std::to_string(base_.n) + ")");
      case Space::Kind::sierpinski:
        return Observation::of(Point::natural(p.prefix().empty() && p.period() == Word{0} ? 0 : 1));
      case Space::Kind::cantor: {
        auto binary = [](const Word& w) { return std::all_of(w.begin(), w.end(), [](Digit d) { return d <= 1; }); };
        if (binary(p.prefix()) && binary(p.period())) return Observation::of(Point::stream(p));
        return Observation::undefined("non-binary digit");
      }
      case Space::Kind::baire: return Observation::of(Point::stream(p));
      case Space::Kind::unit_interval: return Observation::of(Point::rational(interval_point(p.digit(0))));
      case Space::Kind::closed_sets:
        if (base_.range_coding) return Observation::of(Point::set(range_members(p)));
        return Observation::of(Point::set(set_members(*base_.inner, p)));
    }
  }
  const Layer layer = layers_[k - 1];
  if (layer == Layer::jump) {
    if (p.family()) {
      auto lim = p.family()->limit();
      if (!lim) return Observation::undefined("non-convergent family");
      return exact(k - 1, *lim);
    }
    if (p.is_ep() && p.prefix().empty() && p.period().size() == 1) return exact(k - 1, p);
    return Observation::undefined("jump name without a finite family description");
  }
  MinusOneResult m;
  if (!p.is_ep() && p.family()) {
    // A tupled family without zeros shifts componentwise and stays a tupled family.
    if (p.family()->has_digit(0)) return Observation::undefined("p-1 of a tupled family with zeros");
    m.kind = MinusOneResult::Kind::infinite;
    m.stream = tuple_infinite(p.family()->map_digits([](Digit d) { return d - 1; }));
  } else {
    m = minus_one(p);
  }
  if (layer == Layer::precompletion) {
    if (m.is_finite()) return Observation::undefined("p-1 is a finite word");
    return exact(k - 1, m.stream);
  }
  const int level = static_cast<int>(std::count(layers_.begin(), layers_.begin() + k, Layer::completion));
  if (m.is_finite()) return Observation::of(Point::bottom(level));
  Observation inner = exact(k - 1, m.stream);
  if (inner.status == Observation::Status::undefined) return Observation::of(Point::bottom(level));
  return inner;
}

Observation Representation::from_prefix(std::size_t k, const Word& w) const {
  if (k == 0) {
    switch (base_.kind) {
      case Space::Kind::naturals:
        return w.empty() ? Observation::pending() : Observation::of(Point::natural(w[0]));
      case Space::Kind::finite:
        if (w.empty()) return Observation::pending();
        if (w[0] < base_.n) return Observation::of(Point::natural(w[0]));
        return Observation::undefined("first digit outside fin(" + std::to_string(base_.n) + ")");
      case Space::Kind::sierpinski:
        if (std::any_of(w.begin(), w.end(), [](Digit d) { return d != 0; }))
          return Observation::of(Point::natural(1));
        return Observation::pending();
      case Space::Kind::cantor:
        if (std::any_of(w.begin(), w.end(), [](Digit d) { return d > 1; }))
          return Observation::undefined("non-binary digit");
        return Observation::pending();
      case Space::Kind::unit_interval:
        return w.empty() ? Observation::pending() : Observation::of(Point::rational(interval_point(w[0])));
      case Space::Kind::baire:
      case Space::Kind::closed_sets: return Observation::pending();
    }
  }
  const Layer layer = layers_[k - 1];
  if (layer == Layer::jump) return Observation::pending();
  Observation inner = from_prefix(k - 1, minus_one(w));
  if (layer == Layer::precompletion) return inner;
  // Every prefix of a completed name extends to a name of bottom, so only
  // an inner failure is determined.
  if (inner.status == Observation::Status::undefined) {
    const int level = static_cast<int>(std::count(layers_.begin(), layers_.begin() + k, Layer::completion));
    return Observation::of(Point::bottom(level));
  }
  return Observation::pending();
}

Point jump_decode(const Representation& r, const NameStream& p) {
  Observation o = r.jump().decode(p);
  if (!o.is_point()) throw std::domain_error("jump decoding failed: " + o.reason);
  return o.point;
}

// ---- Balls and closed sets ------------------------------------------------

Ball ball_semantics(const Space& base, std::uint64_t code) {
  BallCode bc = BallCode::decode(code);
  Rational r = bc.radius();
  Ball b;
  switch (base.kind) {
    case Space::Kind::finite:
    case Space::Kind::naturals: {
      b.kind = Ball::Kind::naturals;
      if (r == Rational(0)) {
        b.empty = true;
      } else if (r > Rational(1)) {
        if (base.kind == Space::Kind::naturals) {
          b.naturals.cofinite = true;
        } else {
          for (std::uint64_t i = 0; i < base.n; ++i) b.naturals.elems.insert(i);
        }
      } else {
        if (base.kind == Space::Kind::finite && base.n == 0) {
          b.empty = true;
        } else {
          b.naturals.elems.insert(base.kind == Space::Kind::finite ? bc.center % base.n : bc.center);
        }
      }
      b.empty = b.empty || b.naturals.empty();
      return b;
    }
    case Space::Kind::cantor:
    case Space::Kind::baire: {
      b.kind = Ball::Kind::cylinder;
      if (r == Rational(0)) {
        b.empty = true;
        return b;
      }
      std::size_t m = cylinder_length(r);
      if (base.kind == Space::Kind::cantor) {
        b.cylinder = cantor_center(bc.center, m);
      } else {
        b.cylinder = baire_word(bc.center);
        b.cylinder.resize(m, 0);
      }
      return b;
    }
    case Space::Kind::unit_interval: {
      b.kind = Ball::Kind::interval;
      Rational c = interval_point(bc.center);
      b.lo = c - r;
      b.hi = c + r;
      b.empty = r == Rational(0);
      return b;
    }
    default: throw std::invalid_argument("no ball structure on " + base.name());
  }
}

std::string Ball::to_string() const {
  if (empty) return "{}";
  switch (kind) {
    case Kind::naturals: return wlab::to_string(ClosedSet{naturals});
    case Kind::cylinder: return "cyl(" + word_to_string(cylinder) + ")";
    case Kind::interval: {
      Rational l = std::max(lo, Rational(0)), h = std::min(hi, Rational(1));
      return std::string(lo < Rational(0) ? "[" : "(") + wlab::to_string(l) + "," + wlab::to_string(h) + (hi > Rational(1) ? "]" : ")");
    }
  }
  return "?";
}

bool ball_contains(const Ball& b, const Point& x) {
  if (b.empty) return false;
  switch (b.kind) {
    case Ball::Kind::naturals: return b.naturals.contains(x.as_natural());
    case Ball::Kind::cylinder: {
      const auto& s = x.as_stream();
      for (std::size_t i = 0; i < b.cylinder.size(); ++i)
        if (s.digit(i) != b.cylinder[i]) return false;
      return true;
    }
    case Ball::Kind::interval: {
      const auto& r = x.as_rational();
      return b.lo < r && r < b.hi;
    }
  }
  return false;
}

ClosedSet complement_of_balls(const Space& base, const std::vector<std::uint64_t>& codes) {
  switch (base.kind) {
    case Space::Kind::finite:
    case Space::Kind::naturals: {
      NatSet s;
      if (base.kind == Space::Kind::naturals) {
        s.cofinite = true;
      } else {
        for (std::uint64_t i = 0; i < base.n; ++i) s.elems.insert(i);
      }
      for (auto c : codes) {
        Ball b = ball_semantics(base, c);
        if (b.empty) continue;
        if (b.naturals.cofinite) return NatSet{};
        for (auto e : b.naturals.elems) {
          if (s.cofinite)
            s.elems.insert(e);
          else
            s.elems.erase(e);
        }
      }
      return s;
    }
    case Space::Kind::cantor: {
      std::vector<Word> removed;
      for (auto c : codes) {
        Ball b = ball_semantics(base, c);
        if (!b.empty) removed.push_back(b.cylinder);
      }
      CylinderUnion u;
      Word root;
      cantor_complement(removed, root, u.cylinders);
      return u;
    }
    case Space::Kind::baire: {
      std::set<Word> all;
      for (auto c : codes) {
        Ball b = ball_semantics(base, c);
        if (!b.empty) all.insert(b.cylinder);
      }
      BaireSet s;
      for (const auto& w : all) {
        bool dominated = false;
        for (const auto& v : all)
          if (v.size() < w.size() && has_prefix(w, v)) dominated = true;
        if (!dominated) s.removed.insert(w);
      }
      return s;
    }
    case Space::Kind::unit_interval: {
      std::vector<ClosedInterval> parts{{Rational(0), Rational(1)}};
      for (auto c : codes) {
        Ball b = ball_semantics(base, c);
        if (b.empty) continue;
        std::vector<ClosedInterval> next;
        for (const auto& p : parts) {
          if (p.lo <= b.lo) next.push_back({p.lo, std::min(p.hi, b.lo)});
          if (b.hi <= p.hi) next.push_back({std::max(p.lo, b.hi), p.hi});
        }
        parts = merge(std::move(next));
      }
      return IntervalSet{parts};
    }
    default: throw std::invalid_argument("no closed sets over " + base.name());
  }
}

std::vector<std::uint64_t> distinct_codes(const NameStream& enumeration) {
  if (!enumeration.is_ep()) throw std::invalid_argument("exact set computation needs an eventually periodic enumeration");
  std::vector<std::uint64_t> out;
  std::set<std::uint64_t> seen;
  for (const Word* w : {&enumeration.prefix(), &enumeration.period()})
    for (Digit d : *w)
      if (seen.insert(d).second) out.push_back(d);
  return out;
}

ClosedSet set_members(const Space& base, const NameStream& enumeration) {
  return complement_of_balls(base, distinct_codes(enumeration));
}

bool covers_space(const Space& base, const std::vector<std::uint64_t>& codes) {
  if (!base.compact()) throw std::invalid_argument("cover check needs a compact space, got " + base.name());
  return closed_set_empty(complement_of_balls(base, codes));
}

std::pair<Rational, Rational> interval_bounds(const std::vector<std::uint64_t>& codes) {
  const Space I = Space::unit_interval();
  std::vector<Ball> balls;
  for (auto c : codes) {
    Ball b = ball_semantics(I, c);
    if (!b.empty) balls.push_back(b);
  }
  // Grow the component of the union that contains an endpoint.
  auto reach = [&](bool from_left) -> Rational {
    Rational e = from_left ? Rational(0) : Rational(1);
    bool started = false;
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& b : balls) {
        if (!(b.lo < e && e < b.hi)) continue;
        Rational next = from_left ? b.hi : b.lo;
        if (from_left ? next > e : next < e) {
          e = next;
          changed = true;
        }
        started = true;
      }
    }
    if (!started) return from_left ? Rational(0) : Rational(1);
    return from_left ? std::min(e, Rational(1)) : std::max(e, Rational(0));
  };
  return {reach(true), reach(false)};
}

Rational measure_upper(const NameStream& enumeration, std::size_t stage) {
  auto codes = distinct_codes(enumeration);
  codes.resize(std::min(stage, codes.size()));
  return std::get<CylinderUnion>(complement_of_balls(Space::cantor(), codes)).measure();
}

std::uint64_t natural_ball(std::uint64_t n) { return BallCode{n, 1, 0}.encode(); }

std::uint64_t cantor_cylinder_ball(const Word& w) {
  if (w.size() > 62) throw std::length_error("cylinder too deep");
  return BallCode{cantor_index(w), 2, (std::uint64_t{1} << w.size()) - 1}.encode();
}

std::uint64_t baire_cylinder_ball(const Word& w) {
  if (w.size() > 62) throw std::length_error("cylinder too deep");
  return BallCode{baire_index(w), 2, (std::uint64_t{1} << w.size()) - 1}.encode();
}

std::uint64_t interval_ball(const Rational& center, const Rational& radius) {
  if (radius < Rational(0)) throw std::invalid_argument("negative radius");
  return BallCode{interval_index(center), static_cast<std::uint64_t>(radius.numerator()),
                  static_cast<std::uint64_t>(radius.denominator() - 1)}
      .encode();
}

std::uint64_t left_interval_ball(const Rational& l) { return interval_ball(Rational(0), l); }
std::uint64_t right_interval_ball(const Rational& r) { return interval_ball(Rational(1), Rational(1) - r); }

NatSet range_members(const NameStream& p) {
  if (!p.is_ep()) throw std::invalid_argument("exact set computation needs an eventually periodic enumeration");
  NatSet s;
  s.cofinite = true;
  for (const Word* w : {&p.prefix(), &p.period()})
    for (Digit d : *w)
      if (d) s.elems.insert(d - 1);
  return s;
}

NameStream range_to_balls(const NameStream& p) {
  if (p.is_ep())
    return NameStream::periodic(map_digits(p.prefix(), range_digit_to_ball), map_digits(p.period(), range_digit_to_ball));
  return NameStream::generated([p](std::size_t i) { return range_digit_to_ball(p.digit(i)); });
}

NameStream balls_to_range(const NameStream& p) {
  auto whole = [](Digit code) {
    std::uint64_t n = 0;
    return classify_nat_ball(code, n) == NatBallKind::whole;
  };
  if (p.is_ep()) {
    auto codes = distinct_codes(p);
    if (std::none_of(codes.begin(), codes.end(), whole))
      return NameStream::periodic(map_digits(p.prefix(), ball_digit_to_range), map_digits(p.period(), ball_digit_to_range));
  }
  // A ball covering N is replaced by an enumeration of every exclusion,
  // interleaved with the converted digits.
  return NameStream::generated([p, whole](std::size_t k) -> Digit {
    std::size_t i = k / 2;
    if (k % 2 == 0) return ball_digit_to_range(p.digit(i));
    for (std::size_t j = 0; j <= i; ++j)
      if (whole(p.digit(j))) return i - j + 1;
    return 0;
  });
}

}  // namespace wlab
