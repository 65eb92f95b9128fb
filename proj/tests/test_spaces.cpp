#include <random>

#include "doctest.h"
#include "wlab/family.hpp"
#include "wlab/spaces.hpp"

using namespace wlab;

namespace {

NameStream S(const char* lit) { return NameStream::parse(lit); }

Point decoded(const Representation& r, const NameStream& p) {
  Observation o = r.decode(p);
  REQUIRE(o.is_point());
  return o.point;
}

NameStream random_ep(std::mt19937_64& rng, Digit max_digit) {
  Word u(rng() % 5), v(1 + rng() % 4);
  for (auto& d : u) d = rng() % (max_digit + 1);
  for (auto& d : v) d = rng() % (max_digit + 1);
  return NameStream::periodic(u, v);
}

// Brute-force oracle: a point lies in the coded set iff no listed ball contains it.
bool outside_all(const Space& base, const std::vector<std::uint64_t>& codes, const Point& x) {
  for (auto c : codes)
    if (ball_contains(ball_semantics(base, c), x)) return false;
  return true;
}

Word binary_word(std::uint64_t bits, std::size_t len) {
  Word w(len);
  for (std::size_t i = 0; i < len; ++i) w[i] = (bits >> i) & 1;
  return w;
}

}  // namespace

TEST_CASE("base representations") {
  Representation sier(Space::sierpinski());
  CHECK(decoded(sier, S(";0")).as_natural() == 0);
  CHECK(decoded(sier, S("0,0,4;0")).as_natural() == 1);
  CHECK(decoded(Representation(Space::naturals()), S("7,1;2")).as_natural() == 7);
  CHECK(!Representation(Space::finite(3)).decode(S("3;0")).is_point());
  CHECK(!Representation(Space::cantor()).decode(S("0,2;1")).is_point());
  Representation range(Space::closed_sets_of(Space::naturals(), true));
  CHECK(std::get<NatSet>(decoded(range, S(";0")).as_set()) == NatSet{true, {}});
}

TEST_CASE("precompletion decodes through p-1") {
  auto pre = Representation(Space::naturals()).precompletion();
  CHECK(decoded(pre, S("0,0,3;1")).as_natural() == 2);
  CHECK(pre.decode(S(";0")).status == Observation::Status::undefined);
  CHECK(pre.precomplete());
  std::mt19937_64 rng(1);
  Representation base(Space::naturals());
  for (int k = 0; k < 200; ++k) {
    auto q = random_ep(rng, 6);
    CHECK(decoded(pre, plus_one_embed(q)) == decoded(base, q));
  }
}

TEST_CASE("completion is total and decodes finite names to bottom") {
  auto bar = Representation(Space::naturals()).completion();
  CHECK(decoded(bar, S(";0")).is_bottom());
  CHECK(decoded(bar, S("0,6;1")).as_natural() == 5);
  CHECK(bar.total());
  auto fin = Representation(Space::finite(2)).completion();
  CHECK(decoded(fin, S("9;1")).is_bottom());  // p-1 starts with 8, outside fin(2)
  std::mt19937_64 rng(2);
  for (int k = 0; k < 300; ++k) {
    auto p = random_ep(rng, 4);
    std::size_t d = Representation::certificate_depth(p);
    CHECK(d <= p.prefix().size() + 2 * p.period().size() + 1);
    CHECK(fin.decode(p, d).committed());
    CHECK(fin.decode(p, d).point == fin.decode(p).point);
  }
}

TEST_CASE("nested completion counts bottom levels from the inside") {
  auto bb = Representation(Space::naturals()).completion().completion();
  auto outer = decoded(bb, S(";0"));
  auto inner = decoded(bb, S(";1"));
  REQUIRE(outer.is_bottom());
  REQUIRE(inner.is_bottom());
  CHECK(std::get<Bottom>(outer.value).level == 2);
  CHECK(std::get<Bottom>(inner.value).level == 1);
  CHECK(decoded(bb, S(";6")).as_natural() == 4);
}

TEST_CASE("prefix decoding is monotone") {
  std::mt19937_64 rng(4);
  std::vector<Representation> reps{Representation(Space::naturals()),
                                   Representation(Space::sierpinski()),
                                   Representation(Space::finite(3)).completion(),
                                   Representation(Space::cantor()).completion(),
                                   Representation(Space::naturals()).precompletion(),
                                   Representation(Space::naturals()).completion().completion()};
  for (const auto& r : reps)
    for (int k = 0; k < 100; ++k) {
      auto p = random_ep(rng, 3);
      if (!r.decode(p).is_point()) continue;
      Observation prev = r.decode(p, 0);
      for (std::size_t d = 1; d < 30; ++d) {
        Observation next = r.decode(p, d);
        if (prev.committed()) {
          CHECK(next.status == prev.status);
          if (prev.is_point()) CHECK(next.point == prev.point);
        }
        prev = next;
      }
    }
}

TEST_CASE("jump decoding takes the limit of a tupled family") {
  Representation jn = Representation(Space::naturals()).jump();
  CHECK(decoded(jn, S(";7")).as_natural() == 7);
  auto switching = Family::parse("3;0|3;0|3;0|3;0@9;0");
  CHECK(decoded(jn, tuple_infinite(switching)).as_natural() == 9);
  CHECK(jump_decode(Representation(Space::naturals()), tuple_infinite(switching)).as_natural() == 9);
  auto alternating = Family::parse("@0;0|1;0");
  CHECK(jn.decode(tuple_infinite(alternating)).status == Observation::Status::undefined);
  CHECK_THROWS_AS(jump_decode(Representation(Space::naturals()), tuple_infinite(alternating)), std::domain_error);
}

TEST_CASE("completion over a jump shifts families without zeros") {
  auto r = Representation(Space::naturals()).jump().completion();
  auto fam = Family::parse("4;1|4;1@6;1");
  CHECK(decoded(r, tuple_infinite(fam)).as_natural() == 5);
}

TEST_CASE("ball semantics") {
  Ball five = ball_semantics(Space::naturals(), BallCode{5, 1, 0}.encode());
  CHECK(!five.empty);
  CHECK(five.naturals == NatSet{false, {5}});
  for (std::uint64_t k : {0, 1, 9}) CHECK(ball_semantics(Space::naturals(), BallCode{3, 0, k}.encode()).empty);
  CHECK(ball_semantics(Space::cantor(), BallCode{3, 0, 2}.encode()).empty);
  // alpha index of 1/2 with radius 1/2 gives (0,1).
  Ball mid = ball_semantics(Space::unit_interval(), interval_ball(Rational(1, 2), Rational(1, 2)));
  CHECK(mid.lo == Rational(0));
  CHECK(mid.hi == Rational(1));
  CHECK(interval_point(interval_index(Rational(3, 7))) == Rational(3, 7));
  Ball cyl = ball_semantics(Space::cantor(), cantor_cylinder_ball({0, 1, 1}));
  CHECK(cyl.cylinder == Word{0, 1, 1});
}

TEST_CASE("closed sets from ball enumerations") {
  auto c0 = cantor_cylinder_ball({0});
  auto cs = std::get<CylinderUnion>(complement_of_balls(Space::cantor(), {c0}));
  CHECK(cs.cylinders == std::set<Word>{{1}});
  auto nat = std::get<NatSet>(
      complement_of_balls(Space::naturals(), {natural_ball(0), natural_ball(1), natural_ball(2)}));
  CHECK(nat == NatSet{true, {0, 1, 2}});
  auto all = std::get<NatSet>(set_members(Space::naturals(), S(";0")));
  CHECK(all == NatSet{true, {}});
  CHECK(std::get<CylinderUnion>(set_members(Space::cantor(), S(";0"))).cylinders == std::set<Word>{{}});
}

TEST_CASE("cover checks") {
  CHECK(covers_space(Space::cantor(), {cantor_cylinder_ball({0}), cantor_cylinder_ball({1})}));
  CHECK(!covers_space(Space::finite(2), {natural_ball(0)}));
  // (-0.1,0.55) and (0.45,1.1)
  auto a = interval_ball(Rational(9, 40), Rational(13, 40));
  auto b = interval_ball(Rational(31, 40), Rational(13, 40));
  CHECK(covers_space(Space::unit_interval(), {a, b}));
  CHECK_THROWS_AS(covers_space(Space::naturals(), {}), std::invalid_argument);
}

TEST_CASE("interval bounds") {
  auto [l0, r0] = interval_bounds({left_interval_ball(Rational(3, 10)), right_interval_ball(Rational(7, 10))});
  CHECK(l0 == Rational(3, 10));
  CHECK(r0 == Rational(7, 10));
  auto [l1, r1] = interval_bounds({});
  CHECK(l1 == Rational(0));
  CHECK(r1 == Rational(1));
  auto [l2, r2] = interval_bounds({left_interval_ball(Rational(11, 20)), right_interval_ball(Rational(9, 20))});
  CHECK(l2 == Rational(1));
  CHECK(r2 == Rational(0));
}

TEST_CASE("measure of coded Cantor sets") {
  auto c0 = cantor_cylinder_ball({0});
  CHECK(std::get<CylinderUnion>(complement_of_balls(Space::cantor(), {c0})).measure() == Rational(1, 2));
  auto both = complement_of_balls(Space::cantor(), {cantor_cylinder_ball({0, 0}), cantor_cylinder_ball({0, 1})});
  CHECK(std::get<CylinderUnion>(both).measure() == Rational(1, 2));
  CHECK(measure_upper(S(";0"), 5) == Rational(1));
  NameStream e = NameStream::periodic({c0, cantor_cylinder_ball({1, 1})}, {0});
  CHECK(measure_upper(e, 1) == Rational(1, 2));
  for (std::size_t s = 3; s < 8; ++s) CHECK(measure_upper(e, s) == Rational(1, 4));
}

TEST_CASE("set members agree with point-by-point membership") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 150; ++k) {
    // Naturals: random small ball codes.
    Word u(rng() % 4), v(1 + rng() % 3);
    for (auto& d : u) d = rng() % 2 ? natural_ball(rng() % 12) : BallCode::decode(rng() % 60).encode();
    for (auto& d : v) d = rng() % 2 ? natural_ball(rng() % 12) : 0;
    NameStream p = NameStream::periodic(u, v);
    auto codes = distinct_codes(p);
    auto ns = std::get<NatSet>(set_members(Space::naturals(), p));
    for (std::uint64_t n = 0; n <= 100; ++n)
      CHECK(ns.contains(n) == outside_all(Space::naturals(), codes, Point::natural(n)));
    auto fs = std::get<NatSet>(set_members(Space::finite(3), p));
    for (std::uint64_t n = 0; n < 3; ++n)
      CHECK(fs.contains(n) == outside_all(Space::finite(3), codes, Point::natural(n)));

    // Cantor: cylinders to depth 4, points checked to depth 6.
    Word cu(1 + rng() % 3);
    for (auto& d : cu) d = cantor_cylinder_ball(binary_word(rng(), rng() % 5));
    NameStream cp = NameStream::periodic(cu, {0});
    auto ccodes = distinct_codes(cp);
    auto cset = std::get<CylinderUnion>(set_members(Space::cantor(), cp));
    for (std::uint64_t bits = 0; bits < 64; ++bits) {
      Point x = Point::stream(NameStream::periodic(binary_word(bits, 6), {0}));
      CHECK(cset.contains(x.as_stream()) == outside_all(Space::cantor(), ccodes, x));
    }
  }
}

TEST_CASE("range coding converts both ways") {
  NameStream p = S("3,0,1;0");  // excludes 2 and 0
  CHECK(range_members(p) == NatSet{true, {0, 2}});
  NameStream balls = range_to_balls(p);
  CHECK(std::get<NatSet>(set_members(Space::naturals(), balls)) == range_members(p));
  CHECK(range_members(balls_to_range(balls)) == range_members(p));
  std::mt19937_64 rng(12);
  for (int k = 0; k < 200; ++k) {
    auto q = random_ep(rng, 8);
    CHECK(std::get<NatSet>(set_members(Space::naturals(), range_to_balls(q))) == range_members(q));
  }
}

TEST_CASE("space names round trip") {
  for (const char* n : {"N", "2N", "NN", "S", "I", "fin(4)", "A-(N)", "A-(2N)", "A-(N;range)", "A-(I)"})
    CHECK(Space::parse(n).name() == n);
  CHECK_THROWS_AS(Space::parse("Q"), std::invalid_argument);
}
