#include <random>

#include "doctest.h"
#include "wlab/family.hpp"
#include "wlab/streams.hpp"

using namespace wlab;

namespace {

NameStream random_ep(std::mt19937_64& rng, Digit max_digit = 4) {
  Word u(rng() % 5), v(1 + rng() % 4);
  for (auto& d : u) d = rng() % (max_digit + 1);
  for (auto& d : v) d = rng() % (max_digit + 1);
  return NameStream::periodic(u, v);
}

// Digit-level oracle for p-1: drop zeros, subtract one from the rest.
Word minus_one_digits(const NameStream& p, std::size_t n) {
  Word out;
  for (Digit d : p.take(n))
    if (d) out.push_back(d - 1);
  return out;
}

}  // namespace

TEST_CASE("canonical form has a primitive period and no redundant prefix tail") {
  auto s = NameStream::periodic({1, 2, 1, 2}, {1, 2, 1, 2});
  CHECK(s.prefix().empty());
  CHECK(s.period() == Word{1, 2});
  auto t = NameStream::periodic({5, 0}, {1, 0});
  CHECK(t.prefix() == Word{5});
  CHECK(t.period() == Word{0, 1});
  CHECK(NameStream::parse("3;1,2").to_string() == "3;1,2");
}

TEST_CASE("canonicalization is idempotent and preserves digits") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 500; ++k) {
    auto s = random_ep(rng);
    auto again = NameStream::periodic(s.prefix(), s.period());
    CHECK(again.prefix() == s.prefix());
    CHECK(again.period() == s.period());
  }
  Word u{2, 1, 2, 1}, v{2, 1};
  auto s = NameStream::periodic(u, v);
  for (std::size_t i = 0; i < 40; ++i) CHECK(s.digit(i) == (i < 4 ? u[i] : v[(i - 4) % 2]));
}

TEST_CASE("minus_one examples") {
  auto fin = minus_one(NameStream::parse("2,0,4,1;0"));
  REQUIRE(fin.is_finite());
  CHECK(fin.word == Word{1, 3, 0});
  auto empty = minus_one(NameStream::parse(";0"));
  REQUIRE(empty.is_finite());
  CHECK(empty.word.empty());
  auto inf = minus_one(NameStream::parse("3;1,2"));
  REQUIRE(!inf.is_finite());
  CHECK(inf.stream == NameStream::parse("2;0,1"));
}

TEST_CASE("minus_one agrees with the digit oracle on random streams") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 300; ++k) {
    auto p = random_ep(rng, 3);
    auto m = minus_one(p);
    Word oracle = minus_one_digits(p, 200);
    if (m.is_finite()) {
      CHECK(p.period_all_zero());
      CHECK(m.word == oracle);
    } else {
      REQUIRE(oracle.size() >= 20);
      CHECK(m.stream.take(20) == Word(oracle.begin(), oracle.begin() + 20));
    }
  }
}

TEST_CASE("plus_one_embed examples and round trip") {
  CHECK(plus_one_embed(NameStream::parse(";0")) == NameStream::parse(";1"));
  CHECK(plus_one_embed(NameStream::parse("2;0,1")) == NameStream::parse("3;1,2"));
  std::mt19937_64 rng(7);
  for (int k = 0; k < 1000; ++k) {
    auto q = random_ep(rng, 9);
    auto m = minus_one(plus_one_embed(q));
    REQUIRE(!m.is_finite());
    CHECK(m.stream.take(100) == q.take(100));
    CHECK(m.stream == q);
  }
}

TEST_CASE("stream pairing interleaves") {
  CHECK(pair(NameStream::parse(";0"), NameStream::parse(";1")) == NameStream::parse(";0,1"));
  CHECK(pair(NameStream::parse(";1,2"), NameStream::parse(";0")) == NameStream::parse(";1,0,2,0"));
  std::mt19937_64 rng(3);
  for (int k = 0; k < 300; ++k) {
    auto p = random_ep(rng), q = random_ep(rng);
    auto s = pair(p, q);
    CHECK(s.is_ep());
    CHECK(project_left(s) == p);
    CHECK(project_right(s) == q);
    for (std::size_t i = 0; i < 30; ++i) {
      CHECK(s.digit(2 * i) == p.digit(i));
      CHECK(s.digit(2 * i + 1) == q.digit(i));
    }
  }
}

TEST_CASE("Cantor pairing matches diagonal enumeration") {
  // Oracle: walk diagonals s = i+j, j ascending.
  std::uint64_t n = 0;
  for (std::uint64_t s = 0; s <= 100; ++s)
    for (std::uint64_t j = 0; j <= s; ++j, ++n) {
      CHECK(pair_index(s - j, j) == n);
      auto [ui, uj] = unpair_index(n);
      CHECK(ui == s - j);
      CHECK(uj == j);
    }
  for (std::uint64_t i = 0; i <= 50; ++i)
    for (std::uint64_t j = 0; j <= 50; ++j) {
      auto [ui, uj] = unpair_index(pair_index(i, j));
      CHECK((ui == i && uj == j));
    }
  const std::uint64_t big = 3'000'000'000;
  auto [bi, bj] = unpair_index(pair_index(big, 7));
  CHECK(bi == big);
  CHECK(bj == 7);
}

TEST_CASE("tupling families") {
  CHECK(tuple_infinite(Family::constant(NameStream::parse(";0"))) == NameStream::parse(";0"));
  auto f = Family::eventually({NameStream::parse(";1")}, {NameStream::parse(";2")});
  auto s = tuple_infinite(f);
  // Positions <0,j> = j(j+1)/2 + j.
  for (std::size_t n = 0; n < 20; ++n) {
    bool diag0 = false;
    for (std::size_t j = 0; j <= n; ++j) diag0 = diag0 || (j * (j + 1) / 2 + j == n);
    CHECK(s.digit(n) == (diag0 ? 1u : 2u));
  }
  CHECK(project_component(s, 0) == NameStream::parse(";1"));
  CHECK(project_component(s, 9) == NameStream::parse(";2"));
  REQUIRE(f.limit());
  CHECK(*f.limit() == NameStream::parse(";2"));
}

TEST_CASE("family literals and limits") {
  auto f = Family::parse("3;0|3;0|3;0|3;0@9;0");
  REQUIRE(f.limit());
  CHECK(*f.limit() == NameStream::parse("9;0"));
  CHECK(f.component(2) == NameStream::parse("3;0"));
  CHECK(f.component(100) == NameStream::parse("9;0"));
  CHECK(!Family::parse("@0;0|1;0").limit());
  auto pumped = Family::parse("@1<1>;0");
  CHECK(pumped.component(0) == NameStream::parse("1;0"));
  CHECK(pumped.component(3) == NameStream::parse("1,1,1,1;0"));
  REQUIRE(pumped.limit());
  CHECK(*pumped.limit() == NameStream::parse(";1"));
  CHECK(Family::parse(pumped.to_string()) == pumped);
}

TEST_CASE("parse errors are reported") {
  CHECK_THROWS_AS(NameStream::parse("1,2"), std::invalid_argument);
  CHECK_THROWS_AS(NameStream::parse("1;"), std::invalid_argument);
  CHECK_THROWS_AS(NameStream::parse("1;2;3"), std::invalid_argument);
  CHECK_THROWS_AS(NameStream::parse("a;0"), std::invalid_argument);
}
