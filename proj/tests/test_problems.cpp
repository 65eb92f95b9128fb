#include <random>

#include "doctest.h"
#include "wlab/family.hpp"
#include "wlab/problems.hpp"

using namespace wlab;

namespace {

NameStream S(const char* lit) { return NameStream::parse(lit); }

Point input_point(const ProblemPtr& f, const NameStream& x) {
  Observation o = f->decode_input(x);
  REQUIRE(o.is_point());
  return o.point;
}

// Brute-force cluster points: digits seen at some index >= n for every n <= 200.
std::set<Digit> brute_cluster(const NameStream& p) {
  std::set<Digit> out;
  for (Digit d = 0; d < 10; ++d) {
    bool everywhere = true;
    for (std::size_t n = 0; n <= 200 && everywhere; ++n) {
      bool seen = false;
      for (std::size_t i = n; i < n + 200 && !seen; ++i) seen = p.digit(i) == d;
      everywhere = seen;
    }
    if (everywhere) out.insert(d);
  }
  return out;
}

}  // namespace

TEST_CASE("catalog examples") {
  auto sort = sort_problem();
  CHECK(sort->solve_name(S("1,1,0;1")) == S("0;1"));
  CHECK(sort->solve_name(S(";0,1")) == S(";0"));
  CHECK(inf()->solve_name(S(";0,3")) == S(";1"));
  CHECK(inf()->solve_name(S("0,0;3")) == S(";0"));
  CHECK(lpo()->solve_name(S("4,0;1")) == S(";0"));
  CHECK(lpo()->solve_name(S("4;1")) == S(";1"));

  // {1^w}: what remains of 2N after removing every cylinder 1^i 0.
  CylinderUnion only_ones{{}, {S(";1")}};
  CHECK(neg()->solve(Point::set(only_ones)) == Point::natural(1));
  NameStream three_removed =
      NameStream::periodic({cantor_cylinder_ball({0}), cantor_cylinder_ball({1, 0}), cantor_cylinder_ball({1, 1, 0})}, {0});
  CHECK(neg()->solve_name(three_removed) == S(";0"));

  auto c3 = choice_finite(3);
  NameStream one_two = NameStream::constant(natural_ball(0));
  CHECK(c3->check_membership(one_two, S(";2")) == Verdict::accept);
  CHECK(c3->check_membership(one_two, S(";0")) == Verdict::reject);
  CHECK_THROWS_AS(c3->check_membership(one_two, S(";5")), std::invalid_argument);

  auto bar_cn = completion(choice_naturals());
  CHECK(bar_cn->check_membership(S(";0"), S(";0")) == Verdict::accept);
  CHECK(bar_cn->check_membership(NameStream::constant(plus_one_embed(NameStream::constant(0)).digit(0)), S(";0")) ==
        Verdict::reject);

  auto cn = choice_naturals();
  CHECK(cn->solve_name(NameStream::periodic({natural_ball(0)}, {natural_ball(1)})) == S(";2"));
  CHECK(wbwt2()->solve_name(S(";0,1")) == S(";0"));
  CHECK(bwt2()->solve_name(S("0;1")) == S(";1"));

  auto lim = limit_baire();
  CHECK(lim->solve_name(tuple_infinite(Family::parse("1;0|2;0@5;5"))) == S(";5"));
}

TEST_CASE("cluster points") {
  CHECK(cluster_points(S(";0,1")) == std::set<Digit>{0, 1});
  CHECK(cluster_points(S("0,1,1;1")) == std::set<Digit>{1});
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    auto p = random_ep(rng, 2);
    CHECK(cluster_points(p) == brute_cluster(p));
  }
}

TEST_CASE("compact choice reads interleaved finite sets") {
  auto kn = compact_choice_naturals();
  // m=2: component 0 excludes 0, component 1 excludes nothing.
  Digit ex0 = natural_ball(0);
  NameStream x = NameStream::periodic({2}, {ex0, 0});
  CHECK(kn->solve_name(x) == S("1,0;0"));
  CHECK(kn->check_membership(x, S("1,1;3")) == Verdict::accept);
  CHECK(kn->check_membership(x, S("0,1;3")) == Verdict::reject);
  NameStream empty_comp = NameStream::periodic({1}, {ex0, natural_ball(1)});
  CHECK(!kn->in_domain(input_point(kn, empty_comp)));
}

TEST_CASE("solvers are sound on random domain points") {
  Rng rng(2024);
  for (const auto& f : catalog()) {
    CAPTURE(f->name());
    int tested = 0;
    for (int k = 0; k < 2000 && tested < 200; ++k) {
      NameStream x = random_name(f->input(), rng);
      Observation o = f->decode_input(x);
      if (!o.is_point() || !f->in_domain(o.point)) continue;
      ++tested;
      CHECK(f->accepts(o.point, f->solve(o.point)));
      CHECK(f->check_membership(x, f->solve_name(x)) == Verdict::accept);
      for (const auto& y : f->sample_answers(o.point, rng)) CHECK(f->check_membership(x, y) == Verdict::accept);
    }
    CHECK(tested >= 20);
  }
}

TEST_CASE("variants keep the base semantics on the domain") {
  Rng rng(77);
  for (const auto& f : catalog()) {
    if (variant_of(f) == Variant::jump) continue;
    CAPTURE(f->name());
    auto bar = completion(f);
    auto tot = totalization(f);
    for (int k = 0; k < 150; ++k) {
      NameStream x = random_name(f->input(), rng);
      Observation o = f->decode_input(x);
      if (!o.is_point()) continue;
      NameStream bx = plus_one_embed(x);
      if (f->in_domain(o.point)) {
        NameStream y = f->solve_name(x);
        CHECK(bar->check_membership(bx, plus_one_embed(y)) == Verdict::accept);
        CHECK(bar->check_membership(bx, S(";0")) == Verdict::reject);
        CHECK(tot->check_membership(x, y) == Verdict::accept);
      } else {
        // Off the domain every answer is valid, bottom included.
        CHECK(bar->check_membership(bx, S(";0")) == Verdict::accept);
        for (const auto& y : bar->sample_answers(bar->decode_input(bx).point, rng))
          CHECK(bar->check_membership(bx, y) == Verdict::accept);
        CHECK(tot->check_membership(x, tot->solve_name(x)) == Verdict::accept);
      }
      CHECK(bar->check_membership(S(";0"), bar->solve_name(S(";0"))) == Verdict::accept);
    }
  }
}

TEST_CASE("completion samples are valid completed answers") {
  Rng rng(8);
  for (const auto& f : catalog()) {
    if (variant_of(f) == Variant::jump) continue;
    auto bar = completion(f);
    CAPTURE(bar->name());
    for (int k = 0; k < 100; ++k) {
      NameStream x = random_name(bar->input(), rng);
      for (const auto& y : bar->sample_answers(bar->decode_input(x).point, rng))
        CHECK(bar->check_membership(x, y) == Verdict::accept);
    }
  }
}

TEST_CASE("WFT agrees with emptiness of the coded set") {
  Rng rng(31);
  auto w = wft();
  Representation in(Space::closed_sets_of(Space::baire()));
  for (int k = 0; k < 300; ++k) {
    NameStream x = random_name(in, rng);
    bool empty = closed_set_empty(set_members(Space::baire(), x));
    CHECK(w->solve_name(x) == NameStream::constant(empty ? 1 : 0));
  }
  // Removing the cylinder of the empty word empties Baire space.
  CHECK(w->solve_name(NameStream::constant(baire_cylinder_ball({}))) == S(";1"));
}

TEST_CASE("INF agrees with the period oracle") {
  Rng rng(5);
  for (int k = 0; k < 300; ++k) {
    auto p = random_ep(rng, 2);
    bool zero_in_period = false;
    for (Digit d : p.period()) zero_in_period = zero_in_period || d == 0;
    CHECK(inf()->solve(Point::stream(p)) == Point::natural(zero_in_period ? 1 : 0));
  }
}

TEST_CASE("problem names parse") {
  for (const char* n : {"LPO", "LPO'", "lim", "limN", "SORT", "WBWT2", "BWT2", "NEG", "INF", "C_fin(3)", "C_N", "K_N",
                        "C_2N", "PC_2N", "ConC_I", "PCC_I", "C_NN", "WFT", "WFT_S"})
    CHECK(parse_problem(n)->name() == n);
  CHECK(parse_problem("bar(C_N)")->name() == "bar(C_N)");
  CHECK(variant_of(parse_problem("bar(C_N)")) == Variant::completion);
  CHECK(variant_of(parse_problem("T(C_2N)")) == Variant::totalization);
  CHECK(parse_problem("bar(C_N)'")->name() == "bar(C_N)'");
  CHECK(parse_problem("WBWT_2")->name() == "WBWT2");
  CHECK_THROWS_AS(parse_problem("C_Q"), std::invalid_argument);
  CHECK_THROWS_AS(parse_problem("bar(LPO"), std::invalid_argument);
}
