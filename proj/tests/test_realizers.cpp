#include <algorithm>

#include "doctest.h"
#include "wlab/adversary.hpp"
#include "wlab/constructions.hpp"
#include "wlab/harness.hpp"
#include "wlab/sampling.hpp"

using namespace wlab;

namespace {

NameStream ep(const char* s) { return NameStream::parse(s); }

// Minimal reference for SORT and the other limit oracles.
std::uint64_t count_zeros(const Word& w) { return static_cast<std::uint64_t>(std::count(w.begin(), w.end(), 0)); }

Word prefix_of(const Word& w, std::size_t n) { return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n)); }

}  // namespace

TEST_CASE("run and run_ep on plain maps") {
  RunResult r = run_ep(*identity_machine(), ep(";1,2"));
  REQUIRE(r.kind == RunResult::Kind::infinite);
  CHECK(r.output == ep(";1,2"));

  RunResult m = run_ep(*minus_one_machine(), ep("2,0,4,1;0"));
  REQUIRE(m.kind == RunResult::Kind::finite);
  CHECK(m.finite_output == Word{1, 3, 0});
  CHECK(run(*minus_one_machine(), ep("2,0,4,1;0"), 10) == Word{1, 3, 0});
}

TEST_CASE("run_ep certificates agree with brute unfolding") {
  Rng rng(11);
  std::vector<std::function<MachinePtr()>> makers = {
      [] { return minus_one_machine(); },
      [] { return retraction_double_completion(Space::naturals()).make(); },
      [] { return compactness_expand().make(); },
      [] { return choice_retraction_finite(3).make(); },
  };
  int certified = 0;
  for (int i = 0; i < 500; ++i) {
    NameStream p = random_ep(rng, 3, 5, 4);
    const auto& make = makers[static_cast<std::size_t>(i) % makers.size()];
    MachinePtr mach = make();
    RunResult r = run_ep(*mach, p);
    REQUIRE(r.kind != RunResult::Kind::no_certificate);
    if (r.kind == RunResult::Kind::infinite) {
      ++certified;
      std::size_t n = r.output.prefix().size() + 3 * r.output.period().size();
      Word raw;
      MachinePtr fresh = make();
      for (std::size_t j = 0; raw.size() < n; ++j) fresh->feed(p.digit(j), raw);
      CHECK(prefix_of(raw, n) == r.output.take(n));
    } else {
      Word raw = run(*make(), p, p.description_size() + 200);
      CHECK(raw == r.finite_output);
    }
  }
  CHECK(certified > 100);
}

TEST_CASE("wiring laws hold observationally") {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    NameStream p = random_ep(rng, 4);
    Word t = run(*retraction_double_completion(Space::naturals()).make(), p, 40);
    CHECK(run(*compose(identity_machine(), retraction_double_completion(Space::naturals()).make()), p, 40) == t);
    CHECK(run(*compose(retraction_double_completion(Space::naturals()).make(), identity_machine()), p, 40) == t);
    Word a = run(*compose(compose(minus_one_machine(), compactness_expand().make()), compactness_compress().make()), p, 40);
    Word b = run(*compose(minus_one_machine(), compose(compactness_expand().make(), compactness_compress().make())), p, 40);
    CHECK(a == b);
    NameStream q = random_ep(rng, 4);
    Word paired = run(*pair_with_id(minus_one_machine()), p, 30);
    Word expected;
    Word mo = run(*minus_one_machine(), p, 30);
    for (std::size_t j = 0; j < mo.size(); ++j) {
      expected.push_back(p.digit(j));
      expected.push_back(mo[j]);
    }
    CHECK(paired == expected);
    Word jx = run(*juxtapose(identity_machine(), identity_machine()), pair(p, q), 40);
    CHECK(jx == pair(p, q).take(40));
  }
}

TEST_CASE("retraction of a double completion") {
  Construction c = retraction_double_completion(Space::naturals());
  RunResult r = run_ep(*c.make(), ep("0,0,3,1;2"));
  REQUIRE(r.kind == RunResult::Kind::infinite);
  CHECK(r.output == ep("2,0;1"));

  Rng rng(3);
  int points = 0;
  for (int i = 0; i < 500; ++i) {
    NameStream p = random_name(c.input, rng);
    Observation in = c.input.decode(p);
    if (!in.is_point()) continue;
    Observation out = c.output.decode(run_ep(*c.make(), p).output);
    REQUIRE(out.is_point());
    if (in.point.is_bottom() && std::get<Bottom>(in.point.value).level == 2) {
      CHECK(out.point == Point::bottom(1));
    } else {
      CHECK(out.point == in.point);
      ++points;
    }
  }
  CHECK(points > 100);
}

TEST_CASE("compactness expand then compress is the identity") {
  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    NameStream p = random_ep(rng, 6);
    Word e = run(*compactness_expand().make(), p, 60);
    Word back;
    MachinePtr m = compactness_compress().make();
    for (Digit d : e) m->feed(d, back);
    REQUIRE(back.size() >= 10);
    CHECK(prefix_of(back, 10) == p.take(10));
    RunResult r = run_ep(*compose(compactness_expand().make(), compactness_compress().make()), p);
    REQUIRE(r.kind == RunResult::Kind::infinite);
    CHECK(r.output == p);
  }
}

TEST_CASE("retraction of bar N changes its mind once") {
  Word raw = run(*retraction_Nbar(), ep("0,0,5;1"), 5);
  CHECK(raw == Word{0, 0, kReset, 4, 4, 4});
  Committed c = after_last_reset(raw);
  CHECK(c.resets == 1);
  CHECK(c.digits == Word{4, 4, 4});
  CHECK(after_last_reset(run(*retraction_Nbar(), ep("3;0"), 4)).resets == 0);
  CHECK(after_last_reset(run(*retraction_Nbar(), ep(";0"), 4)).digits == Word{0, 0, 0, 0});
}

TEST_CASE("limit machines") {
  Rng rng(21);
  ProblemPtr sort = sort_problem();
  for (int i = 0; i < 200; ++i) {
    NameStream p = random_ep(rng, 1, 6, 4);
    Family f = sort_machine()->stage_family(p);
    for (std::size_t s = 0; s < 12; ++s)
      CHECK(f.component(s) == sort_machine()->stage(p.take(s)));
    auto lim = f.limit();
    REQUIRE(lim);
    CHECK(sort->accepts(Point::stream(p), Point::stream(*lim)));

    NameStream q = random_ep(rng, 5);
    Family b = retraction_Bairebar()->stage_family(q);
    for (std::size_t s = 0; s < 12; ++s)
      CHECK(b.component(s) == retraction_Bairebar()->stage(q.take(s)));
    auto blim = b.limit();
    REQUIRE(blim);
    MinusOneResult mo = minus_one(q);
    if (mo.is_finite()) {
      CHECK(*blim == NameStream::periodic(mo.word, {0}));
    } else {
      CHECK(*blim == mo.stream);
    }
  }
  // NEG = LPO(lim q).
  Representation sets = make_space(Space::closed_sets_of(Space::cantor()));
  ProblemPtr n = neg(), l = lpo();
  for (int i = 0; i < 200; ++i) {
    NameStream e = random_name(sets, rng);
    Family f = neg_via_measure()->stage_family(e);
    auto lim = f.limit();
    REQUIRE(lim);
    Point x = sets.decode(e).point;
    CHECK(n->solve(x) == l->solve(Point::stream(*lim)));
  }
}

TEST_CASE("infinity problem witnesses") {
  Rng rng(1);
  for (const char* name : {"inf_to_lpojump", "lpojump_to_inf", "inf_to_neg"}) {
    WitnessPair w = witness_pair(name);
    ReductionReport r = verify_reduction(w, w.samples(rng), rng);
    INFO(r.to_json(false).dump(1));
    CHECK(r.all_pass());
    CHECK(r.inputs > 500);
  }
}

TEST_CASE("stall analysis against a long simulation") {
  for (const auto& p : all_ep_streams(2, 5)) {
    Family f = inf_to_lpojump_family(p);
    auto stall = lpojump_stall(f);
    Word out = run(*lpojump_to_inf().make(), tuple_infinite(f), 3000);
    std::uint64_t z = count_zeros(out);
    if (stall) {
      CHECK(z == *stall);
    } else {
      CHECK(z > 10);
    }
    CHECK(stall.has_value() == !p.infinitely_many_zeros());
  }
}

TEST_CASE("weak Bolzano-Weierstrass through bar(C_N)") {
  Rng rng(2);
  WitnessPair w = wbwt_to_barCN();
  ReductionReport r = verify_reduction(w, w.samples(rng), rng);
  INFO(r.to_json(false).dump(1));
  CHECK(r.all_pass());
  CHECK(r.inputs > 2000);
}

TEST_CASE("choice retractions") {
  Rng rng(4);
  for (const char* name : {"choice_retraction_cantor", "choice_retraction_finite", "conc_retraction_interval",
                           "jump_choice_zero_replace"}) {
    WitnessPair w = witness_pair(name);
    ReductionReport r = verify_reduction(w, w.samples(rng), rng);
    INFO(r.to_json(false).dump(1));
    CHECK(r.all_pass());
  }
}

TEST_CASE("interval retraction freezes at the last consistent pair") {
  Construction c = conc_retraction_interval();
  NameStream p = NameStream::periodic(
      {left_interval_ball(Rational(3, 10)), right_interval_ball(Rational(7, 10)), interval_ball(Rational(1, 2), Rational(1, 4))},
      {0});
  RunResult r = run_ep(*c.make(), p);
  REQUIRE(r.kind == RunResult::Kind::infinite);
  Observation o = c.output.decode(r.output);
  REQUIRE(o.is_point());
  CHECK(std::get<IntervalSet>(o.point.as_set()) == IntervalSet{{{Rational(3, 10), Rational(7, 10)}}});
}

TEST_CASE("projection of the lifted set") {
  CHECK(check_project_lift(Family::parse("0;1|1;0")).ok);
  auto r = check_project_lift(Family::parse("2;0@<1>;0|0,2;1"));
  INFO(r.detail);
  CHECK(r.ok);
  CHECK(r.expected == std::set<Word>{{1, 1, 1, 1}, {0, 2, 1, 1}});
  Rng rng(9);
  for (int i = 0; i < 30; ++i) {
    std::vector<NameStream> lead, per;
    for (std::size_t k = rng() % 3; k > 0; --k) lead.push_back(random_ep(rng, 2, 3, 2));
    for (std::size_t k = 1 + rng() % 2; k > 0; --k) per.push_back(random_ep(rng, 2, 3, 2));
    Family f = Family::eventually(lead, per);
    auto c = check_project_lift(f);
    INFO(f.to_string() << " " << c.detail);
    CHECK(c.ok);
  }
}

TEST_CASE("sabotage is detected") {
  Rng rng(6);
  for (auto w : witness_pairs()) {
    w.K = sabotaged(w.K);
    auto samples = w.samples(rng);
    if (samples.size() > 200) samples.resize(200);
    ReductionReport r = verify_reduction(w, samples, rng);
    INFO(w.name);
    CHECK(r.failed > 0);
  }
  auto c = check_project_lift(Family::parse("0;1|1;0"), 4, [] { return flip_output_bit(std::make_unique<ProjectLiftMachine>()); });
  CHECK_FALSE(c.ok);
}

TEST_CASE("adversary against C_N mind-change solvers") {
  for (std::size_t b = 0; b <= 5; ++b) {
    for (auto make : {cn_fmc_solver, cn_fmc_solver_lazy, cn_fmc_solver_cautious}) {
      MachinePtr m = make();
      AdversaryResult r = adversary_barCN(*m, b);
      INFO(m->name() << " budget " << b);
      CHECK(r.forced_resets >= b + 1);
      CHECK(r.steps <= 10000);
      CHECK_FALSE(r.never_commits);
    }
  }
  AdversaryResult silent = adversary_barCN(*never_committing_machine(), 3);
  CHECK(silent.forced_resets == 0);
  CHECK(silent.never_commits);
  CHECK(silent.flag == "never commits on name of N");
}
