#include <catch_amalgamated.hpp>

#include "support.hpp"
#include "tmc/eval.hpp"
#include "tmc/oracle.hpp"

using namespace tmc;
using tmc::testing::fixture;
using tmc::testing::Rng;

namespace {

FormulaPtr atom_of(const char* text) { return core::atom(parse_constraint(text).conjuncts.at(0)); }

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

FiniteLts a_loop() {
  FiniteLts m;
  m.names = {"q"};
  m.labels = {{"p"}};
  m.transitions = {{0, "a", 0}};
  m.initial = {0};
  return m;
}

}  // namespace

TEST_CASE("point oracle examples") {
  const TimedAutomaton unbounded = load_ta(fixture("unbounded.ta"));
  const ConcreteState zero = parse_state(unbounded, "l:x=0");
  CHECK(point_check(unbounded, core::exists_rel(atom_of("x <= 0"), atom_of("x > 0")), zero));
  CHECK_FALSE(strict_until_check(unbounded, atom_of("x <= 0"), atom_of("x > 0"), zero));
  CHECK(point_check(unbounded, core::tt(), zero));
  CHECK(point_check(unbounded, core::tt(), parse_state(unbounded, "l:x=9/4")));

  CHECK(strict_until_check(unbounded, atom_of("x < 1"), atom_of("x >= 1"), zero));
  CHECK_FALSE(strict_until_check(unbounded, atom_of("x < 1"), atom_of("x > 1"), zero));
  CHECK_FALSE(point_check(unbounded, core::exists_rel(atom_of("x < 1"), atom_of("x > 1")), zero));
  CHECK(point_check(unbounded, core::exists_rel(atom_of("x <= 1"), atom_of("x > 1")), zero));
  CHECK_FALSE(strict_until_check(unbounded, atom_of("x <= 1"), atom_of("x > 1"), zero));

  CHECK_THROWS_AS(point_check(unbounded, core::mu("X", core::var("X")), zero), UnsupportedFormula);
}

TEST_CASE("freeze and delays in the oracle") {
  const TimedAutomaton open_bound = load_ta(fixture("open_bound.ta"));
  const TimedAutomaton closed_bound = load_ta(fixture("closed_bound.ta"));
  const FormulaPtr reach_one = core::exists(core::land(atom_of("x <= 1"), atom_of("x >= 1")));
  CHECK(point_check(closed_bound, reach_one, parse_state(closed_bound, "l2:x=0")));
  CHECK_FALSE(point_check(open_bound, reach_one, parse_state(open_bound, "l1:x=0")));

  const FormulaPtr one_later = core::freeze("z", core::exists(core::land(atom_of("z <= 1"), atom_of("z >= 1"))));
  CHECK(point_check(closed_bound, one_later, parse_state(closed_bound, "l2:x=0")));
  CHECK_FALSE(point_check(closed_bound, one_later, parse_state(closed_bound, "l2:x=1/3")));
  CHECK_THROWS_AS(point_check(closed_bound, atom_of("z < 1"), parse_state(closed_bound, "l2:x=0")), DomainError);
}

TEST_CASE("candidate delays") {
  const std::vector<Rational> got = candidate_delays(Valuation({{"x", q(1, 2)}}), 1);
  CHECK(got == std::vector<Rational>{q(0), q(1, 4), q(1, 2), q(1), q(3, 2), q(5, 2)});
  const std::vector<Rational> two = candidate_delays(Valuation({{"x", q(0)}, {"y", q(1, 3)}}), 0);
  CHECK(two == std::vector<Rational>{q(0), q(1, 3), q(2, 3), q(5, 6), q(1), q(2)});
}

TEST_CASE("strict until implies the non-strict one") {
  Rng rng(81);
  for (int i = 0; i < 200; ++i) {
    const TimedAutomaton ta = testing::random_ta(rng);
    const std::vector<ClockName> clocks(ta.clocks.begin(), ta.clocks.end());
    const FormulaPtr g1 = testing::random_timed_formula(rng, clocks, 2, 2);
    const FormulaPtr g2 = testing::random_timed_formula(rng, clocks, 2, 2);
    const ConcreteState s = testing::random_state(rng, ta, 3);
    if (strict_until_check(ta, g1, g2, s)) CHECK(point_check(ta, core::exists_rel(g1, g2), s));
  }
}

TEST_CASE("untimed evaluator examples") {
  const FiniteLts m = a_loop();
  const FormulaPtr body = core::diamond(ActionSet::of({"a"}), core::var("X"));
  CHECK(untimed_eval(m, core::mu("X", body)).empty());
  CHECK(untimed_eval(m, core::nu("X", body)) == LtsStates{0});
  CHECK(untimed_eval(m, core::prop("p")) == LtsStates{0});
  CHECK(untimed_eval(m, core::prop("q")).empty());
  CHECK(untimed_eval(m, core::var("Y"), {{"Y", {0}}}) == LtsStates{0});
  CHECK_THROWS_AS(untimed_eval(m, atom_of("x < 1")), UnsupportedFormula);
  CHECK_THROWS_AS(untimed_eval(m, core::exists(core::tt())), UnsupportedFormula);
}

TEST_CASE("untimed formulas transfer to the embedded automaton") {
  Rng rng(82);
  for (int i = 0; i < 150; ++i) {
    const FiniteLts m = testing::random_lts(rng);
    TimedAutomaton ta = lts_to_ta(m);
    ta.propositions = {"p", "q"};
    const FormulaPtr f = testing::random_untimed_formula(rng, 4);
    INFO(print(f));
    const RegionAutomaton ra = RegionAutomaton::build_relativized(ta, f);
    const StateSet set = eval(f, ra);
    const LtsStates expected = untimed_eval(m, f);
    for (std::size_t s = 0; s < m.size(); ++s) {
      const ConcreteState at(ta, s, Valuation::zero({"x"}));
      CHECK(ra.contains_concretization(set, at) == expected.contains(s));
    }
  }
}
