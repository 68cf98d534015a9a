#include <catch_amalgamated.hpp>

#include <map>

#include "support.hpp"
#include "tmc/eval.hpp"
#include "tmc/translate.hpp"

using namespace tmc;
using tmc::testing::fixture;
using tmc::testing::Rng;

namespace {

FormulaPtr atom_of(const char* text) { return core::atom(parse_constraint(text).conjuncts.at(0)); }

StateSet eval_closed(const TimedAutomaton& ta, const FormulaPtr& f) {
  return eval(f, RegionAutomaton::build_relativized(ta, f));
}

bool all_states(const StateSet& s) { return s.all(); }

void collect_freezes(const FormulaPtr& f, std::map<ClockName, std::set<const Formula*>>& out) {
  if (f->kind == Kind::freeze) out[f->name].insert(f.get());
  if (f->lhs) collect_freezes(f->lhs, out);
  if (f->rhs) collect_freezes(f->rhs, out);
}

}  // namespace

TEST_CASE("L_nu and L_mu,nu translations") {
  const FormulaPtr eq = core::land(atom_of("x <= 1"), atom_of("x >= 1"));
  CHECK(structurally_equal(translate(parse("exists x = 1", Logic::lnu)), core::exists_rel(core::tt(), eq)));
  CHECK(print(translate(parse("forall (x<1)", Logic::lnu))) == "(!(E{tt}(!x<1)))");
  CHECK(structurally_equal(translate(parse("nu Y.[a]Y", Logic::lnu)), desugar(parse("nu Y.[a]Y", Logic::lrel))));
  CHECK(structurally_equal(translate(parse("forall p", Logic::lmunu)), core::forall_rel(core::ff(), core::prop("p"))));
}

TEST_CASE("L_c translation") {
  const FormulaPtr strict = translate(parse("(x<=0) ~s (x>0)", Logic::lc));
  CHECK(structurally_equal(strict, core::exists_rel(atom_of("x <= 0"), atom_of("x > 0"))));
  const FormulaPtr weak = translate(parse("p ~w q", Logic::lc));
  CHECK(structurally_equal(weak, core::lor(core::exists_rel(core::prop("p"), core::prop("q")),
                                           core::forall_rel(core::ff(), core::prop("p")))));
  CHECK(structurally_equal(translate(parse("tt ~s tt", Logic::lc)), core::exists_rel(core::tt(), core::tt())));
}

TEST_CASE("T_mu translation") {
  const FormulaPtr either = core::lor(core::tt(), core::prop("p"));
  const FormulaPtr expected =
      core::exists_rel(either, core::land(either, core::diamond(ActionSet::everything(), core::prop("p"))));
  CHECK(structurally_equal(translate(parse("tt |> p", Logic::tmu)), expected));

  const FormulaPtr rec = translate(parse("mu Y.(p | (tt |> Y))", Logic::tmu));
  CHECK_FALSE(validate_monotone(rec));
  CHECK(free_vars(rec).empty());

  const FormulaPtr zero = core::land(atom_of("x <= 0"), atom_of("x >= 0"));
  const FormulaPtr z_or = core::lor(zero, core::ff());
  CHECK(structurally_equal(translate(parse("(x=0) |> ff", Logic::tmu)),
                           core::exists_rel(z_or, core::land(z_or, core::diamond(ActionSet::everything(), core::ff())))));
}

TEST_CASE("time stopping, au and divergence on the fixtures") {
  const TimedAutomaton unbounded = load_ta(fixture("unbounded.ta"));
  const TimedAutomaton zeno = load_ta(fixture("zeno.ta"));
  const TimedAutomaton open_bound = load_ta(fixture("open_bound.ta"));
  for (ClockPolicy policy : {ClockPolicy::shared, ClockPolicy::fresh}) {
    FreshClockPool pool({"x"}, policy);
    const FormulaPtr ts = ts_formula(pool);
    CHECK(eval_closed(unbounded, ts).none());
    CHECK(all_states(eval_closed(open_bound, ts)));
    CHECK(all_states(eval_closed(open_bound, au_template(core::tt(), core::ff(), pool))));

    const FormulaPtr tdiv = tdiv_formula(pool);
    CHECK(all_states(eval_closed(unbounded, tdiv)));
    CHECK(all_states(eval_closed(zeno, tdiv)));
    CHECK(eval_closed(open_bound, tdiv).none());
  }
}

TEST_CASE("translation examples for timelock-free non-Zeno automata") {
  const ActionSet all = ActionSet::everything();
  {
    FreshClockPool pool;
    const SurfaceFormula af = parse("AF(x>=1)", Logic::tctl);
    const FormulaPtr got = embed_tn(expand_derived(af.root), pool);
    FreshClockPool ref;
    const VarName x = ref.variable();
    const FormulaPtr want = core::mu(x, au_template(core::land(core::tt(), core::box(all, core::var(x))), atom_of("x >= 1"), ref));
    CHECK(structurally_equal(got, want));
  }
  {
    FreshClockPool pool;
    const FormulaPtr got = embed_tn(expand_derived(parse("EF(p)", Logic::tctl).root), pool);
    const FormulaPtr want = core::mu(
        "_X0", core::exists_rel(core::tt(), core::lor(core::prop("p"), core::land(core::tt(), core::diamond(all, core::var("_X0"))))));
    CHECK(structurally_equal(got, want));
  }
  FreshClockPool pool;
  CHECK(structurally_equal(embed_tn(parse("p", Logic::tctl).root, pool), core::prop("p")));
}

TEST_CASE("general translation separates Zeno behaviour") {
  const TimedAutomaton zeno = load_ta(fixture("zeno.ta"));
  CHECK(check(zeno, "AF(x>=1)", Logic::tctl, {"l:x=0"}).points.at(0).holds);
  CHECK_FALSE(check(zeno, "AF(x>=1)", Logic::tctl, {"l:x=0"}, {.variant = TctlVariant::n}).points.at(0).holds);

  FreshClockPool pool({"x"});
  const FormulaPtr n_au = embed_n_au(core::tt(), atom_of("x >= 1"), pool);
  const RegionAutomaton ra = RegionAutomaton::build_relativized(zeno, n_au);
  CHECK_FALSE(ra.contains_concretization(eval(n_au, ra), ConcreteState(zeno, 0, Valuation::zero(ra.clocks()))));

  const TimedAutomaton open_bound = load_ta(fixture("open_bound.ta"));
  CHECK(check(open_bound, "EF(tt)", Logic::tctl).full.none());
}

TEST_CASE("variants agree on the non-Zeno fixture") {
  const TimedAutomaton nonzeno = load_ta(fixture("nonzeno.ta"));
  Rng rng(61);
  for (int i = 0; i < 60; ++i) {
    const std::string text = print(testing::random_tctl(rng, 3));
    INFO(text);
    const std::vector<std::string> points{"l:x=0", "l:x=1/2", "l:x=1", "l:x=7/3"};
    const Verdict general = check(nonzeno, text, Logic::tctl, points);
    const Verdict tn = check(nonzeno, text, Logic::tctl, points, {.variant = TctlVariant::tn});
    const Verdict n = check(nonzeno, text, Logic::tctl, points, {.variant = TctlVariant::n});
    for (std::size_t k = 0; k < points.size(); ++k) {
      CHECK(general.points[k].holds == tn.points[k].holds);
      CHECK(n.points[k].holds == tn.points[k].holds);
    }
  }
}

TEST_CASE("translations are closed and monotone") {
  Rng rng(62);
  for (int i = 0; i < 300; ++i) {
    const SurfacePtr tctl = testing::random_tctl(rng, 3);
    for (TctlVariant variant : {TctlVariant::general, TctlVariant::tn, TctlVariant::n})
      for (ClockPolicy policy : {ClockPolicy::shared, ClockPolicy::fresh}) {
        const FormulaPtr f = translate({Logic::tctl, tctl}, {.variant = variant, .policy = policy, .avoid = {"x"}});
        INFO(print(tctl));
        CHECK_FALSE(validate_monotone(f));
        CHECK(free_vars(f).empty());
        CHECK(free_clocks(f).size() <= 1);
      }
    const SurfacePtr tmu = testing::random_tmu(rng, 4);
    const FormulaPtr g = translate({Logic::tmu, tmu});
    INFO(print(tmu));
    CHECK_FALSE(validate_monotone(g));
    CHECK(free_vars(g).empty());
  }
}

TEST_CASE("fresh policy never reuses a reserved clock") {
  Rng rng(63);
  for (int i = 0; i < 300; ++i) {
    const SurfacePtr tctl = testing::random_tctl(rng, 3);
    const FormulaPtr f = translate({Logic::tctl, tctl}, {.policy = ClockPolicy::fresh, .avoid = {"x"}});
    std::map<ClockName, std::set<const Formula*>> binders;
    collect_freezes(f, binders);
    for (const auto& [clock, nodes] : binders) CHECK(nodes.size() == 1);
    CHECK_FALSE(binders.contains("x"));
  }
}

TEST_CASE("shared and fresh clocks give the same verdicts") {
  Rng rng(64);
  int compared = 0;
  for (int i = 0; i < 200 && compared < 40; ++i) {
    const TimedAutomaton ta = testing::random_ta(rng, 2, 1, 1);
    const SurfacePtr tctl = testing::random_tctl(rng, 2);
    for (TctlVariant variant : {TctlVariant::general, TctlVariant::tn}) {
      const FormulaPtr fresh = translate({Logic::tctl, tctl}, {.variant = variant, .policy = ClockPolicy::fresh, .avoid = {"x"}});
      if (formula_clocks(fresh).size() > 2) continue;
      std::vector<std::string> points;
      for (int k = 0; k < 10; ++k) points.push_back(to_string(ta, testing::random_state(rng, ta, 2)));
      const std::string text = print(tctl);
      INFO(text);
      const Verdict a = check(ta, text, Logic::tctl, points, {.variant = variant, .policy = ClockPolicy::shared});
      const Verdict b = check(ta, text, Logic::tctl, points, {.variant = variant, .policy = ClockPolicy::fresh});
      for (std::size_t k = 0; k < points.size(); ++k) CHECK(a.points[k].holds == b.points[k].holds);
      ++compared;
    }
  }
  CHECK(compared >= 40);
}

TEST_CASE("au identity") {
  Rng rng(65);
  for (int i = 0; i < 120; ++i) {
    const TimedAutomaton ta = testing::random_ta(rng);
    const std::vector<ClockName> clocks(ta.clocks.begin(), ta.clocks.end());
    const FormulaPtr g1 = testing::random_timed_formula(rng, clocks, 2, 3);
    const FormulaPtr g2 = testing::random_timed_formula(rng, clocks, 2, 3);
    FreshClockPool pool({"x", "y", "z"});
    const FormulaPtr au = au_template(g1, g2, pool);
    const FormulaPtr rhs = core::land(core::exists(ts_formula(pool)), core::forall_rel(core::ff(), g1));
    const FormulaPtr all = core::lor(au, core::lor(core::exists_rel(g1, g2), rhs));
    const RegionAutomaton ra = RegionAutomaton::build_relativized(ta, all);
    INFO(print(g1) << " / " << print(g2));
    CHECK(eval(au, ra) == (eval(core::exists_rel(g1, g2), ra) | eval(rhs, ra)));
  }
}

TEST_CASE("trigger collapses without action edges") {
  Rng rng(66);
  const TimedAutomaton open_bound = load_ta(fixture("open_bound.ta"));
  const TimedAutomaton closed_bound = load_ta(fixture("closed_bound.ta"));
  for (int i = 0; i < 50; ++i) {
    const SurfacePtr f = surface::binary(Op::trigger, testing::random_tmu(rng, 3, false), testing::random_tmu(rng, 3, false));
    const FormulaPtr core = translate({Logic::tmu, f});
    INFO(print(f));
    CHECK(eval_closed(open_bound, core).none());
    CHECK(eval_closed(closed_bound, core).none());
  }
}
