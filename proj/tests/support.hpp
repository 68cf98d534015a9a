#pragma once

// Seeded random generators and small reference helpers shared by the tests.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "tmc/automaton.hpp"
#include "tmc/clocks.hpp"
#include "tmc/logic.hpp"
#include "tmc/regions.hpp"

namespace tmc::testing {

using Rng = std::mt19937_64;

inline std::string fixture(const std::string& name) { return std::string(TMC_FIXTURES) + "/" + name; }

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
  return xs.at(static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(xs.size()) - 1)));
}

inline Rel random_rel(Rng& rng) { return pick(rng, std::vector<Rel>{Rel::lt, Rel::le, Rel::gt, Rel::ge}); }

// Values up to `max` with small denominators; integers and shared fractional
// parts are frequent so that boundary cases come up.
inline Rational random_rational(Rng& rng, int max) {
  const int den = pick(rng, std::vector<int>{1, 1, 2, 3, 4, 5, 7});
  Rational r(uniform(rng, 0, max * den), den);
  r.canonicalize();
  return r;
}

inline Valuation random_valuation(Rng& rng, const ClockNames& clocks, int max) {
  Valuation v;
  for (const auto& c : clocks) v = v.with(c, random_rational(rng, max));
  return v;
}

inline AtomicConstraint random_atom(Rng& rng, const std::vector<ClockName>& clocks, unsigned d, bool diagonals = true) {
  const ClockName& x = pick(rng, clocks);
  const unsigned c = static_cast<unsigned>(uniform(rng, 0, static_cast<int>(d)));
  if (diagonals && clocks.size() > 1 && coin(rng, 0.25)) {
    ClockName y = x;
    while (y == x) y = pick(rng, clocks);
    return AtomicConstraint::diagonal(x, y, random_rel(rng), c);
  }
  return AtomicConstraint::single(x, random_rel(rng), c);
}

// Random automaton: locations l0.., clocks drawn from {x, y}, actions {a, b},
// propositions {p, q}. Invariants are upper bounds so that time-successor
// closure is interesting; l0 is initial.
inline TimedAutomaton random_ta(Rng& rng, int max_locations = 3, int max_clocks = 2, unsigned d = 2) {
  TimedAutomaton ta;
  ta.name = "random";
  const int nclocks = uniform(rng, 1, max_clocks);
  std::vector<ClockName> clocks;
  for (int i = 0; i < nclocks; ++i) clocks.push_back(i == 0 ? "x" : "y");
  ta.clocks = ClockNames(clocks.begin(), clocks.end());
  ta.propositions = {"p", "q"};
  const int nloc = uniform(rng, 1, max_locations);
  for (int l = 0; l < nloc; ++l) {
    Location loc;
    loc.name = "l" + std::to_string(l);
    loc.initial = l == 0;
    if (coin(rng, 0.4)) {
      const Rel rel = coin(rng) ? Rel::le : Rel::lt;
      const unsigned c = static_cast<unsigned>(uniform(rng, rel == Rel::lt ? 1 : 0, static_cast<int>(d)));
      loc.invariant = ClockConstraint::of(AtomicConstraint::single(pick(rng, clocks), rel, c));
    }
    if (coin(rng)) loc.props.insert("p");
    if (coin(rng)) loc.props.insert("q");
    ta.locations.push_back(loc);
  }
  const int nedges = uniform(rng, 0, 2 * nloc);
  for (int e = 0; e < nedges; ++e) {
    Edge edge;
    edge.source = static_cast<std::size_t>(uniform(rng, 0, nloc - 1));
    edge.target = static_cast<std::size_t>(uniform(rng, 0, nloc - 1));
    edge.action = coin(rng) ? "a" : "b";
    if (coin(rng, 0.6)) edge.guard = ClockConstraint::of(random_atom(rng, clocks, d));
    for (const auto& c : clocks)
      if (coin(rng, 0.4)) edge.resets.insert(c);
    ta.edges.push_back(edge);
  }
  return ta;
}

// A concrete state of `ta` with a random valuation satisfying the invariant;
// extra clocks get random values as well.
inline ConcreteState random_state(Rng& rng, const TimedAutomaton& ta, int max, const ClockNames& extra = {}) {
  ClockNames all = ta.clocks;
  all.insert(extra.begin(), extra.end());
  for (;;) {
    const auto l = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(ta.locations.size()) - 1));
    Valuation v = random_valuation(rng, all, max);
    if (satisfies(v, ta.locations[l].invariant)) return ConcreteState(ta, l, v);
  }
}

// Fixpoint-free closed core formula over p, q, the given clocks and one
// formula clock `z` that only occurs under a freeze for it.
inline FormulaPtr random_timed_formula(Rng& rng, const std::vector<ClockName>& clocks, unsigned d, int depth,
                                       bool z_bound = false) {
  std::vector<ClockName> usable = clocks;
  if (z_bound) usable.push_back("z");
  if (depth == 0 || coin(rng, 0.2)) {
    switch (uniform(rng, 0, 3)) {
      case 0: return core::lit(coin(rng));
      case 1: return core::prop(coin(rng) ? "p" : "q");
      default: return core::atom(random_atom(rng, usable, d));
    }
  }
  auto sub = [&] { return random_timed_formula(rng, clocks, d, depth - 1, z_bound); };
  auto actions = [&] {
    switch (uniform(rng, 0, 2)) {
      case 0: return ActionSet::everything();
      case 1: return ActionSet::of({"a"});
      default: return ActionSet::of({"b"});
    }
  };
  switch (uniform(rng, 0, 8)) {
    case 0: return core::neg(sub());
    case 1: return core::lor(sub(), sub());
    case 2: return core::land(sub(), sub());
    case 3: return core::diamond(actions(), sub());
    case 4: return core::box(actions(), sub());
    case 5: return core::exists_rel(sub(), sub());
    case 6: return core::forall_rel(sub(), sub());
    case 7: return core::freeze("z", random_timed_formula(rng, clocks, d, depth - 1, true));
    default: return coin(rng) ? core::exists(sub()) : core::forall(sub());
  }
}

// Untimed formula in positive form over p, q, actions a, b, with mu and nu
// binders; variables occur only positively, so the result is monotone.
// Binder names are unique within the formula.
inline FormulaPtr random_untimed_formula(Rng& rng, int depth, std::vector<VarName> bound, int& binders) {
  if (depth == 0 || coin(rng, 0.15)) {
    const int choice = uniform(rng, 0, bound.empty() ? 2 : 4);
    if (choice >= 3) return core::var(pick(rng, bound));
    if (choice == 0) return core::lit(coin(rng));
    FormulaPtr p = core::prop(coin(rng) ? "p" : "q");
    return coin(rng) ? p : core::neg(p);
  }
  auto sub = [&] { return random_untimed_formula(rng, depth - 1, bound, binders); };
  auto actions = [&] {
    switch (uniform(rng, 0, 2)) {
      case 0: return ActionSet::everything();
      case 1: return ActionSet::of({"a"});
      default: return ActionSet::of({"b"});
    }
  };
  switch (uniform(rng, 0, 5)) {
    case 0: return core::lor(sub(), sub());
    case 1: return core::land(sub(), sub());
    case 2: return core::diamond(actions(), sub());
    case 3: return core::box(actions(), sub());
    default: {
      VarName y = "X" + std::to_string(binders++);
      bound.push_back(y);
      FormulaPtr body = random_untimed_formula(rng, depth - 1, bound, binders);
      return coin(rng) ? core::mu(y, body) : core::nu(y, body);
    }
  }
}

inline FormulaPtr random_untimed_formula(Rng& rng, int depth) {
  int binders = 0;
  return random_untimed_formula(rng, depth, {}, binders);
}

// Finite LTS with up to `max_states` states over actions {a, b} and
// propositions {p, q}.
inline FiniteLts random_lts(Rng& rng, int max_states = 5) {
  FiniteLts m;
  const int n = uniform(rng, 1, max_states);
  for (int q = 0; q < n; ++q) {
    m.names.push_back("q" + std::to_string(q));
    Props props;
    if (coin(rng)) props.insert("p");
    if (coin(rng)) props.insert("q");
    m.labels.push_back(props);
  }
  const int nt = uniform(rng, 0, 2 * n);
  for (int t = 0; t < nt; ++t)
    m.transitions.push_back({static_cast<std::size_t>(uniform(rng, 0, n - 1)), coin(rng) ? "a" : "b",
                             static_cast<std::size_t>(uniform(rng, 0, n - 1))});
  m.initial = {0};
  return m;
}

// TCTL surface formula over p and atoms on x with constants up to d.
inline SurfacePtr random_tctl(Rng& rng, int depth, unsigned d = 1) {
  using namespace surface;
  if (depth == 0 || coin(rng, 0.2)) {
    switch (uniform(rng, 0, 2)) {
      case 0: return leaf(coin(rng) ? Op::tt : Op::ff);
      case 1: return leaf(Op::prop, "p");
      default: return atom(AtomicConstraint::single("x", random_rel(rng), static_cast<unsigned>(uniform(rng, 0, static_cast<int>(d)))));
    }
  }
  auto sub = [&] { return random_tctl(rng, depth - 1, d); };
  const Op binaries[] = {Op::or_, Op::and_, Op::eu, Op::au, Op::er, Op::ar};
  const Op unaries[] = {Op::not_, Op::ef, Op::af, Op::eg, Op::ag};
  if (coin(rng)) return binary(binaries[uniform(rng, 0, 5)], sub(), sub());
  return unary(unaries[uniform(rng, 0, 4)], sub());
}

// Delays at which some clock of v crosses an integer up to d + 1, plus the
// midpoints between them and one delay beyond: one per region on the chain.
inline std::vector<Rational> crossing_delays(const Valuation& v, unsigned d) {
  std::set<Rational> points{Rational(0)};
  for (const auto& [c, value] : v.values())
    for (unsigned k = 0; k <= d + 1; ++k)
      if (Rational(k) >= value) points.insert(Rational(k) - value);
  std::vector<Rational> sorted(points.begin(), points.end());
  std::vector<Rational> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out.push_back(sorted[i]);
    if (i + 1 < sorted.size()) out.push_back((sorted[i] + sorted[i + 1]) / 2);
  }
  out.push_back(sorted.back() + 1);
  return out;
}

// Random T_mu formula over x-atoms with constants up to 1, and p, q when
// `props` is set. Variables only occur under their binder and never below a
// negation.
inline SurfacePtr random_tmu(Rng& rng, int depth, bool props, std::vector<std::string> vars, int& binders) {
  using namespace surface;
  if (depth == 0 || coin(rng, 0.2)) {
    switch (uniform(rng, 0, vars.empty() ? 2 : 3)) {
      case 0: return leaf(coin(rng) ? Op::tt : Op::ff);
      case 1:
        if (props) return leaf(Op::prop, coin(rng) ? "p" : "q");
        [[fallthrough]];
      case 2: return atom(random_atom(rng, {"x"}, 1));
      default: return leaf(Op::var, pick(rng, vars));
    }
  }
  auto sub = [&] { return random_tmu(rng, depth - 1, props, vars, binders); };
  switch (uniform(rng, 0, 6)) {
    case 0: return unary(Op::not_, random_tmu(rng, depth - 1, props, {}, binders));
    case 1: return binary(Op::or_, sub(), sub());
    case 2: return binary(Op::and_, sub(), sub());
    case 3: return unary(Op::freeze, sub(), "z");
    case 4: {
      std::string y = "Y" + std::to_string(binders++);
      vars.push_back(y);
      return unary(Op::mu, random_tmu(rng, depth - 1, props, vars, binders), y);
    }
    default: return binary(Op::trigger, sub(), sub());
  }
}

inline SurfacePtr random_tmu(Rng& rng, int depth, bool props = true) {
  int binders = 0;
  return random_tmu(rng, depth, props, {}, binders);
}

// Freeze nodes by clock. Shared subtrees are one instance, so nodes are
// collected by identity.
// Grid valuations k/(n+1) for k up to (2d+2)(n+1): every region of n clocks
// and bound d has a member on this grid.
inline std::vector<Valuation> grid_valuations(const std::vector<ClockName>& clocks, unsigned d) {
  const int den = static_cast<int>(clocks.size()) + 1;
  const int steps = (2 * static_cast<int>(d) + 2) * den;
  std::vector<Valuation> out{Valuation{}};
  for (const auto& c : clocks) {
    std::vector<Valuation> next;
    for (const auto& v : out)
      for (int k = 0; k <= steps; ++k) next.push_back(v.with(c, Rational(k, den)));
    out = std::move(next);
  }
  return out;
}

}  // namespace tmc::testing
