#include "tmc/oracle.hpp"

#include <algorithm>
#include <ranges>

namespace tmc {

std::vector<Rational> candidate_delays(const Valuation& v, unsigned d) {
  std::vector<Rational> hits{Rational(0)};
  for (const auto& value : v.values() | std::views::values)
    for (unsigned k = 0; k <= d + 1; ++k)
      if (Rational(k) >= value) hits.push_back(Rational(k) - value);
  std::ranges::sort(hits);
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  std::vector<Rational> out;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    out.push_back(hits[i]);
    if (i + 1 < hits.size()) out.push_back((hits[i] + hits[i + 1]) / 2);
  }
  out.push_back(hits.back() + 1);
  return out;
}

namespace {

class PointChecker {
 public:
  PointChecker(const TimedAutomaton& ta, unsigned d) : ta_(ta), d_(d) {}

  bool holds(const FormulaPtr& f, const ConcreteState& s) const {
    switch (f->kind) {
      case Kind::lit: return f->value;
      case Kind::prop: return ta_.locations.at(s.location()).props.contains(f->name);
      case Kind::atom: return satisfies(s.valuation(), f->atom);
      case Kind::not_: return !holds(f->lhs, s);
      case Kind::or_: return holds(f->lhs, s) || holds(f->rhs, s);
      case Kind::diamond:
        for (const auto& a : ta_.sigma()) {
          if (!f->actions.contains(a)) continue;
          for (const auto& next : concrete_step(ta_, s, a))
            if (holds(f->lhs, next)) return true;
        }
        return false;
      case Kind::exists_rel: return until(f->lhs, f->rhs, s, false);
      case Kind::freeze: return holds(f->lhs, ConcreteState(ta_, s.location(), s.valuation().with(f->name, 0)));
      case Kind::var:
      case Kind::mu: throw UnsupportedFormula("the point checker does not handle fixpoints or variables");
    }
    return false;
  }

  // Candidates alternate between boundary delays (even index) and
  // representatives of the open interval that follows (odd index); truth is
  // constant on each interval. A witness inside an open interval also needs
  // `rel` on the part of that interval before it when strict.
  bool until(const FormulaPtr& rel, const FormulaPtr& goal, const ConcreteState& s, bool strict) const {
    const auto delays = candidate_delays(s.valuation(), d_);
    bool earlier = true;
    for (std::size_t i = 0; i < delays.size() && earlier; ++i) {
      auto moved = concrete_delay(ta_, s, delays[i]);
      if (!moved) break;
      const bool here_rel = holds(rel, *moved);
      const bool here_goal = holds(goal, *moved);
      if (here_goal && (!strict || i % 2 == 0 || here_rel)) return true;
      earlier = here_rel || (!strict && here_goal);
    }
    return false;
  }

 private:
  const TimedAutomaton& ta_;
  unsigned d_;
};

void require_fixpoint_free(const FormulaPtr& f) {
  if (has_fixpoint(f)) throw UnsupportedFormula("the point checker does not handle fixpoints or variables");
}

}  // namespace

bool point_check(const TimedAutomaton& ta, const FormulaPtr& f, const ConcreteState& s) {
  require_fixpoint_free(f);
  return PointChecker(ta, std::max(formula_bound(f), ta_bound(ta))).holds(f, s);
}

bool strict_until_check(const TimedAutomaton& ta, const FormulaPtr& phi1, const FormulaPtr& phi2,
                        const ConcreteState& s) {
  require_fixpoint_free(phi1);
  require_fixpoint_free(phi2);
  unsigned d = std::max({formula_bound(phi1), formula_bound(phi2), ta_bound(ta)});
  return PointChecker(ta, d).until(phi1, phi2, s, true);
}

LtsStates untimed_eval(const FiniteLts& m, const FormulaPtr& f, const LtsEnvironment& env) {
  LtsStates out;
  switch (f->kind) {
    case Kind::lit:
      if (f->value)
        for (std::size_t q = 0; q < m.size(); ++q) out.insert(q);
      return out;
    case Kind::prop:
      for (std::size_t q = 0; q < m.size(); ++q)
        if (m.labels.at(q).contains(f->name)) out.insert(q);
      return out;
    case Kind::var: {
      auto it = env.find(f->name);
      if (it == env.end()) throw UnsupportedFormula("free variable '" + f->name + "' has no value");
      return it->second;
    }
    case Kind::not_: {
      LtsStates inner = untimed_eval(m, f->lhs, env);
      for (std::size_t q = 0; q < m.size(); ++q)
        if (!inner.contains(q)) out.insert(q);
      return out;
    }
    case Kind::or_:
      out = untimed_eval(m, f->lhs, env);
      out.merge(untimed_eval(m, f->rhs, env));
      return out;
    case Kind::diamond: {
      LtsStates inner = untimed_eval(m, f->lhs, env);
      for (const auto& t : m.transitions)
        if (f->actions.contains(t.action) && inner.contains(t.target)) out.insert(t.source);
      return out;
    }
    case Kind::mu: {
      LtsEnvironment local = env;
      for (;;) {
        local[f->name] = out;
        LtsStates next = untimed_eval(m, f->lhs, local);
        if (next == out) return out;
        out = std::move(next);
      }
    }
    case Kind::atom:
    case Kind::exists_rel:
    case Kind::freeze: throw UnsupportedFormula("untimed evaluation does not handle clocks or time modalities");
  }
  return out;
}

}  // namespace tmc
