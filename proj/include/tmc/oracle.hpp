#pragma once

// Reference semantics used to cross-check the region evaluator: a concrete
// point checker for fixpoint-free formulas over rational states, and a plain
// mu-calculus evaluator for finite labelled transition systems.

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "tmc/automaton.hpp"
#include "tmc/logic.hpp"

namespace tmc {

class UnsupportedFormula : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Delays after which some clock of v reaches an integer in [0, d + 1], the
// midpoints between consecutive ones, 0, and one value past the largest.
// Sorted and duplicate-free.
std::vector<Rational> candidate_delays(const Valuation& v, unsigned d);

// Truth of a fixpoint-free closed formula at a concrete state. Clocks of the
// formula that the state does not carry are bound by freeze before use, or
// the call throws DomainError.
bool point_check(const TimedAutomaton& ta, const FormulaPtr& f, const ConcreteState& s);

// phi1 ~>'_s phi2: some delay reaches phi2 with phi1 holding at every strictly
// earlier delay. Not expressible in the core calculus.
bool strict_until_check(const TimedAutomaton& ta, const FormulaPtr& phi1, const FormulaPtr& phi2,
                        const ConcreteState& s);

using LtsStates = std::set<std::size_t>;
using LtsEnvironment = std::map<VarName, LtsStates>;

// Only lit, prop, var, not, or, diamond and mu nodes.
LtsStates untimed_eval(const FiniteLts& m, const FormulaPtr& f, const LtsEnvironment& env = {});

}  // namespace tmc
