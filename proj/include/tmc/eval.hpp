#pragma once

// Symbolic evaluation of core formulas over a region automaton, and the
// end-to-end `check` pipeline.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmc/logic.hpp"
#include "tmc/region_automaton.hpp"
#include "tmc/translate.hpp"

namespace tmc {

// A formula that is well-formed but cannot be evaluated on the given
// automaton: unknown clock or proposition, bound too large, free variable,
// non-monotone binder.
class SemanticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every set is over the same region automaton as the evaluation.
using Environment = std::map<VarName, StateSet>;

// Throws SemanticError on any precondition violation.
StateSet eval(const FormulaPtr& f, const RegionAutomaton& ra, const Environment& env = {});

struct PointAnswer {
  ConcreteState state;
  StateId abstract;
  bool holds;
};

struct Verdict {
  std::shared_ptr<const RegionAutomaton> ra;
  FormulaPtr formula;
  StateSet full;
  std::vector<std::pair<StateId, bool>> initial_holds;
  std::vector<PointAnswer> points;

  bool holds_initially() const;
};

struct CheckOptions {
  TctlVariant variant = TctlVariant::general;
  ClockPolicy policy = ClockPolicy::shared;
};

// Parse, translate, build the relativized region automaton and evaluate.
// Point states are given as `loc:x=N/D,...` over the automaton clocks; formula
// clocks are read as 0, which does not matter for closed formulas.
Verdict check(const TimedAutomaton& ta, std::string_view text, Logic logic,
              const std::vector<std::string>& points = {}, const CheckOptions& options = {});

// Table with one line per state plus initial and point verdicts.
std::string render_text(const TimedAutomaton& ta, const Verdict& v);
// JSON object keyed by location and printed region.
std::string render_structured(const TimedAutomaton& ta, const Verdict& v);

}  // namespace tmc
