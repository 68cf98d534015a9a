#pragma once

// Region automata of timed automata, optionally relativized to a formula,
// and state sets over them.

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tmc/automaton.hpp"
#include "tmc/logic.hpp"
#include "tmc/regions.hpp"

namespace tmc {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = ~StateId{0};

// Subset of the states of one region automaton, indexed by StateId.
using StateSet = boost::dynamic_bitset<>;

// Shared, cached region tables keyed by (clocks, bound).
std::shared_ptr<const RegionSpace> region_space(const ClockNames& clocks, unsigned d);

class RegionAutomaton {
 public:
  struct State {
    std::size_t location;
    RegionId region;
  };
  struct ActionEdge {
    StateId source;
    std::size_t action;  // index into actions()
    StateId target;
  };

  // States are all invariant-consistent (location, region) pairs, ordered by
  // location declaration order and then region key.
  // Throws DomainError if extra clocks overlap the automaton clocks.
  static RegionAutomaton build(const TimedAutomaton& ta, const ClockNames& extra_clocks, unsigned d);
  // build(ta, cs(f) minus automaton clocks, bound(f)).
  static RegionAutomaton build_relativized(const TimedAutomaton& ta, const FormulaPtr& f);

  const TimedAutomaton& automaton() const { return *ta_; }
  const RegionSpace& space() const { return *space_; }
  const ClockNames& clocks() const { return space_->clock_set(); }
  unsigned bound() const { return space_->bound(); }

  std::size_t size() const { return states_.size(); }
  const State& state(StateId s) const { return states_.at(s); }
  // kNoState when the region violates the location invariant.
  StateId find(std::size_t location, RegionId region) const;

  StateId epsilon_successor(StateId s) const { return eps_succ_.at(s); }
  const std::vector<StateId>& epsilon_predecessors(StateId s) const { return eps_pred_.at(s); }
  const std::vector<ActionEdge>& action_edges() const { return edges_; }
  const std::vector<Action>& actions() const { return actions_; }

  const StateSet& initial() const { return initial_; }
  StateSet empty_set() const { return StateSet(size()); }
  StateSet full_set() const { return ~StateSet(size()); }

  // Labeling: location propositions plus satisfied atoms of the bounded atom set.
  std::vector<std::string> labels(StateId s) const;
  StateSet prop_set(const std::string& p) const;
  StateSet atom_set(const AtomicConstraint& atom) const;

  // Index of the state (l, r[z := 0]).
  StateId reset(StateId s, const ClockName& z) const;

  // (l, region of v); the valuation must cover every clock of the automaton.
  StateId abs_state(const ConcreteState& s) const;
  bool contains_concretization(const StateSet& set, const ConcreteState& s) const;

  std::string describe(StateId s) const;
  std::string to_dot() const;

 private:
  std::shared_ptr<const TimedAutomaton> ta_;
  std::shared_ptr<const RegionSpace> space_;
  std::vector<State> states_;
  std::vector<StateId> index_;  // index_[location * regions + region]
  std::vector<StateId> eps_succ_;
  std::vector<std::vector<StateId>> eps_pred_;
  std::vector<Action> actions_;
  std::vector<ActionEdge> edges_;
  StateSet initial_;
};

}  // namespace tmc
