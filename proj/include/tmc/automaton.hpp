#pragma once

// Timed automata, their point-state semantics, the text format, and the
// embedding of finite LTSs as automata whose time cannot advance.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tmc/clocks.hpp"

namespace tmc {

using Prop = std::string;
using Props = std::set<Prop>;
using Action = std::string;

struct Location {
  std::string name;
  bool initial = false;
  ClockConstraint invariant;
  Props props;
};

struct Edge {
  std::size_t source = 0;
  Action action;
  ClockConstraint guard;
  ClockNames resets;
  std::size_t target = 0;
};

struct TimedAutomaton {
  std::string name;
  std::vector<Location> locations;
  ClockNames clocks;
  Props propositions;
  std::vector<Edge> edges;

  std::set<Action> sigma() const;
  std::optional<std::size_t> find_location(std::string_view name) const;
};

struct Defect {
  std::string message;
  bool warning = false;
};

// Structural checks; never throws. Warnings do not make the automaton invalid.
std::vector<Defect> validate(const TimedAutomaton& ta);
bool is_valid(const TimedAutomaton& ta);

unsigned ta_bound(const TimedAutomaton& ta);

// (location, valuation) with the valuation satisfying the location invariant.
// The valuation may carry clocks beyond the automaton's own.
class ConcreteState {
 public:
  // Throws DomainError if v misses an automaton clock or violates I(l).
  ConcreteState(const TimedAutomaton& ta, std::size_t location, Valuation v);

  std::size_t location() const { return location_; }
  const Valuation& valuation() const { return valuation_; }
  bool operator==(const ConcreteState&) const = default;

 private:
  ConcreteState(std::size_t location, Valuation v) : location_(location), valuation_(std::move(v)) {}
  friend std::optional<ConcreteState> concrete_delay(const TimedAutomaton&, const ConcreteState&, const Rational&);
  friend std::vector<ConcreteState> concrete_step(const TimedAutomaton&, const ConcreteState&, const Action&);

  std::size_t location_;
  Valuation valuation_;
};

// `loc:x=1/2,y=0`.
ConcreteState parse_state(const TimedAutomaton& ta, std::string_view text);
std::string to_string(const TimedAutomaton& ta, const ConcreteState& s);

// Invariants are convex, so checking both endpoints covers the interval.
std::optional<ConcreteState> concrete_delay(const TimedAutomaton& ta, const ConcreteState& s, const Rational& delta);
std::vector<ConcreteState> concrete_step(const TimedAutomaton& ta, const ConcreteState& s, const Action& action);

struct FiniteLts {
  struct Transition {
    std::size_t source;
    Action action;
    std::size_t target;
  };
  std::vector<std::string> names;
  std::vector<Props> labels;
  std::vector<Transition> transitions;
  std::set<std::size_t> initial;

  std::size_t size() const { return names.size(); }
};

// One location per state with invariant x <= 0, one tt-guarded edge without
// resets per transition, labels copied.
TimedAutomaton lts_to_ta(const FiniteLts& m);

// Line-oriented text format:
//   ta NAME | clock ID+ | prop ID+
//   loc ID [init] [inv "C"] [props ID+]
//   edge SRC ACTION DST [guard "C"] [reset ID+]
// `#` starts a comment. ParseError positions are 1-based line numbers.
TimedAutomaton parse_ta(std::string_view text);
TimedAutomaton load_ta(const std::string& path);
std::string to_text(const TimedAutomaton& ta);

}  // namespace tmc
