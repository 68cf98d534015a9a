#pragma once

// Clocks, exact-rational valuations and conjunctive clock constraints.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tmc {

using Rational = mpq_class;
using ClockName = std::string;
using ClockNames = std::set<ClockName>;

// Raised when an operation is applied outside its domain (unknown clock,
// negative delay, region query beyond the region bound, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax errors in any of the textual front-ends. `position` is a 0-based
// character offset into the parsed text (or line number for file formats).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

enum class ClockKind : std::uint8_t { automaton, freeze };

struct ClockId {
  ClockName name;
  ClockKind kind = ClockKind::automaton;

  auto operator<=>(const ClockId&) const = default;
};

enum class Rel : std::uint8_t { lt, le, gt, ge };

std::string_view to_string(Rel rel);
bool compare(const Rational& lhs, Rel rel, const Rational& rhs);

// x rel c, or x - y rel c when `minus` is set.
struct AtomicConstraint {
  ClockName clock;
  std::optional<ClockName> minus;
  Rel rel = Rel::le;
  unsigned constant = 0;

  static AtomicConstraint single(ClockName x, Rel rel, unsigned c);
  static AtomicConstraint diagonal(ClockName x, ClockName y, Rel rel, unsigned c);

  bool is_diagonal() const { return minus.has_value(); }
  auto operator<=>(const AtomicConstraint&) const = default;
};

std::string to_string(const AtomicConstraint& atom);

// Conjunction of atoms. The empty conjunction is tt; `contradiction` marks ff
// without naming a clock.
struct ClockConstraint {
  std::vector<AtomicConstraint> conjuncts;
  bool contradiction = false;

  static ClockConstraint tt() { return {}; }
  static ClockConstraint ff() { return {{}, true}; }
  static ClockConstraint of(AtomicConstraint atom) { return {{std::move(atom)}, false}; }
  // x = c expands to (x <= c) & (x >= c).
  static ClockConstraint equals(ClockName x, unsigned c);

  bool is_tt() const { return conjuncts.empty() && !contradiction; }
  bool operator==(const ClockConstraint&) const = default;
};

ClockConstraint conjoin(const ClockConstraint& lhs, const ClockConstraint& rhs);
std::string to_string(const ClockConstraint& constraint);

// Parses `atom ('&' atom)*`, `tt`, `ff`, with `ID = NAT` and `ID - ID = NAT`
// as sugar for the two-sided bound.
ClockConstraint parse_constraint(std::string_view text);

unsigned bound(const AtomicConstraint& atom);
unsigned bound(const ClockConstraint& constraint);
ClockNames clock_set(const AtomicConstraint& atom);
ClockNames clock_set(const ClockConstraint& constraint);

// Total assignment of non-negative rationals to a finite clock set.
class Valuation {
 public:
  Valuation() = default;
  explicit Valuation(std::map<ClockName, Rational> values);

  // All-zero valuation over `clocks`.
  static Valuation zero(const ClockNames& clocks);

  const Rational& at(const ClockName& clock) const;
  bool contains(const ClockName& clock) const { return values_.contains(clock); }
  ClockNames domain() const;
  const std::map<ClockName, Rational>& values() const { return values_; }

  // v[x := value]; the clock joins the domain if absent.
  Valuation with(const ClockName& clock, const Rational& value) const;

  bool operator==(const Valuation& other) const { return values_ == other.values_; }

 private:
  std::map<ClockName, Rational> values_;
};

std::string to_string(const Valuation& v);

// `x=1/2,y=0` (also accepts decimals such as 0.25).
Valuation parse_valuation(std::string_view text);
Rational parse_rational(std::string_view text);

bool satisfies(const Valuation& v, const AtomicConstraint& atom);
bool satisfies(const Valuation& v, const ClockConstraint& constraint);

Valuation delay(const Valuation& v, const Rational& delta);
Valuation reset(const Valuation& v, const ClockNames& clocks);

}  // namespace tmc
