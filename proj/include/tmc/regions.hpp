#pragma once

// Regions of bounded logical equivalence over a clock set C and bound d,
// including diagonal constraints.
//
// A region key stores one class code per clock and one per unordered clock
// pair (i < j in the sorted clock order):
//   clock code   2c      : x = c            (0 <= c <= d)
//                2c + 1  : c < x < c + 1    (0 <= c < d)
//                2d + 1  : x > d
//   pair code    0       : xi - xj < -d
//                2(c+d)+1: xi - xj = c      (-d <= c <= d)
//                2(c+d)+2: c < xi - xj < c+1
//                4d + 2  : xi - xj > d
// Every atom of the bounded atom set is a function of these codes and vice
// versa, so keys are canonical.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tmc/clocks.hpp"

namespace tmc {

using RegionId = std::uint32_t;

struct RegionKey {
  std::vector<std::uint16_t> codes;

  auto operator<=>(const RegionKey&) const = default;
};

// Internal invariant violation in the region table.
class RegionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The {<, <=} atoms of the bounded atom set, in satisfaction-vector order:
// for each clock x and c in [0,d], x<c then x<=c; then for each ordered pair
// (x, y), x != y, and c in [-d, d], x-y<c then x-y<=c.
struct VectorAtom {
  ClockName clock;
  std::optional<ClockName> minus;
  bool strict = false;
  int constant = 0;
};
std::vector<VectorAtom> vector_atoms(const ClockNames& clocks, unsigned d);

// Satisfaction vector of v evaluated atom by atom.
std::vector<bool> satisfaction_vector(const Valuation& v, const ClockNames& clocks, unsigned d);

RegionKey key_of(const Valuation& v, const std::vector<ClockName>& clocks, unsigned d);

// v and w satisfy the same atoms of the bounded atom set over `clocks`.
bool equivalent(const Valuation& v, const Valuation& w, const ClockNames& clocks, unsigned d);

// All regions of (C, d), sorted by key. Built as the closure of the zero
// region under time successor and single-clock resets; every valuation is
// reachable from the zero valuation by delays and resets, so the closure is
// the full region set. Representatives are exact but need not lie on a grid.
class RegionSpace {
 public:
  RegionSpace(const ClockNames& clocks, unsigned d);

  const std::vector<ClockName>& clocks() const { return clocks_; }
  const ClockNames& clock_set() const { return clock_set_; }
  unsigned bound() const { return d_; }
  std::size_t size() const { return keys_.size(); }

  const RegionKey& key(RegionId r) const { return keys_.at(r); }
  const Valuation& representative(RegionId r) const { return reps_.at(r); }

  // Throws RegionError("enumeration incomplete") if the key is unknown.
  RegionId region_of(const Valuation& v) const;
  RegionId find(const RegionKey& key) const;

  bool is_unbounded(RegionId r) const;
  RegionId tsucc(RegionId r) const { return succ_.at(r); }
  // Boundary-crossing delay from the representative; 0 when unbounded.
  Rational successor_delay(RegionId r) const;

  RegionId reset(RegionId r, const ClockNames& clocks) const;

  // Requires bound(atom) <= d and clocks of atom within C (DomainError).
  bool satisfies(RegionId r, const AtomicConstraint& atom) const;
  bool satisfies(RegionId r, const ClockConstraint& constraint) const;

  std::vector<bool> satisfaction_vector(RegionId r) const;

  // Satisfied atoms of the bounded atom set over all four relations.
  std::vector<AtomicConstraint> satisfied_atoms(RegionId r) const;

  // e.g. "x=0, 0<y<1, 0<x-y<1"; diagonals only where the clock classes
  // leave them open.
  std::string describe(RegionId r) const;

 private:
  std::size_t clock_index(const ClockName& clock) const;
  std::uint16_t diff_code(RegionId r, std::size_t i, std::size_t j) const;

  std::vector<ClockName> clocks_;
  ClockNames clock_set_;
  unsigned d_;
  std::vector<RegionKey> keys_;
  std::vector<Valuation> reps_;
  std::vector<RegionId> succ_;
  std::vector<std::vector<RegionId>> reset_;  // reset_[r][clock index]
  std::map<RegionKey, RegionId> index_;
};

}  // namespace tmc
