#include "tmc/regions.hpp"

#include <algorithm>
#include <numeric>

namespace tmc {

namespace {

constexpr unsigned kMaxBound = 8000;

Rational floor_of(const Rational& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(out);
}

bool is_integral(const Rational& q) { return q.get_den() == 1; }

std::uint16_t clock_code(const Rational& value, unsigned d) {
  if (value > d) return static_cast<std::uint16_t>(2 * d + 1);
  long f = floor_of(value).get_num().get_si();
  return static_cast<std::uint16_t>(is_integral(value) ? 2 * f : 2 * f + 1);
}

std::uint16_t pair_code(const Rational& diff, unsigned d) {
  const long dd = d;
  if (diff < -dd) return 0;
  if (diff > dd) return static_cast<std::uint16_t>(4 * dd + 2);
  long f = floor_of(diff).get_num().get_si();
  return static_cast<std::uint16_t>(is_integral(diff) ? 2 * (f + dd) + 1 : 2 * (f + dd) + 2);
}

// Interval of a clock class as integer endpoints; hi < 0 encodes +infinity.
struct ClassInterval {
  long lo;
  long hi;
  bool point;
};

ClassInterval clock_interval(std::uint16_t code, unsigned d) {
  if (code == 2 * d + 1) return {static_cast<long>(d), -1, false};
  if (code % 2 == 0) return {code / 2, code / 2, true};
  return {code / 2, code / 2 + 1, false};
}

void check_bound(unsigned d) {
  if (d > kMaxBound) throw DomainError("region bound " + std::to_string(d) + " is too large");
}

// Smallest delay leaving the region of v: half the nearest gap when some
// bounded clock is integral, else the nearest boundary.
Rational boundary_delay(const Valuation& v, const std::vector<ClockName>& clocks, unsigned d) {
  Rational step;
  bool integral = false;
  bool first = true;
  for (const auto& clock : clocks) {
    const Rational& value = v.at(clock);
    if (value > d) continue;
    Rational gap = is_integral(value) ? Rational(1) : floor_of(value) + 1 - value;
    integral = integral || is_integral(value);
    if (first || gap < step) step = gap;
    first = false;
  }
  if (integral) step /= 2;
  return step;
}

}  // namespace

std::vector<VectorAtom> vector_atoms(const ClockNames& clocks, unsigned d) {
  std::vector<VectorAtom> out;
  for (const auto& x : clocks)
    for (unsigned c = 0; c <= d; ++c) {
      out.push_back({x, std::nullopt, true, static_cast<int>(c)});
      out.push_back({x, std::nullopt, false, static_cast<int>(c)});
    }
  for (const auto& x : clocks)
    for (const auto& y : clocks) {
      if (x == y) continue;
      for (int c = -static_cast<int>(d); c <= static_cast<int>(d); ++c) {
        out.push_back({x, y, true, c});
        out.push_back({x, y, false, c});
      }
    }
  return out;
}

std::vector<bool> satisfaction_vector(const Valuation& v, const ClockNames& clocks, unsigned d) {
  std::vector<bool> out;
  for (const auto& atom : vector_atoms(clocks, d)) {
    Rational lhs = v.at(atom.clock);
    if (atom.minus) lhs -= v.at(*atom.minus);
    out.push_back(atom.strict ? lhs < atom.constant : lhs <= atom.constant);
  }
  return out;
}

RegionKey key_of(const Valuation& v, const std::vector<ClockName>& clocks, unsigned d) {
  const std::size_t n = clocks.size();
  RegionKey key;
  key.codes.reserve(n + n * (n - 1) / 2);
  std::vector<const Rational*> values;
  values.reserve(n);
  for (const auto& clock : clocks) values.push_back(&v.at(clock));
  for (const auto* value : values) key.codes.push_back(clock_code(*value, d));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) key.codes.push_back(pair_code(*values[i] - *values[j], d));
  return key;
}

bool equivalent(const Valuation& v, const Valuation& w, const ClockNames& clocks, unsigned d) {
  std::vector<ClockName> order(clocks.begin(), clocks.end());
  return key_of(v, order, d) == key_of(w, order, d);
}

RegionSpace::RegionSpace(const ClockNames& clocks, unsigned d)
    : clocks_(clocks.begin(), clocks.end()), clock_set_(clocks), d_(d) {
  check_bound(d);
  const std::size_t n = clocks_.size();

  // Closure in discovery order, then renumbered by key.
  std::vector<RegionKey> keys;
  std::vector<Valuation> reps;
  std::map<RegionKey, RegionId> found;
  auto intern = [&](const Valuation& v) {
    RegionKey key = key_of(v, clocks_, d_);
    auto [it, inserted] = found.emplace(key, static_cast<RegionId>(keys.size()));
    if (inserted) {
      keys.push_back(std::move(key));
      reps.push_back(v);
    }
    return it->second;
  };

  std::vector<RegionId> succ;
  std::vector<std::vector<RegionId>> resets;
  intern(Valuation::zero(clock_set_));
  for (RegionId r = 0; r < keys.size(); ++r) {
    Valuation rep = reps[r];
    bool unbounded = std::all_of(keys[r].codes.begin(), keys[r].codes.begin() + static_cast<long>(n),
                                 [&](std::uint16_t code) { return code == 2 * d_ + 1; });
    RegionId s = r;
    if (!unbounded) {
      Rational step = boundary_delay(rep, clocks_, d_);
      s = intern(delay(rep, step));
    }
    std::vector<RegionId> row;
    row.reserve(n);
    for (const auto& clock : clocks_) row.push_back(intern(rep.with(clock, 0)));
    succ.push_back(s);
    resets.push_back(std::move(row));
  }

  const std::size_t count = keys.size();
  std::vector<RegionId> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](RegionId a, RegionId b) { return keys[a] < keys[b]; });
  std::vector<RegionId> rank(count);
  for (RegionId i = 0; i < count; ++i) rank[order[i]] = i;

  keys_.reserve(count);
  reps_.reserve(count);
  succ_.reserve(count);
  reset_.reserve(count);
  for (RegionId i = 0; i < count; ++i) {
    RegionId old = order[i];
    keys_.push_back(keys[old]);
    reps_.push_back(reps[old]);
    succ_.push_back(rank[succ[old]]);
    std::vector<RegionId> row;
    for (RegionId target : resets[old]) row.push_back(rank[target]);
    reset_.push_back(std::move(row));
    index_.emplace(keys_.back(), i);
  }
}

RegionId RegionSpace::find(const RegionKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) throw RegionError("enumeration incomplete");
  return it->second;
}

RegionId RegionSpace::region_of(const Valuation& v) const { return find(key_of(v, clocks_, d_)); }

bool RegionSpace::is_unbounded(RegionId r) const {
  const auto& codes = keys_.at(r).codes;
  for (std::size_t i = 0; i < clocks_.size(); ++i)
    if (codes[i] != 2 * d_ + 1) return false;
  return true;
}

Rational RegionSpace::successor_delay(RegionId r) const {
  if (is_unbounded(r)) return 0;
  return boundary_delay(reps_.at(r), clocks_, d_);
}

std::size_t RegionSpace::clock_index(const ClockName& clock) const {
  auto it = std::lower_bound(clocks_.begin(), clocks_.end(), clock);
  if (it == clocks_.end() || *it != clock) throw DomainError("clock '" + clock + "' is not in the region clock set");
  return static_cast<std::size_t>(it - clocks_.begin());
}

RegionId RegionSpace::reset(RegionId r, const ClockNames& clocks) const {
  for (const auto& clock : clocks) r = reset_.at(r)[clock_index(clock)];
  return r;
}

std::uint16_t RegionSpace::diff_code(RegionId r, std::size_t i, std::size_t j) const {
  const std::size_t n = clocks_.size();
  const bool flip = i > j;
  if (flip) std::swap(i, j);
  // Pairs (i, j) with i < j are laid out row by row after the clock codes.
  std::size_t offset = n + i * n - i * (i + 1) / 2 + (j - i - 1);
  std::uint16_t code = keys_.at(r).codes[offset];
  return flip ? static_cast<std::uint16_t>(4 * d_ + 2 - code) : code;
}

bool RegionSpace::satisfies(RegionId r, const AtomicConstraint& atom) const {
  if (atom.constant > d_)
    throw DomainError("atom " + to_string(atom) + " exceeds region bound " + std::to_string(d_));
  const long c = atom.constant;
  long code;
  long point;
  if (atom.minus) {
    code = diff_code(r, clock_index(atom.clock), clock_index(*atom.minus));
    point = 2 * (c + d_) + 1;
  } else {
    code = keys_.at(r).codes[clock_index(atom.clock)];
    point = 2 * c;
  }
  switch (atom.rel) {
    case Rel::lt: return code < point;
    case Rel::le: return code <= point;
    case Rel::gt: return code > point;
    case Rel::ge: return code >= point;
  }
  return false;
}

bool RegionSpace::satisfies(RegionId r, const ClockConstraint& constraint) const {
  bool holds = !constraint.contradiction;
  for (const auto& atom : constraint.conjuncts) holds = satisfies(r, atom) && holds;
  return holds;
}

std::vector<bool> RegionSpace::satisfaction_vector(RegionId r) const {
  std::vector<bool> out;
  const long d = d_;
  const auto& codes = keys_.at(r).codes;
  for (std::size_t i = 0; i < clocks_.size(); ++i)
    for (long c = 0; c <= d; ++c) {
      out.push_back(codes[i] < 2 * c);
      out.push_back(codes[i] <= 2 * c);
    }
  for (std::size_t i = 0; i < clocks_.size(); ++i)
    for (std::size_t j = 0; j < clocks_.size(); ++j) {
      if (i == j) continue;
      long code = diff_code(r, i, j);
      for (long c = -d; c <= d; ++c) {
        out.push_back(code < 2 * (c + d) + 1);
        out.push_back(code <= 2 * (c + d) + 1);
      }
    }
  return out;
}

std::vector<AtomicConstraint> RegionSpace::satisfied_atoms(RegionId r) const {
  std::vector<AtomicConstraint> out;
  constexpr Rel rels[] = {Rel::lt, Rel::le, Rel::gt, Rel::ge};
  for (const auto& x : clocks_)
    for (unsigned c = 0; c <= d_; ++c)
      for (Rel rel : rels) {
        auto atom = AtomicConstraint::single(x, rel, c);
        if (satisfies(r, atom)) out.push_back(std::move(atom));
      }
  for (const auto& x : clocks_)
    for (const auto& y : clocks_) {
      if (x == y) continue;
      for (unsigned c = 0; c <= d_; ++c)
        for (Rel rel : rels) {
          auto atom = AtomicConstraint::diagonal(x, y, rel, c);
          if (satisfies(r, atom)) out.push_back(std::move(atom));
        }
    }
  return out;
}

std::string RegionSpace::describe(RegionId r) const {
  const auto& codes = keys_.at(r).codes;
  const long d = d_;
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < clocks_.size(); ++i) {
    const auto& x = clocks_[i];
    ClassInterval iv = clock_interval(codes[i], d_);
    if (iv.point) parts.push_back(x + "=" + std::to_string(iv.lo));
    else if (iv.hi < 0) parts.push_back(x + ">" + std::to_string(iv.lo));
    else parts.push_back(std::to_string(iv.lo) + "<" + x + "<" + std::to_string(iv.hi));
  }
  for (std::size_t i = 0; i < clocks_.size(); ++i)
    for (std::size_t j = i + 1; j < clocks_.size(); ++j) {
      ClassInterval a = clock_interval(codes[i], d_);
      ClassInterval b = clock_interval(codes[j], d_);
      // The difference ranges over the open interval (a.lo - b.hi, a.hi - b.lo)
      // unless both are points; it is informative iff that interval strictly
      // contains an integer of [-d, d].
      if (a.point && b.point) continue;
      bool lo_inf = b.hi < 0;
      bool hi_inf = a.hi < 0;
      long lo = lo_inf ? 0 : a.lo - b.hi;
      long hi = hi_inf ? 0 : a.hi - b.lo;
      long first = lo_inf ? -d : std::max(-d, lo + 1);
      long last = hi_inf ? d : std::min(d, hi - 1);
      if (first > last) continue;
      const std::string name = clocks_[i] + "-" + clocks_[j];
      long code = diff_code(r, i, j);
      if (code == 0) parts.push_back(name + "<" + std::to_string(-d));
      else if (code == 4 * d + 2) parts.push_back(name + ">" + std::to_string(d));
      else if (code % 2 == 1) parts.push_back(name + "=" + std::to_string((code - 1) / 2 - d));
      else {
        long c = (code - 2) / 2 - d;
        parts.push_back(std::to_string(c) + "<" + name + "<" + std::to_string(c + 1));
      }
    }
  std::string out;
  for (const auto& part : parts) {
    if (!out.empty()) out += ", ";
    out += part;
  }
  return out;
}

}  // namespace tmc
