#include "tmc/clocks.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tmc {

std::string_view to_string(Rel rel) {
  switch (rel) {
    case Rel::lt: return "<";
    case Rel::le: return "<=";
    case Rel::gt: return ">";
    case Rel::ge: return ">=";
  }
  return "?";
}

bool compare(const Rational& lhs, Rel rel, const Rational& rhs) {
  switch (rel) {
    case Rel::lt: return lhs < rhs;
    case Rel::le: return lhs <= rhs;
    case Rel::gt: return lhs > rhs;
    case Rel::ge: return lhs >= rhs;
  }
  return false;
}

AtomicConstraint AtomicConstraint::single(ClockName x, Rel rel, unsigned c) {
  return {std::move(x), std::nullopt, rel, c};
}

AtomicConstraint AtomicConstraint::diagonal(ClockName x, ClockName y, Rel rel, unsigned c) {
  if (x == y) throw DomainError("diagonal constraint needs two distinct clocks, got " + x + " - " + y);
  return {std::move(x), std::move(y), rel, c};
}

std::string to_string(const AtomicConstraint& atom) {
  std::string out = atom.clock;
  if (atom.minus) out += "-" + *atom.minus;
  out += to_string(atom.rel);
  out += std::to_string(atom.constant);
  return out;
}

ClockConstraint ClockConstraint::equals(ClockName x, unsigned c) {
  return {{AtomicConstraint::single(x, Rel::le, c), AtomicConstraint::single(x, Rel::ge, c)}, false};
}

ClockConstraint conjoin(const ClockConstraint& lhs, const ClockConstraint& rhs) {
  ClockConstraint out = lhs;
  out.conjuncts.insert(out.conjuncts.end(), rhs.conjuncts.begin(), rhs.conjuncts.end());
  out.contradiction = lhs.contradiction || rhs.contradiction;
  return out;
}

std::string to_string(const ClockConstraint& constraint) {
  if (constraint.contradiction) {
    if (constraint.conjuncts.empty()) return "ff";
  } else if (constraint.conjuncts.empty()) {
    return "tt";
  }
  std::string out;
  for (const auto& atom : constraint.conjuncts) {
    if (!out.empty()) out += " & ";
    out += to_string(atom);
  }
  if (constraint.contradiction) out += " & ff";
  return out;
}

namespace {

class ConstraintLexer {
 public:
  explicit ConstraintLexer(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  bool accept(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\''))
        ++pos_;
    }
    if (start == pos_) fail("expected clock name");
    return std::string(text_.substr(start, pos_ - start));
  }
  unsigned natural() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected natural number");
    return static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("constraint: " + what + " at offset " + std::to_string(pos_), pos_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ClockConstraint parse_constraint(std::string_view text) {
  ConstraintLexer lex(text);
  ClockConstraint out;
  do {
    if (lex.accept("tt")) continue;
    if (lex.accept("ff")) {
      out.contradiction = true;
      continue;
    }
    ClockName x = lex.identifier();
    std::optional<ClockName> y;
    if (lex.accept("-")) {
      y = lex.identifier();
      if (*y == x) lex.fail("diagonal constraint needs two distinct clocks");
    }
    std::optional<Rel> rel;
    bool equality = false;
    if (lex.accept("<=")) rel = Rel::le;
    else if (lex.accept(">=")) rel = Rel::ge;
    else if (lex.accept("<")) rel = Rel::lt;
    else if (lex.accept(">")) rel = Rel::gt;
    else if (lex.accept("=")) equality = true;
    else lex.fail("expected relation");
    unsigned c = lex.natural();
    auto make = [&](Rel r) {
      return y ? AtomicConstraint::diagonal(x, *y, r, c) : AtomicConstraint::single(x, r, c);
    };
    if (equality) {
      out.conjuncts.push_back(make(Rel::le));
      out.conjuncts.push_back(make(Rel::ge));
    } else {
      out.conjuncts.push_back(make(*rel));
    }
  } while (lex.accept("&"));
  if (!lex.done()) lex.fail("trailing input");
  return out;
}

unsigned bound(const AtomicConstraint& atom) { return atom.constant; }

unsigned bound(const ClockConstraint& constraint) {
  unsigned out = 0;
  for (const auto& atom : constraint.conjuncts) out = std::max(out, atom.constant);
  return out;
}

ClockNames clock_set(const AtomicConstraint& atom) {
  ClockNames out{atom.clock};
  if (atom.minus) out.insert(*atom.minus);
  return out;
}

ClockNames clock_set(const ClockConstraint& constraint) {
  ClockNames out;
  for (const auto& atom : constraint.conjuncts) out.merge(clock_set(atom));
  return out;
}

// Values are kept canonical; GMP arithmetic assumes canonical operands.
Valuation::Valuation(std::map<ClockName, Rational> values) : values_(std::move(values)) {
  for (auto& [name, value] : values_) {
    value.canonicalize();
    if (value < 0) throw DomainError("negative clock value for " + name);
  }
}

Valuation Valuation::zero(const ClockNames& clocks) {
  std::map<ClockName, Rational> values;
  for (const auto& clock : clocks) values.emplace(clock, 0);
  return Valuation(std::move(values));
}

const Rational& Valuation::at(const ClockName& clock) const {
  auto it = values_.find(clock);
  if (it == values_.end()) throw DomainError("unknown clock '" + clock + "'");
  return it->second;
}

ClockNames Valuation::domain() const {
  ClockNames out;
  for (const auto& [name, value] : values_) out.insert(name);
  return out;
}

Valuation Valuation::with(const ClockName& clock, const Rational& value) const {
  if (value < 0) throw DomainError("negative clock value for " + clock);
  Valuation out = *this;
  out.values_[clock] = value;
  out.values_[clock].canonicalize();
  return out;
}

std::string to_string(const Valuation& v) {
  std::string out;
  for (const auto& [name, value] : v.values()) {
    if (!out.empty()) out += ",";
    out += name + "=" + value.get_str();
  }
  return out;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
  if (s.empty()) throw ParseError("empty number", 0);
  auto dot = s.find('.');
  try {
    if (dot != std::string::npos) {
      std::string whole = s.substr(0, dot);
      std::string frac = s.substr(dot + 1);
      if (whole.empty()) whole = "0";
      if (frac.find_first_not_of("0123456789") != std::string::npos ||
          whole.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("malformed decimal '" + s + "'", 0);
      Rational out(whole + frac + "/1" + std::string(frac.size(), '0'));
      out.canonicalize();
      return out;
    }
    if (s.find_first_not_of("0123456789/") != std::string::npos)
      throw ParseError("malformed rational '" + s + "'", 0);
    Rational out(s);
    if (out.get_den() == 0) throw ParseError("zero denominator in '" + s + "'", 0);
    out.canonicalize();
    return out;
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed rational '" + s + "'", 0);
  }
}

Valuation parse_valuation(std::string_view text) {
  std::map<ClockName, Rational> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected clock=value in '" + std::string(item) + "'", start);
    std::string name(item.substr(0, eq));
    name.erase(std::remove_if(name.begin(), name.end(), [](unsigned char ch) { return std::isspace(ch); }),
               name.end());
    if (name.empty()) throw ParseError("missing clock name", start);
    values[name] = parse_rational(item.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Valuation(std::move(values));
}

bool satisfies(const Valuation& v, const AtomicConstraint& atom) {
  Rational lhs = v.at(atom.clock);
  if (atom.minus) lhs -= v.at(*atom.minus);
  return compare(lhs, atom.rel, Rational(atom.constant));
}

bool satisfies(const Valuation& v, const ClockConstraint& constraint) {
  bool holds = !constraint.contradiction;
  // Evaluate every conjunct so unknown clocks are reported even after a failure.
  for (const auto& atom : constraint.conjuncts) holds = satisfies(v, atom) && holds;
  return holds;
}

Valuation delay(const Valuation& v, const Rational& delta) {
  if (delta < 0) throw DomainError("negative delay " + delta.get_str());
  Rational step = delta;
  step.canonicalize();
  std::map<ClockName, Rational> values = v.values();
  for (auto& [name, value] : values) value += step;
  return Valuation(std::move(values));
}

Valuation reset(const Valuation& v, const ClockNames& clocks) {
  Valuation out = v;
  for (const auto& clock : clocks) {
    if (!v.contains(clock)) throw DomainError("unknown clock '" + clock + "'");
    out = out.with(clock, 0);
  }
  return out;
}

}  // namespace tmc
