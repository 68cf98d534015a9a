#include "tmc/automaton.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace tmc {

std::set<Action> TimedAutomaton::sigma() const {
  std::set<Action> out;
  for (const auto& edge : edges) out.insert(edge.action);
  return out;
}

std::optional<std::size_t> TimedAutomaton::find_location(std::string_view name) const {
  for (std::size_t i = 0; i < locations.size(); ++i)
    if (locations[i].name == name) return i;
  return std::nullopt;
}

std::vector<Defect> validate(const TimedAutomaton& ta) {
  std::vector<Defect> out;
  if (ta.locations.empty()) out.push_back({"automaton has no locations"});
  if (ta.clocks.empty()) out.push_back({"automaton declares no clocks"});
  bool any_initial = false;
  std::set<std::string> names;
  auto check_clocks = [&](const ClockConstraint& constraint, const std::string& where) {
    for (const auto& clock : clock_set(constraint))
      if (!ta.clocks.contains(clock)) out.push_back({"unknown clock '" + clock + "' in " + where});
  };
  for (const auto& loc : ta.locations) {
    if (!names.insert(loc.name).second) out.push_back({"duplicate location '" + loc.name + "'"});
    any_initial = any_initial || loc.initial;
    check_clocks(loc.invariant, "invariant of " + loc.name);
    for (const auto& prop : loc.props)
      if (!ta.propositions.contains(prop)) out.push_back({"undeclared proposition '" + prop + "' at " + loc.name});
    if (loc.initial) {
      bool zero_ok = true;
      try {
        zero_ok = satisfies(Valuation::zero(ta.clocks), loc.invariant);
      } catch (const DomainError&) {
      }
      if (!zero_ok) out.push_back({"initial location '" + loc.name + "' rejects the zero valuation", true});
    }
  }
  if (!ta.locations.empty() && !any_initial) out.push_back({"automaton has no initial location"});
  for (const auto& prop : ta.propositions)
    if (ta.clocks.contains(prop)) out.push_back({"proposition '" + prop + "' clashes with a clock name"});
  for (const auto& edge : ta.edges) {
    if (edge.source >= ta.locations.size() || edge.target >= ta.locations.size()) {
      out.push_back({"edge '" + edge.action + "' refers to a missing location"});
      continue;
    }
    std::string where = "edge " + ta.locations[edge.source].name + " -" + edge.action + "-> " +
                        ta.locations[edge.target].name;
    check_clocks(edge.guard, where);
    for (const auto& clock : edge.resets)
      if (!ta.clocks.contains(clock)) out.push_back({"unknown clock '" + clock + "' in resets of " + where});
  }
  return out;
}

bool is_valid(const TimedAutomaton& ta) {
  for (const auto& defect : validate(ta))
    if (!defect.warning) return false;
  return true;
}

unsigned ta_bound(const TimedAutomaton& ta) {
  unsigned out = 0;
  for (const auto& loc : ta.locations) out = std::max(out, bound(loc.invariant));
  for (const auto& edge : ta.edges) out = std::max(out, bound(edge.guard));
  return out;
}

ConcreteState::ConcreteState(const TimedAutomaton& ta, std::size_t location, Valuation v)
    : location_(location), valuation_(std::move(v)) {
  if (location >= ta.locations.size()) throw DomainError("location index out of range");
  for (const auto& clock : ta.clocks)
    if (!valuation_.contains(clock)) throw DomainError("state misses clock '" + clock + "'");
  if (!satisfies(valuation_, ta.locations[location].invariant))
    throw DomainError("valuation " + to_string(valuation_) + " violates the invariant of " +
                      ta.locations[location].name);
}

ConcreteState parse_state(const TimedAutomaton& ta, std::string_view text) {
  auto colon = text.find(':');
  std::string_view loc = text.substr(0, colon);
  auto index = ta.find_location(loc);
  if (!index) throw ParseError("unknown location '" + std::string(loc) + "'", 0);
  Valuation v = colon == std::string_view::npos || colon + 1 == text.size()
                    ? Valuation()
                    : parse_valuation(text.substr(colon + 1));
  return ConcreteState(ta, *index, std::move(v));
}

std::string to_string(const TimedAutomaton& ta, const ConcreteState& s) {
  return ta.locations.at(s.location()).name + ":" + to_string(s.valuation());
}

std::optional<ConcreteState> concrete_delay(const TimedAutomaton& ta, const ConcreteState& s, const Rational& delta) {
  Valuation moved = delay(s.valuation(), delta);
  if (!satisfies(moved, ta.locations[s.location()].invariant)) return std::nullopt;
  return ConcreteState(s.location(), std::move(moved));
}

std::vector<ConcreteState> concrete_step(const TimedAutomaton& ta, const ConcreteState& s, const Action& action) {
  std::vector<ConcreteState> out;
  for (const auto& edge : ta.edges) {
    if (edge.source != s.location() || edge.action != action) continue;
    if (!satisfies(s.valuation(), edge.guard)) continue;
    Valuation next = reset(s.valuation(), edge.resets);
    if (!satisfies(next, ta.locations[edge.target].invariant)) continue;
    out.push_back(ConcreteState(edge.target, std::move(next)));
  }
  return out;
}

TimedAutomaton lts_to_ta(const FiniteLts& m) {
  TimedAutomaton ta;
  ta.name = "TA_M";
  ta.clocks = {"x"};
  for (std::size_t q = 0; q < m.size(); ++q) {
    Location loc;
    loc.name = m.names[q];
    loc.initial = m.initial.contains(q);
    loc.invariant = ClockConstraint::of(AtomicConstraint::single("x", Rel::le, 0));
    loc.props = q < m.labels.size() ? m.labels[q] : Props{};
    ta.propositions.insert(loc.props.begin(), loc.props.end());
    ta.locations.push_back(std::move(loc));
  }
  for (const auto& t : m.transitions) ta.edges.push_back({t.source, t.action, ClockConstraint::tt(), {}, t.target});
  return ta;
}

namespace {

std::vector<std::string> tokenize_line(const std::string& line, std::size_t lineno) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char ch = line[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (ch == '#') {
      break;
    } else if (ch == '"') {
      auto close = line.find('"', i + 1);
      if (close == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": unterminated string", lineno);
      out.push_back(line.substr(i, close - i + 1));
      i = close + 1;
    } else {
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
      out.push_back(line.substr(start, i - start));
    }
  }
  return out;
}

bool is_identifier(const std::string& token) {
  if (token.empty() || !(std::isalpha(static_cast<unsigned char>(token[0])) || token[0] == '_')) return false;
  for (char ch : token)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'')) return false;
  return true;
}

}  // namespace

TimedAutomaton parse_ta(std::string_view text) {
  TimedAutomaton ta;
  struct PendingEdge {
    std::string source, action, target;
    ClockConstraint guard;
    ClockNames resets;
    std::size_t line;
  };
  std::vector<PendingEdge> pending;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = tokenize_line(line, lineno);
    if (tokens.empty()) continue;
    auto fail = [&](const std::string& what) -> void {
      throw ParseError("line " + std::to_string(lineno) + ": " + what, lineno);
    };
    auto ident = [&](std::size_t i) -> const std::string& {
      if (i >= tokens.size()) fail("missing identifier");
      if (!is_identifier(tokens[i])) fail("expected identifier, got '" + tokens[i] + "'");
      return tokens[i];
    };
    auto constraint = [&](std::size_t i) {
      if (i >= tokens.size() || tokens[i].size() < 2 || tokens[i].front() != '"') fail("expected quoted constraint");
      try {
        return parse_constraint(std::string_view(tokens[i]).substr(1, tokens[i].size() - 2));
      } catch (const ParseError& e) {
        fail(e.what());
      }
      return ClockConstraint{};
    };
    const std::string& head = tokens[0];
    if (head == "ta") {
      ta.name = ident(1);
      if (tokens.size() > 2) fail("trailing tokens after automaton name");
    } else if (head == "clock") {
      if (tokens.size() < 2) fail("clock needs at least one name");
      for (std::size_t i = 1; i < tokens.size(); ++i) ta.clocks.insert(ident(i));
    } else if (head == "prop") {
      if (tokens.size() < 2) fail("prop needs at least one name");
      for (std::size_t i = 1; i < tokens.size(); ++i) ta.propositions.insert(ident(i));
    } else if (head == "loc") {
      Location loc;
      loc.name = ident(1);
      for (std::size_t i = 2; i < tokens.size(); ++i) {
        if (tokens[i] == "init") {
          loc.initial = true;
        } else if (tokens[i] == "inv") {
          loc.invariant = constraint(++i);
        } else if (tokens[i] == "props") {
          if (i + 1 >= tokens.size()) fail("props needs at least one name");
          while (i + 1 < tokens.size()) {
            const auto& prop = ident(++i);
            loc.props.insert(prop);
            ta.propositions.insert(prop);
          }
        } else {
          fail("unexpected token '" + tokens[i] + "'");
        }
      }
      if (ta.find_location(loc.name)) fail("duplicate location '" + loc.name + "'");
      ta.locations.push_back(std::move(loc));
    } else if (head == "edge") {
      PendingEdge edge{ident(1), ident(2), ident(3), ClockConstraint::tt(), {}, lineno};
      for (std::size_t i = 4; i < tokens.size(); ++i) {
        if (tokens[i] == "guard") {
          edge.guard = constraint(++i);
        } else if (tokens[i] == "reset") {
          if (i + 1 >= tokens.size()) fail("reset needs at least one clock");
          while (i + 1 < tokens.size() && tokens[i + 1] != "guard") edge.resets.insert(ident(++i));
        } else {
          fail("unexpected token '" + tokens[i] + "'");
        }
      }
      pending.push_back(std::move(edge));
    } else {
      fail("unknown directive '" + head + "'");
    }
  }
  for (auto& edge : pending) {
    auto source = ta.find_location(edge.source);
    auto target = ta.find_location(edge.target);
    if (!source || !target)
      throw ParseError("line " + std::to_string(edge.line) + ": unknown location '" +
                           (source ? edge.target : edge.source) + "'",
                       edge.line);
    ta.edges.push_back({*source, edge.action, std::move(edge.guard), std::move(edge.resets), *target});
  }
  return ta;
}

TimedAutomaton load_ta(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_ta(buffer.str());
}

std::string to_text(const TimedAutomaton& ta) {
  std::ostringstream out;
  if (!ta.name.empty()) out << "ta " << ta.name << "\n";
  if (!ta.clocks.empty()) {
    out << "clock";
    for (const auto& clock : ta.clocks) out << " " << clock;
    out << "\n";
  }
  if (!ta.propositions.empty()) {
    out << "prop";
    for (const auto& prop : ta.propositions) out << " " << prop;
    out << "\n";
  }
  for (const auto& loc : ta.locations) {
    out << "loc " << loc.name;
    if (loc.initial) out << " init";
    if (!loc.invariant.is_tt()) out << " inv \"" << to_string(loc.invariant) << "\"";
    if (!loc.props.empty()) {
      out << " props";
      for (const auto& prop : loc.props) out << " " << prop;
    }
    out << "\n";
  }
  for (const auto& edge : ta.edges) {
    out << "edge " << ta.locations[edge.source].name << " " << edge.action << " " << ta.locations[edge.target].name;
    if (!edge.guard.is_tt()) out << " guard \"" << to_string(edge.guard) << "\"";
    if (!edge.resets.empty()) {
      out << " reset";
      for (const auto& clock : edge.resets) out << " " << clock;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace tmc
