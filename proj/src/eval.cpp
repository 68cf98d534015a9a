#include "tmc/eval.hpp"

#include <json.hpp>

#include <sstream>
#include <unordered_map>

namespace tmc {

namespace {

void require_preconditions(const FormulaPtr& f, const RegionAutomaton& ra, const Environment& env) {
  if (auto bad = validate_monotone(f))
    throw SemanticError("variable '" + bad->binder + "' occurs under an odd number of negations: " + bad->path);
  const TimedAutomaton& ta = ra.automaton();
  for (const auto& z : freeze_clocks(f))
    if (ta.clocks.contains(z)) throw SemanticError("freeze binds automaton clock '" + z + "'");
  for (const auto& c : formula_clocks(f))
    if (!ra.clocks().contains(c)) throw SemanticError("clock '" + c + "' is not a clock of the region automaton");
  for (const auto& atom : formula_atoms(f))
    if (bound(atom) > ra.bound())
      throw SemanticError("atom '" + to_string(atom) + "' exceeds the region bound " + std::to_string(ra.bound()));
  for (const auto& p : formula_props(f))
    if (!ta.propositions.contains(p)) throw SemanticError("proposition '" + p + "' is not declared by the automaton");
  for (const auto& y : free_vars(f)) {
    auto it = env.find(y);
    if (it == env.end()) throw SemanticError("free variable '" + y + "' has no value in the environment");
  }
  for (const auto& [y, set] : env)
    if (set.size() != ra.size()) throw SemanticError("environment value of '" + y + "' is over another automaton");
}

class Evaluator {
 public:
  Evaluator(const RegionAutomaton& ra, Environment env) : ra_(ra), env_(std::move(env)) {}

  StateSet run(const FormulaPtr& f) {
    mark_closed(f);
    return eval(f);
  }

 private:
  // Records which nodes have no free variables; returns the free variables.
  std::set<VarName> mark_closed(const FormulaPtr& f) {
    std::set<VarName> free;
    switch (f->kind) {
      case Kind::var: free.insert(f->name); break;
      case Kind::lit:
      case Kind::prop:
      case Kind::atom: break;
      default:
        free = mark_closed(f->lhs);
        if (f->rhs) free.merge(mark_closed(f->rhs));
        if (f->kind == Kind::mu) free.erase(f->name);
    }
    closed_[f.get()] = free.empty();
    return free;
  }

  StateSet eval(const FormulaPtr& f) {
    const bool closed = closed_.at(f.get());
    if (closed) {
      if (auto it = memo_.find(f.get()); it != memo_.end()) return it->second;
    }
    StateSet out = compute(*f);
    if (closed) memo_.emplace(f.get(), out);
    return out;
  }

  StateSet compute(const Formula& f) {
    switch (f.kind) {
      case Kind::lit: return f.value ? ra_.full_set() : ra_.empty_set();
      case Kind::prop: return ra_.prop_set(f.name);
      case Kind::atom: return ra_.atom_set(f.atom);
      case Kind::var: return env_.at(f.name);
      case Kind::not_: return ~eval(f.lhs);
      case Kind::or_: return eval(f.lhs) | eval(f.rhs);
      case Kind::diamond: return diamond(f.actions, eval(f.lhs));
      case Kind::exists_rel: return exists_rel(eval(f.lhs), eval(f.rhs));
      case Kind::freeze: return freeze(f.name, eval(f.lhs));
      case Kind::mu: return mu(f.name, f.lhs);
    }
    return ra_.empty_set();
  }

  StateSet diamond(const ActionSet& k, const StateSet& target) const {
    std::vector<char> in_k;
    for (const auto& a : ra_.actions()) in_k.push_back(k.contains(a));
    StateSet out = ra_.empty_set();
    for (const auto& e : ra_.action_edges())
      if (in_k[e.action] && target.test(e.target)) out.set(e.source);
    return out;
  }

  // Least X with X = goal | (rel & eps-preimage(X)).
  StateSet exists_rel(const StateSet& rel, const StateSet& goal) const {
    StateSet out = goal;
    std::vector<StateId> work;
    for (auto s = out.find_first(); s != StateSet::npos; s = out.find_next(s)) work.push_back(static_cast<StateId>(s));
    while (!work.empty()) {
      StateId t = work.back();
      work.pop_back();
      for (StateId p : ra_.epsilon_predecessors(t))
        if (rel.test(p) && !out.test(p)) {
          out.set(p);
          work.push_back(p);
        }
    }
    return out;
  }

  StateSet freeze(const ClockName& z, const StateSet& operand) const {
    StateSet out = ra_.empty_set();
    for (StateId s = 0; s < ra_.size(); ++s)
      if (operand.test(ra_.reset(s, z))) out.set(s);
    return out;
  }

  StateSet mu(const VarName& y, const FormulaPtr& body) {
    std::optional<StateSet> saved;
    if (auto it = env_.find(y); it != env_.end()) saved = it->second;
    StateSet current = ra_.empty_set();
    for (;;) {
      env_[y] = current;
      StateSet next = eval(body);
      if (next == current) break;
      current = std::move(next);
    }
    if (saved)
      env_[y] = *saved;
    else
      env_.erase(y);
    return current;
  }

  const RegionAutomaton& ra_;
  Environment env_;
  std::unordered_map<const Formula*, bool> closed_;
  std::unordered_map<const Formula*, StateSet> memo_;
};

std::string point_text(const TimedAutomaton& ta, const ConcreteState& s) { return to_string(ta, s); }

}  // namespace

StateSet eval(const FormulaPtr& f, const RegionAutomaton& ra, const Environment& env) {
  require_preconditions(f, ra, env);
  return Evaluator(ra, env).run(f);
}

bool Verdict::holds_initially() const {
  if (initial_holds.empty()) return false;
  for (const auto& [s, holds] : initial_holds)
    if (!holds) return false;
  return true;
}

Verdict check(const TimedAutomaton& ta, std::string_view text, Logic logic, const std::vector<std::string>& points,
              const CheckOptions& options) {
  SurfaceFormula surface = parse(text, logic);
  TranslateOptions translate_options{.variant = options.variant, .policy = options.policy};
  translate_options.avoid.insert(ta.clocks.begin(), ta.clocks.end());
  translate_options.avoid.insert(ta.propositions.begin(), ta.propositions.end());

  Verdict v;
  v.formula = translate(surface, translate_options);
  for (const auto& z : freeze_clocks(v.formula))
    if (ta.clocks.contains(z)) throw SemanticError("freeze binds automaton clock '" + z + "'");
  try {
    v.ra = std::make_shared<const RegionAutomaton>(RegionAutomaton::build_relativized(ta, v.formula));
  } catch (const DomainError& e) {
    throw SemanticError(e.what());
  }
  v.full = eval(v.formula, *v.ra);
  const StateSet& initial = v.ra->initial();
  for (auto s = initial.find_first(); s != StateSet::npos; s = initial.find_next(s))
    v.initial_holds.emplace_back(static_cast<StateId>(s), v.full.test(s));

  for (const auto& spec : points) {
    ConcreteState given = parse_state(ta, spec);
    Valuation padded = given.valuation();
    for (const auto& c : v.ra->clocks())
      if (!padded.contains(c)) padded = padded.with(c, 0);
    ConcreteState state(ta, given.location(), padded);
    StateId abstract = v.ra->abs_state(state);
    v.points.push_back({given, abstract, v.full.test(abstract)});
  }
  return v;
}

std::string render_text(const TimedAutomaton& ta, const Verdict& v) {
  std::ostringstream out;
  out << "formula: " << print(v.formula) << "\n";
  out << "states: " << v.ra->size() << ", satisfying: " << v.full.count() << "\n";
  for (StateId s = 0; s < v.ra->size(); ++s)
    out << "  " << (v.full.test(s) ? "true " : "false") << "  " << v.ra->describe(s) << "\n";
  for (const auto& [s, holds] : v.initial_holds)
    out << "initial " << v.ra->describe(s) << ": " << (holds ? "true" : "false") << "\n";
  for (const auto& p : v.points) out << "point " << point_text(ta, p.state) << ": " << (p.holds ? "true" : "false") << "\n";
  return out.str();
}

std::string render_structured(const TimedAutomaton& ta, const Verdict& v) {
  nlohmann::ordered_json doc;
  doc["formula"] = print(v.formula);
  doc["states"] = v.ra->size();
  nlohmann::ordered_json by_location = nlohmann::ordered_json::object();
  for (StateId s = 0; s < v.ra->size(); ++s) {
    const auto& st = v.ra->state(s);
    by_location[ta.locations[st.location].name][v.ra->space().describe(st.region)] = v.full.test(s);
  }
  doc["holds"] = by_location;
  nlohmann::ordered_json initial = nlohmann::ordered_json::array();
  for (const auto& [s, holds] : v.initial_holds)
    initial.push_back({{"state", v.ra->describe(s)}, {"holds", holds}});
  doc["initial"] = initial;
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const auto& p : v.points)
    points.push_back({{"state", point_text(ta, p.state)}, {"region", v.ra->describe(p.abstract)}, {"holds", p.holds}});
  doc["points"] = points;
  return doc.dump(2) + "\n";
}

}  // namespace tmc
