#include "tmc/region_automaton.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace tmc {

std::shared_ptr<const RegionSpace> region_space(const ClockNames& clocks, unsigned d) {
  static std::mutex mutex;
  static std::map<std::pair<ClockNames, unsigned>, std::shared_ptr<const RegionSpace>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{clocks, d}];
  if (!slot) slot = std::make_shared<const RegionSpace>(clocks, d);
  return slot;
}

RegionAutomaton RegionAutomaton::build(const TimedAutomaton& ta, const ClockNames& extra_clocks, unsigned d) {
  for (const auto& z : extra_clocks)
    if (ta.clocks.contains(z)) throw DomainError("clock '" + z + "' is both an automaton and a formula clock");
  ClockNames clocks = ta.clocks;
  clocks.insert(extra_clocks.begin(), extra_clocks.end());

  RegionAutomaton ra;
  ra.ta_ = std::make_shared<const TimedAutomaton>(ta);
  ra.space_ = region_space(clocks, std::max(d, ta_bound(ta)));
  const RegionSpace& space = *ra.space_;
  const std::size_t regions = space.size();

  ra.index_.assign(ta.locations.size() * regions, kNoState);
  for (std::size_t l = 0; l < ta.locations.size(); ++l)
    for (RegionId r = 0; r < regions; ++r)
      if (space.satisfies(r, ta.locations[l].invariant)) {
        ra.index_[l * regions + r] = static_cast<StateId>(ra.states_.size());
        ra.states_.push_back({l, r});
      }

  const std::size_t n = ra.states_.size();
  ra.eps_succ_.assign(n, kNoState);
  ra.eps_pred_.assign(n, {});
  for (StateId s = 0; s < n; ++s) {
    const auto& [l, r] = ra.states_[s];
    StateId t = ra.find(l, space.tsucc(r));
    ra.eps_succ_[s] = t;
    if (t != kNoState) ra.eps_pred_[t].push_back(s);
  }

  std::map<Action, std::size_t> action_index;
  for (const auto& a : ta.sigma()) {
    action_index.emplace(a, ra.actions_.size());
    ra.actions_.push_back(a);
  }
  for (StateId s = 0; s < n; ++s) {
    const auto& [l, r] = ra.states_[s];
    for (const auto& edge : ta.edges) {
      if (edge.source != l || !space.satisfies(r, edge.guard)) continue;
      StateId t = ra.find(edge.target, space.reset(r, edge.resets));
      if (t != kNoState) ra.edges_.push_back({s, action_index.at(edge.action), t});
    }
  }

  ra.initial_ = StateSet(n);
  RegionId zero = space.region_of(Valuation::zero(clocks));
  for (std::size_t l = 0; l < ta.locations.size(); ++l)
    if (ta.locations[l].initial) {
      StateId s = ra.find(l, zero);
      if (s != kNoState) ra.initial_.set(s);
    }
  return ra;
}

RegionAutomaton RegionAutomaton::build_relativized(const TimedAutomaton& ta, const FormulaPtr& f) {
  ClockNames extra;
  for (const auto& c : formula_clocks(f))
    if (!ta.clocks.contains(c)) extra.insert(c);
  return build(ta, extra, formula_bound(f));
}

StateId RegionAutomaton::find(std::size_t location, RegionId region) const {
  return index_.at(location * space_->size() + region);
}

std::vector<std::string> RegionAutomaton::labels(StateId s) const {
  const auto& [l, r] = states_.at(s);
  std::vector<std::string> out(ta_->locations[l].props.begin(), ta_->locations[l].props.end());
  for (const auto& atom : space_->satisfied_atoms(r)) out.push_back(to_string(atom));
  return out;
}

StateSet RegionAutomaton::prop_set(const std::string& p) const {
  StateSet out(size());
  for (StateId s = 0; s < size(); ++s)
    if (ta_->locations[states_[s].location].props.contains(p)) out.set(s);
  return out;
}

StateSet RegionAutomaton::atom_set(const AtomicConstraint& atom) const {
  StateSet out(size());
  std::vector<char> holds(space_->size());
  for (RegionId r = 0; r < space_->size(); ++r) holds[r] = space_->satisfies(r, atom);
  for (StateId s = 0; s < size(); ++s)
    if (holds[states_[s].region]) out.set(s);
  return out;
}

StateId RegionAutomaton::reset(StateId s, const ClockName& z) const {
  const auto& [l, r] = states_.at(s);
  StateId t = find(l, space_->reset(r, {z}));
  if (t == kNoState) throw DomainError("reset of '" + z + "' leaves the location invariant");
  return t;
}

StateId RegionAutomaton::abs_state(const ConcreteState& s) const {
  StateId t = find(s.location(), space_->region_of(s.valuation()));
  if (t == kNoState) throw DomainError("concrete state is outside the automaton's state space");
  return t;
}

bool RegionAutomaton::contains_concretization(const StateSet& set, const ConcreteState& s) const {
  return set.test(abs_state(s));
}

std::string RegionAutomaton::describe(StateId s) const {
  const auto& [l, r] = states_.at(s);
  return ta_->locations[l].name + " | " + space_->describe(r);
}

std::string RegionAutomaton::to_dot() const {
  std::ostringstream out;
  out << "digraph \"" << (ta_->name.empty() ? "R" : ta_->name) << "\" {\n";
  out << "  node [shape=box];\n";
  for (StateId s = 0; s < size(); ++s) {
    out << "  s" << s << " [label=\"" << describe(s) << "\"";
    if (initial_.test(s)) out << ", peripheries=2";
    out << "];\n";
  }
  for (StateId s = 0; s < size(); ++s)
    if (eps_succ_[s] != kNoState) out << "  s" << s << " -> s" << eps_succ_[s] << " [style=dashed, label=\"ε\"];\n";
  for (const auto& e : edges_)
    out << "  s" << e.source << " -> s" << e.target << " [label=\"" << actions_[e.action] << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace tmc
