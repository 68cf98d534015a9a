#pragma once

// Formulas: the core timed mu-calculus, the surface syntaxes of the six
// supported logics, parsing, printing and structural metrics.

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tmc/automaton.hpp"
#include "tmc/clocks.hpp"

namespace tmc {

using VarName = std::string;

// K in <K> and [K]; `all` stands for the whole action sort.
struct ActionSet {
  bool all = true;
  std::set<Action> names;

  static ActionSet everything() { return {}; }
  static ActionSet of(std::set<Action> names) { return {false, std::move(names)}; }
  bool contains(const Action& a) const { return all || names.contains(a); }
  auto operator<=>(const ActionSet&) const = default;
};

std::string to_string(const ActionSet& k);

// ---------------------------------------------------------------------------
// Core calculus. Nodes are immutable and shared.

enum class Kind : std::uint8_t { lit, prop, atom, var, not_, or_, diamond, exists_rel, freeze, mu };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Kind kind = Kind::lit;
  bool value = false;     // lit
  std::string name;       // prop, var, freeze clock, mu binder
  AtomicConstraint atom;  // atom
  ActionSet actions;      // diamond
  FormulaPtr lhs;         // not, or, diamond, exists_rel (relativizer), freeze, mu
  FormulaPtr rhs;         // or, exists_rel (target)
};

namespace core {

FormulaPtr tt();
FormulaPtr ff();
FormulaPtr lit(bool value);
FormulaPtr prop(const std::string& p);
FormulaPtr atom(AtomicConstraint a);
FormulaPtr var(const VarName& y);
// Negation cancelling double negation and negated literals.
FormulaPtr neg(const FormulaPtr& f);
// Negation node exactly as written.
FormulaPtr raw_neg(const FormulaPtr& f);
FormulaPtr lor(const FormulaPtr& a, const FormulaPtr& b);
FormulaPtr diamond(ActionSet k, const FormulaPtr& f);
FormulaPtr exists_rel(const FormulaPtr& rel, const FormulaPtr& target);
FormulaPtr freeze(const ClockName& z, const FormulaPtr& f);
FormulaPtr mu(const VarName& y, const FormulaPtr& f);

// Duals, expanded on construction.
FormulaPtr land(const FormulaPtr& a, const FormulaPtr& b);
FormulaPtr box(ActionSet k, const FormulaPtr& f);
FormulaPtr forall_rel(const FormulaPtr& rel, const FormulaPtr& target);
FormulaPtr nu(const VarName& y, const FormulaPtr& f);
FormulaPtr implies(const FormulaPtr& a, const FormulaPtr& b);
// Unary time modalities: exists = E{tt}, forall = A{ff}.
FormulaPtr exists(const FormulaPtr& f);
FormulaPtr forall(const FormulaPtr& f);
// Conjunction of the atoms; tt when empty, ff on contradiction.
FormulaPtr constraint(const ClockConstraint& c);

}  // namespace core

// Replaces free occurrences of y by `with`. Binders are not renamed; callers
// only substitute formulas whose free variables are not captured.
FormulaPtr substitute(const FormulaPtr& f, const VarName& y, const FormulaPtr& with);

unsigned formula_bound(const FormulaPtr& f);
ClockNames formula_clocks(const FormulaPtr& f);
// Clocks with an occurrence not under a freeze binder for them.
ClockNames free_clocks(const FormulaPtr& f);
ClockNames freeze_clocks(const FormulaPtr& f);
std::set<VarName> free_vars(const FormulaPtr& f);
std::set<std::string> formula_props(const FormulaPtr& f);
std::vector<AtomicConstraint> formula_atoms(const FormulaPtr& f);
bool has_fixpoint(const FormulaPtr& f);
std::size_t formula_size(const FormulaPtr& f);

struct MonotonicityError {
  VarName binder;
  std::string path;  // e.g. "mu X > ! > X"
};
std::optional<MonotonicityError> validate_monotone(const FormulaPtr& f);

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b);
// Fully parenthesized in the shared grammar; parses back under `lrel`.
std::string print(const FormulaPtr& f);

// ---------------------------------------------------------------------------
// Surface syntax.

enum class Logic : std::uint8_t { lrel, lnu, lmunu, lc, tmu, tctl };

std::string_view to_string(Logic logic);
Logic parse_logic(std::string_view tag);

enum class Op : std::uint8_t {
  tt, ff, prop, atom, var,
  not_, or_, and_,
  diamond, box,
  exists_rel, forall_rel, exists, forall,
  until_s, until_w, trigger,
  eu, au, er, ar, ef, af, eg, ag,
  freeze, mu, nu,
};

std::string_view op_name(Op op);

struct Surface;
using SurfacePtr = std::shared_ptr<const Surface>;

struct Surface {
  Op op = Op::tt;
  std::string name;       // prop, var, freeze clock, binder
  AtomicConstraint atom;  // atom
  ActionSet actions;      // diamond, box
  std::vector<SurfacePtr> args;
};

namespace surface {
SurfacePtr leaf(Op op, std::string name = {});
SurfacePtr atom(AtomicConstraint a);
SurfacePtr unary(Op op, SurfacePtr arg, std::string name = {});
SurfacePtr modal(Op op, ActionSet k, SurfacePtr arg);
SurfacePtr binary(Op op, SurfacePtr lhs, SurfacePtr rhs);
}  // namespace surface

struct SurfaceFormula {
  Logic logic = Logic::lrel;
  SurfacePtr root;
};

bool allowed(Logic logic, Op op);

// Syntax errors and operators outside the logic raise ParseError with a
// 0-based offset. Bare identifiers are variables when bound by an enclosing
// mu/nu and propositions otherwise; re-bound variable names are renamed.
SurfaceFormula parse(std::string_view text, Logic logic);
std::string print(const SurfaceFormula& f);
std::string print(const SurfacePtr& f);
bool structurally_equal(const SurfacePtr& a, const SurfacePtr& b);

// Structural lowering to the core calculus. Operators of the reference
// calculus and its duals are handled here; `extension` receives every other
// operator together with a callback lowering sub-formulas.
using Lowering = std::function<FormulaPtr(const SurfacePtr&)>;
using Extension = std::function<FormulaPtr(const Surface&, const Lowering&)>;
FormulaPtr lower(const SurfacePtr& f, const Extension& extension);

// Core rendering of an lrel surface formula with all duals expanded.
FormulaPtr desugar(const SurfaceFormula& f);

}  // namespace tmc
