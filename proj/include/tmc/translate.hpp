#pragma once

// Encodings of the surface logics and of TCTL into the core calculus.

#include <string>

#include "tmc/logic.hpp"

namespace tmc {

// How reserved freeze clocks are chosen for TS, TDIV and the A-until clock.
//   fresh:  every instance draws a clock never used before in the run, so it
//           is disjoint from every clock of the surrounding formula.
//   shared: every instance uses the same reserved clock. Each use is bound by
//           its own freeze operator, TS and TDIV mention no other clock, and
//           the A-until arguments never contain the reserved clock free, so no
//           occurrence is captured. Keeps region automata one clock wide.
enum class ClockPolicy : std::uint8_t { shared, fresh };

// Reserved names `_z<i>` for clocks and `_X<i>` for variables, skipping any
// name in `avoid`. Confined to a single translation run.
class FreshClockPool {
 public:
  explicit FreshClockPool(std::set<std::string> avoid = {}, ClockPolicy policy = ClockPolicy::shared);

  ClockName clock();
  VarName variable();
  ClockPolicy policy() const { return policy_; }

 private:
  std::string next_name(const std::string& prefix, unsigned& counter);

  std::set<std::string> avoid_;
  ClockPolicy policy_;
  unsigned clocks_ = 0;
  unsigned vars_ = 0;
  std::optional<ClockName> shared_;
};

// TS = z.(forall z < 1)
FormulaPtr ts_formula(FreshClockPool& pool);
// au(g1, g2) = E{g1}(g2 | (TS & forall g1))
FormulaPtr au_template(const FormulaPtr& g1, const FormulaPtr& g2, FreshClockPool& pool);
// TDIV = nu X. z.(mu Y. exists((z >= 1 & X) | <*>Y))
FormulaPtr tdiv_formula(FreshClockPool& pool);
// mu X. au(TDIV => (e1 & [*]X), e2)
FormulaPtr embed_n_au(const FormulaPtr& e1, const FormulaPtr& e2, FreshClockPool& pool);

// Rewrites ER/AR/EF/AF/EG/AG into EU, AU and negation.
SurfacePtr expand_derived(const SurfacePtr& tctl);

enum class TctlVariant : std::uint8_t {
  general,  // correct on every automaton
  tn,       // correct on timelock-free, non-Zeno automata
  n,        // general E-until, A-until without the outer clock (misses Zeno runs)
};

std::string_view to_string(TctlVariant variant);
TctlVariant parse_variant(std::string_view text);

FormulaPtr embed(const SurfacePtr& tctl, FreshClockPool& pool);
FormulaPtr embed_tn(const SurfacePtr& tctl, FreshClockPool& pool);

FormulaPtr from_lnu(const SurfaceFormula& f);
FormulaPtr from_lmunu(const SurfaceFormula& f);
FormulaPtr from_lc(const SurfaceFormula& f);
FormulaPtr from_tmu(const SurfaceFormula& f);

struct TranslateOptions {
  TctlVariant variant = TctlVariant::general;
  ClockPolicy policy = ClockPolicy::shared;
  // Names the generated clocks and variables must not use, e.g. automaton clocks.
  std::set<std::string> avoid;
};

// Dispatches on the formula's logic.
FormulaPtr translate(const SurfaceFormula& f, const TranslateOptions& options = {});

// Every identifier occurring in a surface formula.
std::set<std::string> surface_names(const SurfacePtr& f);

}  // namespace tmc
