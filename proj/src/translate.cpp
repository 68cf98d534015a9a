#include "tmc/translate.hpp"

namespace tmc {

FreshClockPool::FreshClockPool(std::set<std::string> avoid, ClockPolicy policy)
    : avoid_(std::move(avoid)), policy_(policy) {}

std::string FreshClockPool::next_name(const std::string& prefix, unsigned& counter) {
  std::string out;
  do out = prefix + std::to_string(counter++);
  while (avoid_.contains(out));
  return out;
}

ClockName FreshClockPool::clock() {
  if (policy_ == ClockPolicy::shared) {
    if (!shared_) shared_ = next_name("_z", clocks_);
    return *shared_;
  }
  return next_name("_z", clocks_);
}

VarName FreshClockPool::variable() { return next_name("_X", vars_); }

FormulaPtr ts_formula(FreshClockPool& pool) {
  ClockName z = pool.clock();
  return core::freeze(z, core::forall(core::atom(AtomicConstraint::single(z, Rel::lt, 1))));
}

FormulaPtr au_template(const FormulaPtr& g1, const FormulaPtr& g2, FreshClockPool& pool) {
  return core::exists_rel(g1, core::lor(g2, core::land(ts_formula(pool), core::forall(g1))));
}

FormulaPtr tdiv_formula(FreshClockPool& pool) {
  ClockName z = pool.clock();
  VarName x = pool.variable();
  VarName y = pool.variable();
  FormulaPtr inner = core::mu(
      y, core::exists(core::lor(core::land(core::atom(AtomicConstraint::single(z, Rel::ge, 1)), core::var(x)),
                                core::diamond(ActionSet::everything(), core::var(y)))));
  return core::nu(x, core::freeze(z, inner));
}

FormulaPtr embed_n_au(const FormulaPtr& e1, const FormulaPtr& e2, FreshClockPool& pool) {
  VarName x = pool.variable();
  FormulaPtr step = core::land(e1, core::box(ActionSet::everything(), core::var(x)));
  return core::mu(x, au_template(core::implies(tdiv_formula(pool), step), e2, pool));
}

SurfacePtr expand_derived(const SurfacePtr& f) {
  using namespace surface;
  std::vector<SurfacePtr> args;
  for (const auto& a : f->args) args.push_back(expand_derived(a));
  auto neg = [](SurfacePtr g) { return unary(Op::not_, std::move(g)); };
  auto tt = [] { return leaf(Op::tt); };
  switch (f->op) {
    case Op::ar: return neg(binary(Op::eu, neg(args[0]), neg(args[1])));
    case Op::er: return neg(binary(Op::au, neg(args[0]), neg(args[1])));
    case Op::af: return binary(Op::au, tt(), args[0]);
    case Op::ef: return binary(Op::eu, tt(), args[0]);
    case Op::ag: return neg(binary(Op::eu, tt(), neg(args[0])));
    case Op::eg: return neg(binary(Op::au, tt(), neg(args[0])));
    default: break;
  }
  if (args.empty()) return f;
  auto copy = std::make_shared<Surface>(*f);
  copy->args = std::move(args);
  return copy;
}

std::string_view to_string(TctlVariant variant) {
  switch (variant) {
    case TctlVariant::general: return "general";
    case TctlVariant::tn: return "tn";
    case TctlVariant::n: return "n";
  }
  return "?";
}

TctlVariant parse_variant(std::string_view text) {
  for (auto v : {TctlVariant::general, TctlVariant::tn, TctlVariant::n})
    if (to_string(v) == text) return v;
  throw ParseError("unknown TCTL variant '" + std::string(text) + "'", 0);
}

namespace {

FormulaPtr embed_with(const SurfacePtr& f, FreshClockPool& pool, TctlVariant variant) {
  return lower(expand_derived(f), [&](const Surface& node, const Lowering& rec) -> FormulaPtr {
    const auto all = ActionSet::everything();
    FormulaPtr e1 = rec(node.args.at(0));
    FormulaPtr e2 = rec(node.args.at(1));
    if (node.op == Op::eu) {
      VarName x = pool.variable();
      FormulaPtr goal = variant == TctlVariant::tn ? e2 : core::land(e2, tdiv_formula(pool));
      return core::mu(x, core::exists_rel(e1, core::lor(goal, core::land(e1, core::diamond(all, core::var(x))))));
    }
    if (node.op != Op::au) throw ParseError("operator '" + std::string(op_name(node.op)) + "' is not TCTL", 0);
    if (variant == TctlVariant::tn) {
      VarName x = pool.variable();
      return core::mu(x, au_template(core::land(e1, core::box(all, core::var(x))), e2, pool));
    }
    if (variant == TctlVariant::n) return embed_n_au(e1, e2, pool);
    VarName x = pool.variable();
    VarName y = pool.variable();
    ClockName z = pool.clock();
    FormulaPtr one = core::atom(AtomicConstraint::single(z, Rel::ge, 1));
    FormulaPtr step = core::land(core::land(e1, core::implies(one, core::box(all, core::var(x)))),
                                 core::implies(core::atom(AtomicConstraint::single(z, Rel::lt, 1)),
                                               core::box(all, core::var(y))));
    FormulaPtr body = au_template(core::implies(tdiv_formula(pool), step), e2, pool);
    return core::mu(x, core::freeze(z, core::nu(y, body)));
  });
}

// The reference calculus's own operators plus the until-style connectives of
// the other mu-calculi.
FormulaPtr calculus_extension(const Surface& node, const Lowering& rec) {
  FormulaPtr a = rec(node.args.at(0));
  FormulaPtr b = rec(node.args.at(1));
  switch (node.op) {
    case Op::until_s: return core::exists_rel(a, b);
    case Op::until_w: return core::lor(core::exists_rel(a, b), core::forall(a));
    case Op::trigger: {
      FormulaPtr either = core::lor(a, b);
      return core::exists_rel(either, core::land(either, core::diamond(ActionSet::everything(), b)));
    }
    default: throw ParseError("operator '" + std::string(op_name(node.op)) + "' has no core rendering", 0);
  }
}

void require_logic(const SurfaceFormula& f, Logic logic) {
  if (f.logic != logic)
    throw ParseError("expected a " + std::string(to_string(logic)) + " formula, got " +
                         std::string(to_string(f.logic)),
                     0);
}

void collect_names(const SurfacePtr& f, std::set<std::string>& out) {
  if (!f->name.empty()) out.insert(f->name);
  if (f->op == Op::atom) out.merge(clock_set(f->atom));
  for (const auto& a : f->args) collect_names(a, out);
}

}  // namespace

std::set<std::string> surface_names(const SurfacePtr& f) {
  std::set<std::string> out;
  collect_names(f, out);
  return out;
}

FormulaPtr embed(const SurfacePtr& tctl, FreshClockPool& pool) {
  return embed_with(tctl, pool, TctlVariant::general);
}

FormulaPtr embed_tn(const SurfacePtr& tctl, FreshClockPool& pool) { return embed_with(tctl, pool, TctlVariant::tn); }

FormulaPtr from_lnu(const SurfaceFormula& f) {
  require_logic(f, Logic::lnu);
  return lower(f.root, nullptr);
}

FormulaPtr from_lmunu(const SurfaceFormula& f) {
  require_logic(f, Logic::lmunu);
  return lower(f.root, nullptr);
}

FormulaPtr from_lc(const SurfaceFormula& f) {
  require_logic(f, Logic::lc);
  return lower(f.root, calculus_extension);
}

FormulaPtr from_tmu(const SurfaceFormula& f) {
  require_logic(f, Logic::tmu);
  return lower(f.root, calculus_extension);
}

FormulaPtr translate(const SurfaceFormula& f, const TranslateOptions& options) {
  switch (f.logic) {
    case Logic::lrel: return desugar(f);
    case Logic::lnu: return from_lnu(f);
    case Logic::lmunu: return from_lmunu(f);
    case Logic::lc: return from_lc(f);
    case Logic::tmu: return from_tmu(f);
    case Logic::tctl: {
      std::set<std::string> avoid = options.avoid;
      avoid.merge(surface_names(f.root));
      FreshClockPool pool(std::move(avoid), options.policy);
      return embed_with(f.root, pool, options.variant);
    }
  }
  return nullptr;
}

}  // namespace tmc
