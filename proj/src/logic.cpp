#include "tmc/logic.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace tmc {

std::string to_string(const ActionSet& k) {
  if (k.all) return "*";
  std::string out;
  for (const auto& a : k.names) {
    if (!out.empty()) out += ",";
    out += a;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Core constructors.

namespace core {

namespace {

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

}  // namespace

FormulaPtr lit(bool value) {
  static const FormulaPtr t = make({.kind = Kind::lit, .value = true});
  static const FormulaPtr f = make({.kind = Kind::lit, .value = false});
  return value ? t : f;
}
FormulaPtr tt() { return lit(true); }
FormulaPtr ff() { return lit(false); }

FormulaPtr prop(const std::string& p) { return make({.kind = Kind::prop, .name = p}); }
FormulaPtr atom(AtomicConstraint a) { return make({.kind = Kind::atom, .atom = std::move(a)}); }
FormulaPtr var(const VarName& y) { return make({.kind = Kind::var, .name = y}); }

FormulaPtr raw_neg(const FormulaPtr& f) { return make({.kind = Kind::not_, .lhs = f}); }

FormulaPtr neg(const FormulaPtr& f) {
  if (f->kind == Kind::not_) return f->lhs;
  if (f->kind == Kind::lit) return lit(!f->value);
  return raw_neg(f);
}

FormulaPtr lor(const FormulaPtr& a, const FormulaPtr& b) { return make({.kind = Kind::or_, .lhs = a, .rhs = b}); }

FormulaPtr diamond(ActionSet k, const FormulaPtr& f) {
  return make({.kind = Kind::diamond, .actions = std::move(k), .lhs = f});
}

FormulaPtr exists_rel(const FormulaPtr& rel, const FormulaPtr& target) {
  return make({.kind = Kind::exists_rel, .lhs = rel, .rhs = target});
}

FormulaPtr freeze(const ClockName& z, const FormulaPtr& f) { return make({.kind = Kind::freeze, .name = z, .lhs = f}); }
FormulaPtr mu(const VarName& y, const FormulaPtr& f) { return make({.kind = Kind::mu, .name = y, .lhs = f}); }

FormulaPtr land(const FormulaPtr& a, const FormulaPtr& b) { return neg(lor(neg(a), neg(b))); }
FormulaPtr box(ActionSet k, const FormulaPtr& f) { return neg(diamond(std::move(k), neg(f))); }
FormulaPtr forall_rel(const FormulaPtr& rel, const FormulaPtr& target) {
  return neg(exists_rel(neg(rel), neg(target)));
}
FormulaPtr nu(const VarName& y, const FormulaPtr& f) { return neg(mu(y, neg(substitute(f, y, neg(var(y)))))); }
FormulaPtr implies(const FormulaPtr& a, const FormulaPtr& b) { return lor(neg(a), b); }
FormulaPtr exists(const FormulaPtr& f) { return exists_rel(tt(), f); }
FormulaPtr forall(const FormulaPtr& f) { return forall_rel(ff(), f); }

FormulaPtr constraint(const ClockConstraint& c) {
  if (c.contradiction) return ff();
  FormulaPtr out;
  for (const auto& a : c.conjuncts) out = out ? land(out, atom(a)) : atom(a);
  return out ? out : tt();
}

}  // namespace core

// ---------------------------------------------------------------------------
// Structural operations on core formulas.

FormulaPtr substitute(const FormulaPtr& f, const VarName& y, const FormulaPtr& with) {
  switch (f->kind) {
    case Kind::lit:
    case Kind::prop:
    case Kind::atom: return f;
    case Kind::var: return f->name == y ? with : f;
    case Kind::not_: {
      auto a = substitute(f->lhs, y, with);
      return a == f->lhs ? f : core::neg(a);
    }
    case Kind::or_: {
      auto a = substitute(f->lhs, y, with);
      auto b = substitute(f->rhs, y, with);
      return a == f->lhs && b == f->rhs ? f : core::lor(a, b);
    }
    case Kind::diamond: {
      auto a = substitute(f->lhs, y, with);
      return a == f->lhs ? f : core::diamond(f->actions, a);
    }
    case Kind::exists_rel: {
      auto a = substitute(f->lhs, y, with);
      auto b = substitute(f->rhs, y, with);
      return a == f->lhs && b == f->rhs ? f : core::exists_rel(a, b);
    }
    case Kind::freeze: {
      auto a = substitute(f->lhs, y, with);
      return a == f->lhs ? f : core::freeze(f->name, a);
    }
    case Kind::mu: {
      if (f->name == y) return f;
      auto a = substitute(f->lhs, y, with);
      return a == f->lhs ? f : core::mu(f->name, a);
    }
  }
  return f;
}

namespace {

template <typename Visit>
void walk(const FormulaPtr& f, Visit&& visit) {
  visit(*f);
  if (f->lhs) walk(f->lhs, visit);
  if (f->rhs) walk(f->rhs, visit);
}

void collect_free_clocks(const FormulaPtr& f, ClockNames& bound, ClockNames& out) {
  if (f->kind == Kind::atom) {
    for (const auto& c : clock_set(f->atom))
      if (!bound.contains(c)) out.insert(c);
    return;
  }
  if (f->kind == Kind::freeze) {
    bool fresh = bound.insert(f->name).second;
    collect_free_clocks(f->lhs, bound, out);
    if (fresh) bound.erase(f->name);
    return;
  }
  if (f->lhs) collect_free_clocks(f->lhs, bound, out);
  if (f->rhs) collect_free_clocks(f->rhs, bound, out);
}

void collect_free_vars(const FormulaPtr& f, std::set<VarName>& bound, std::set<VarName>& out) {
  if (f->kind == Kind::var) {
    if (!bound.contains(f->name)) out.insert(f->name);
    return;
  }
  if (f->kind == Kind::mu) {
    bool fresh = bound.insert(f->name).second;
    collect_free_vars(f->lhs, bound, out);
    if (fresh) bound.erase(f->name);
    return;
  }
  if (f->lhs) collect_free_vars(f->lhs, bound, out);
  if (f->rhs) collect_free_vars(f->rhs, bound, out);
}

}  // namespace

unsigned formula_bound(const FormulaPtr& f) {
  unsigned out = 0;
  walk(f, [&](const Formula& n) {
    if (n.kind == Kind::atom) out = std::max(out, bound(n.atom));
  });
  return out;
}

ClockNames formula_clocks(const FormulaPtr& f) {
  ClockNames out;
  walk(f, [&](const Formula& n) {
    if (n.kind == Kind::atom) out.merge(clock_set(n.atom));
    if (n.kind == Kind::freeze) out.insert(n.name);
  });
  return out;
}

ClockNames free_clocks(const FormulaPtr& f) {
  ClockNames bound;
  ClockNames out;
  collect_free_clocks(f, bound, out);
  return out;
}

ClockNames freeze_clocks(const FormulaPtr& f) {
  ClockNames out;
  walk(f, [&](const Formula& n) {
    if (n.kind == Kind::freeze) out.insert(n.name);
  });
  return out;
}

std::set<VarName> free_vars(const FormulaPtr& f) {
  std::set<VarName> bound;
  std::set<VarName> out;
  collect_free_vars(f, bound, out);
  return out;
}

std::set<std::string> formula_props(const FormulaPtr& f) {
  std::set<std::string> out;
  walk(f, [&](const Formula& n) {
    if (n.kind == Kind::prop) out.insert(n.name);
  });
  return out;
}

std::vector<AtomicConstraint> formula_atoms(const FormulaPtr& f) {
  std::set<AtomicConstraint> seen;
  walk(f, [&](const Formula& n) {
    if (n.kind == Kind::atom) seen.insert(n.atom);
  });
  return {seen.begin(), seen.end()};
}

bool has_fixpoint(const FormulaPtr& f) {
  bool out = false;
  walk(f, [&](const Formula& n) { out = out || n.kind == Kind::mu || n.kind == Kind::var; });
  return out;
}

std::size_t formula_size(const FormulaPtr& f) {
  std::size_t out = 0;
  walk(f, [&](const Formula&) { ++out; });
  return out;
}

namespace {

std::string kind_label(const Formula& f) {
  switch (f.kind) {
    case Kind::lit: return f.value ? "tt" : "ff";
    case Kind::prop: return f.name;
    case Kind::atom: return to_string(f.atom);
    case Kind::var: return f.name;
    case Kind::not_: return "!";
    case Kind::or_: return "|";
    case Kind::diamond: return "<" + to_string(f.actions) + ">";
    case Kind::exists_rel: return "E";
    case Kind::freeze: return f.name + ".";
    case Kind::mu: return "mu " + f.name;
  }
  return "?";
}

struct ParityFrame {
  VarName name;
  unsigned negations;
};

std::optional<MonotonicityError> check_parity(const FormulaPtr& f, unsigned negations,
                                              std::vector<ParityFrame>& scope, std::vector<std::string>& path) {
  path.push_back(kind_label(*f));
  std::optional<MonotonicityError> out;
  switch (f->kind) {
    case Kind::var: {
      for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
        if (it->name != f->name) continue;
        if ((negations - it->negations) % 2 != 0) {
          std::string joined;
          for (const auto& step : path) joined += (joined.empty() ? "" : " > ") + step;
          out = MonotonicityError{f->name, joined};
        }
        break;
      }
      break;
    }
    case Kind::not_: out = check_parity(f->lhs, negations + 1, scope, path); break;
    case Kind::mu:
      scope.push_back({f->name, negations});
      out = check_parity(f->lhs, negations, scope, path);
      scope.pop_back();
      break;
    default:
      if (f->lhs) out = check_parity(f->lhs, negations, scope, path);
      if (!out && f->rhs) out = check_parity(f->rhs, negations, scope, path);
  }
  path.pop_back();
  return out;
}

}  // namespace

std::optional<MonotonicityError> validate_monotone(const FormulaPtr& f) {
  std::vector<ParityFrame> scope;
  std::vector<std::string> path;
  return check_parity(f, 0, scope, path);
}

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::lit: return a->value == b->value;
    case Kind::prop:
    case Kind::var: return a->name == b->name;
    case Kind::atom: return a->atom == b->atom;
    case Kind::diamond:
      if (a->actions != b->actions) return false;
      break;
    case Kind::freeze:
    case Kind::mu:
      if (a->name != b->name) return false;
      break;
    default: break;
  }
  return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
}

std::string print(const FormulaPtr& f) {
  switch (f->kind) {
    case Kind::lit: return f->value ? "tt" : "ff";
    case Kind::prop:
    case Kind::var: return f->name;
    case Kind::atom: return to_string(f->atom);
    case Kind::not_: return "(!" + print(f->lhs) + ")";
    case Kind::or_: return "(" + print(f->lhs) + " | " + print(f->rhs) + ")";
    case Kind::diamond: return "(<" + to_string(f->actions) + ">" + print(f->lhs) + ")";
    case Kind::exists_rel: return "(E{" + print(f->lhs) + "}" + print(f->rhs) + ")";
    case Kind::freeze: return "(" + f->name + "." + print(f->lhs) + ")";
    case Kind::mu: return "(mu " + f->name + "." + print(f->lhs) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Surface syntax.

std::string_view to_string(Logic logic) {
  switch (logic) {
    case Logic::lrel: return "lrel";
    case Logic::lnu: return "lnu";
    case Logic::lmunu: return "lmunu";
    case Logic::lc: return "lc";
    case Logic::tmu: return "tmu";
    case Logic::tctl: return "tctl";
  }
  return "?";
}

Logic parse_logic(std::string_view tag) {
  for (Logic l : {Logic::lrel, Logic::lnu, Logic::lmunu, Logic::lc, Logic::tmu, Logic::tctl})
    if (to_string(l) == tag) return l;
  throw ParseError("unknown logic '" + std::string(tag) + "'", 0);
}

std::string_view op_name(Op op) {
  switch (op) {
    case Op::tt: return "tt";
    case Op::ff: return "ff";
    case Op::prop: return "proposition";
    case Op::atom: return "clock constraint";
    case Op::var: return "variable";
    case Op::not_: return "!";
    case Op::or_: return "|";
    case Op::and_: return "&";
    case Op::diamond: return "<K>";
    case Op::box: return "[K]";
    case Op::exists_rel: return "E{}";
    case Op::forall_rel: return "A{}";
    case Op::exists: return "exists";
    case Op::forall: return "forall";
    case Op::until_s: return "~s";
    case Op::until_w: return "~w";
    case Op::trigger: return "|>";
    case Op::eu: return "EU";
    case Op::au: return "AU";
    case Op::er: return "ER";
    case Op::ar: return "AR";
    case Op::ef: return "EF";
    case Op::af: return "AF";
    case Op::eg: return "EG";
    case Op::ag: return "AG";
    case Op::freeze: return "freeze";
    case Op::mu: return "mu";
    case Op::nu: return "nu";
  }
  return "?";
}

bool allowed(Logic logic, Op op) {
  using enum Op;
  auto in = [op](std::initializer_list<Op> ops) { return std::find(ops.begin(), ops.end(), op) != ops.end(); };
  switch (logic) {
    case Logic::lrel:
      return in({tt, ff, prop, atom, var, not_, or_, and_, diamond, box, exists_rel, forall_rel, exists, forall,
                 freeze, mu, nu});
    case Logic::lnu: return in({tt, ff, atom, var, or_, and_, diamond, box, exists, forall, freeze, nu});
    case Logic::lmunu:
      return in({tt, ff, prop, atom, var, not_, or_, and_, diamond, box, exists, forall, freeze, mu, nu});
    case Logic::lc: return in({tt, ff, prop, atom, var, or_, and_, diamond, box, until_s, until_w, freeze, nu});
    case Logic::tmu: return in({tt, ff, prop, atom, var, not_, or_, and_, trigger, freeze, mu});
    case Logic::tctl: return in({tt, ff, prop, atom, not_, or_, and_, eu, au, er, ar, ef, af, eg, ag, freeze});
  }
  return false;
}

namespace surface {

namespace {
SurfacePtr make(Surface s) { return std::make_shared<const Surface>(std::move(s)); }
}  // namespace

SurfacePtr leaf(Op op, std::string name) { return make({.op = op, .name = std::move(name)}); }
SurfacePtr atom(AtomicConstraint a) { return make({.op = Op::atom, .atom = std::move(a)}); }
SurfacePtr unary(Op op, SurfacePtr arg, std::string name) {
  return make({.op = op, .name = std::move(name), .args = {std::move(arg)}});
}
SurfacePtr modal(Op op, ActionSet k, SurfacePtr arg) {
  return make({.op = op, .actions = std::move(k), .args = {std::move(arg)}});
}
SurfacePtr binary(Op op, SurfacePtr lhs, SurfacePtr rhs) {
  return make({.op = op, .args = {std::move(lhs), std::move(rhs)}});
}

}  // namespace surface

namespace {

enum class Tok : std::uint8_t {
  ident, nat, lparen, rparen, lbrace, rbrace, lbrack, rbrack,
  lt, le, gt, ge, eq, bang, bar, amp, comma, dot, star, minus,
  until_s, until_w, trigger, end,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char ch = static_cast<unsigned char>(s[i]);
    if (std::isspace(ch)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(ch) || ch == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\'')) ++i;
      out.push_back({Tok::ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isdigit(ch)) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::nat, std::string(s.substr(start, i - start)), start});
      continue;
    }
    auto two = s.substr(i, 2);
    Tok kind;
    std::size_t width = 1;
    if (two == "<=") kind = Tok::le, width = 2;
    else if (two == ">=") kind = Tok::ge, width = 2;
    else if (two == "|>") kind = Tok::trigger, width = 2;
    else if (two == "~s") kind = Tok::until_s, width = 2;
    else if (two == "~w") kind = Tok::until_w, width = 2;
    else {
      switch (ch) {
        case '(': kind = Tok::lparen; break;
        case ')': kind = Tok::rparen; break;
        case '{': kind = Tok::lbrace; break;
        case '}': kind = Tok::rbrace; break;
        case '[': kind = Tok::lbrack; break;
        case ']': kind = Tok::rbrack; break;
        case '<': kind = Tok::lt; break;
        case '>': kind = Tok::gt; break;
        case '=': kind = Tok::eq; break;
        case '!': kind = Tok::bang; break;
        case '|': kind = Tok::bar; break;
        case '&': kind = Tok::amp; break;
        case ',': kind = Tok::comma; break;
        case '.': kind = Tok::dot; break;
        case '*': kind = Tok::star; break;
        case '-': kind = Tok::minus; break;
        default: throw ParseError("unexpected character '" + std::string(1, s[i]) + "' at offset " +
                                      std::to_string(i), i);
      }
    }
    out.push_back({kind, std::string(s.substr(i, width)), i});
    i += width;
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"tt", "ff", "mu", "nu", "exists", "forall", "EU", "AU",
                                          "ER", "AR", "EF", "AF", "EG", "AG"};
  return k;
}

class Parser {
 public:
  Parser(std::string_view text, Logic logic) : tokens_(lex(text)), logic_(logic) {
    for (const auto& t : tokens_)
      if (t.kind == Tok::ident) identifiers_.insert(t.text);
  }

  SurfacePtr parse() {
    auto out = binary();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return out;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
  const Token& next() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  void expect(Tok kind, const std::string& what) {
    if (!accept(kind)) fail("expected " + what);
  }
  [[noreturn]] void fail(const std::string& what) const {
    const auto& t = peek();
    throw ParseError(what + " at offset " + std::to_string(t.pos), t.pos);
  }
  bool is_ident(std::string_view text, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::ident && peek(ahead).text == text;
  }
  void require(Op op, std::size_t pos) const {
    if (!allowed(logic_, op))
      throw ParseError("operator '" + std::string(op_name(op)) + "' is not part of logic " +
                           std::string(to_string(logic_)) + " (offset " + std::to_string(pos) + ")",
                       pos);
  }

  SurfacePtr binary() {
    auto lhs = disjunction();
    Op op;
    switch (peek().kind) {
      case Tok::until_s: op = Op::until_s; break;
      case Tok::until_w: op = Op::until_w; break;
      case Tok::trigger: op = Op::trigger; break;
      default: return lhs;
    }
    require(op, peek().pos);
    next();
    return surface::binary(op, lhs, binary());
  }

  SurfacePtr disjunction() {
    auto lhs = conjunction();
    while (peek().kind == Tok::bar) {
      require(Op::or_, peek().pos);
      next();
      lhs = surface::binary(Op::or_, lhs, conjunction());
    }
    return lhs;
  }

  SurfacePtr conjunction() {
    auto lhs = unary();
    while (peek().kind == Tok::amp) {
      require(Op::and_, peek().pos);
      next();
      lhs = surface::binary(Op::and_, lhs, unary());
    }
    return lhs;
  }

  ActionSet actions(Tok close) {
    if (accept(Tok::star)) {
      expect(close, close == Tok::gt ? "'>'" : "']'");
      return ActionSet::everything();
    }
    std::set<Action> names;
    do {
      if (peek().kind != Tok::ident) fail("expected action name");
      names.insert(next().text);
    } while (accept(Tok::comma));
    expect(close, close == Tok::gt ? "'>'" : "']'");
    return ActionSet::of(std::move(names));
  }

  SurfacePtr unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::bang: {
        require(Op::not_, t.pos);
        next();
        auto arg = unary();
        if (logic_ == Logic::lmunu && arg->op != Op::prop)
          throw ParseError("negation in lmunu applies to propositions only (offset " + std::to_string(t.pos) + ")",
                           t.pos);
        return surface::unary(Op::not_, arg);
      }
      case Tok::lt: {
        require(Op::diamond, t.pos);
        next();
        auto k = actions(Tok::gt);
        return surface::modal(Op::diamond, std::move(k), unary());
      }
      case Tok::lbrack: {
        require(Op::box, t.pos);
        next();
        auto k = actions(Tok::rbrack);
        return surface::modal(Op::box, std::move(k), unary());
      }
      case Tok::ident: break;
      default: return primary();
    }
    if ((t.text == "E" || t.text == "A") && peek(1).kind == Tok::lbrace) {
      Op op = t.text == "E" ? Op::exists_rel : Op::forall_rel;
      require(op, t.pos);
      pos_ += 2;
      auto rel = binary();
      expect(Tok::rbrace, "'}'");
      return surface::binary(op, rel, unary());
    }
    static const std::map<std::string, Op> prefix = {{"exists", Op::exists}, {"forall", Op::forall},
                                                     {"EF", Op::ef},         {"AF", Op::af},
                                                     {"EG", Op::eg},         {"AG", Op::ag}};
    if (auto it = prefix.find(t.text); it != prefix.end()) {
      require(it->second, t.pos);
      next();
      return surface::unary(it->second, unary());
    }
    if (t.text == "mu" || t.text == "nu") {
      Op op = t.text == "mu" ? Op::mu : Op::nu;
      require(op, t.pos);
      next();
      if (peek().kind != Tok::ident || keywords().contains(peek().text)) fail("expected variable name");
      std::string original = next().text;
      expect(Tok::dot, "'.'");
      std::string renamed = fresh_binder(original);
      scope_.push_back({original, renamed});
      auto body = binary();
      scope_.pop_back();
      return surface::unary(op, body, renamed);
    }
    if (!keywords().contains(t.text) && peek(1).kind == Tok::dot) {
      require(Op::freeze, t.pos);
      std::string z = next().text;
      next();
      return surface::unary(Op::freeze, binary(), z);
    }
    return primary();
  }

  std::string fresh_binder(const std::string& name) {
    std::string out = name;
    for (unsigned i = 1; binders_.contains(out) || (out != name && identifiers_.contains(out)); ++i)
      out = name + "_" + std::to_string(i);
    binders_.insert(out);
    return out;
  }

  SurfacePtr primary() {
    const Token& t = peek();
    if (t.kind == Tok::lparen) {
      next();
      auto inner = binary();
      expect(Tok::rparen, "')'");
      return inner;
    }
    if (t.kind != Tok::ident) fail(t.kind == Tok::end ? "unexpected end of formula" : "unexpected '" + t.text + "'");
    if (t.text == "tt" || t.text == "ff") {
      Op op = t.text == "tt" ? Op::tt : Op::ff;
      require(op, t.pos);
      next();
      return surface::leaf(op);
    }
    static const std::map<std::string, Op> binary_ops = {
        {"EU", Op::eu}, {"AU", Op::au}, {"ER", Op::er}, {"AR", Op::ar}};
    if (auto it = binary_ops.find(t.text); it != binary_ops.end()) {
      require(it->second, t.pos);
      next();
      expect(Tok::lparen, "'('");
      auto lhs = binary();
      expect(Tok::comma, "','");
      auto rhs = binary();
      expect(Tok::rparen, "')'");
      return surface::binary(it->second, lhs, rhs);
    }
    if (keywords().contains(t.text)) fail("unexpected keyword '" + t.text + "'");
    std::string name = next().text;
    std::optional<std::string> minus;
    if (peek().kind == Tok::minus) {
      next();
      if (peek().kind != Tok::ident) fail("expected clock name after '-'");
      minus = next().text;
    }
    std::optional<Rel> rel;
    bool equality = false;
    switch (peek().kind) {
      case Tok::lt: rel = Rel::lt; break;
      case Tok::le: rel = Rel::le; break;
      case Tok::gt: rel = Rel::gt; break;
      case Tok::ge: rel = Rel::ge; break;
      case Tok::eq: equality = true; break;
      default:
        if (minus) fail("expected relation");
    }
    if (rel || equality) {
      require(Op::atom, t.pos);
      next();
      if (peek().kind != Tok::nat) fail("expected natural number");
      unsigned c = static_cast<unsigned>(std::stoul(next().text));
      auto make = [&](Rel r) {
        if (minus && *minus == name) throw ParseError("diagonal constraint needs two distinct clocks", t.pos);
        return surface::atom(minus ? AtomicConstraint::diagonal(name, *minus, r, c)
                                   : AtomicConstraint::single(name, r, c));
      };
      if (equality) {
        require(Op::and_, t.pos);
        return surface::binary(Op::and_, make(Rel::le), make(Rel::ge));
      }
      return make(*rel);
    }
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == name) {
        require(Op::var, t.pos);
        return surface::leaf(Op::var, it->second);
      }
    require(Op::prop, t.pos);
    return surface::leaf(Op::prop, name);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Logic logic_;
  std::set<std::string> identifiers_;
  std::set<std::string> binders_;
  std::vector<std::pair<std::string, std::string>> scope_;
};

}  // namespace

SurfaceFormula parse(std::string_view text, Logic logic) { return {logic, Parser(text, logic).parse()}; }

std::string print(const SurfacePtr& f) {
  const auto& a = f->args;
  switch (f->op) {
    case Op::tt: return "tt";
    case Op::ff: return "ff";
    case Op::prop:
    case Op::var: return f->name;
    case Op::atom: return to_string(f->atom);
    case Op::not_: return "(!" + print(a[0]) + ")";
    case Op::or_: return "(" + print(a[0]) + " | " + print(a[1]) + ")";
    case Op::and_: return "(" + print(a[0]) + " & " + print(a[1]) + ")";
    case Op::diamond: return "(<" + to_string(f->actions) + ">" + print(a[0]) + ")";
    case Op::box: return "([" + to_string(f->actions) + "]" + print(a[0]) + ")";
    case Op::exists_rel: return "(E{" + print(a[0]) + "}" + print(a[1]) + ")";
    case Op::forall_rel: return "(A{" + print(a[0]) + "}" + print(a[1]) + ")";
    case Op::exists: return "(exists " + print(a[0]) + ")";
    case Op::forall: return "(forall " + print(a[0]) + ")";
    case Op::until_s: return "(" + print(a[0]) + " ~s " + print(a[1]) + ")";
    case Op::until_w: return "(" + print(a[0]) + " ~w " + print(a[1]) + ")";
    case Op::trigger: return "(" + print(a[0]) + " |> " + print(a[1]) + ")";
    case Op::eu: return "EU(" + print(a[0]) + ", " + print(a[1]) + ")";
    case Op::au: return "AU(" + print(a[0]) + ", " + print(a[1]) + ")";
    case Op::er: return "ER(" + print(a[0]) + ", " + print(a[1]) + ")";
    case Op::ar: return "AR(" + print(a[0]) + ", " + print(a[1]) + ")";
    case Op::ef: return "(EF " + print(a[0]) + ")";
    case Op::af: return "(AF " + print(a[0]) + ")";
    case Op::eg: return "(EG " + print(a[0]) + ")";
    case Op::ag: return "(AG " + print(a[0]) + ")";
    case Op::freeze: return "(" + f->name + "." + print(a[0]) + ")";
    case Op::mu: return "(mu " + f->name + "." + print(a[0]) + ")";
    case Op::nu: return "(nu " + f->name + "." + print(a[0]) + ")";
  }
  return "?";
}

std::string print(const SurfaceFormula& f) { return print(f.root); }

bool structurally_equal(const SurfacePtr& a, const SurfacePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op || a->name != b->name || a->actions != b->actions || a->args.size() != b->args.size())
    return false;
  if (a->op == Op::atom && a->atom != b->atom) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!structurally_equal(a->args[i], b->args[i])) return false;
  return true;
}

FormulaPtr lower(const SurfacePtr& f, const Extension& extension) {
  Lowering rec = [&](const SurfacePtr& g) { return lower(g, extension); };
  const auto& a = f->args;
  switch (f->op) {
    case Op::tt: return core::tt();
    case Op::ff: return core::ff();
    case Op::prop: return core::prop(f->name);
    case Op::atom: return core::atom(f->atom);
    case Op::var: return core::var(f->name);
    case Op::not_: return core::neg(rec(a[0]));
    case Op::or_: return core::lor(rec(a[0]), rec(a[1]));
    case Op::and_: return core::land(rec(a[0]), rec(a[1]));
    case Op::diamond: return core::diamond(f->actions, rec(a[0]));
    case Op::box: return core::box(f->actions, rec(a[0]));
    case Op::exists_rel: return core::exists_rel(rec(a[0]), rec(a[1]));
    case Op::forall_rel: return core::forall_rel(rec(a[0]), rec(a[1]));
    case Op::exists: return core::exists(rec(a[0]));
    case Op::forall: return core::forall(rec(a[0]));
    case Op::freeze: return core::freeze(f->name, rec(a[0]));
    case Op::mu: return core::mu(f->name, rec(a[0]));
    case Op::nu: return core::nu(f->name, rec(a[0]));
    default: break;
  }
  if (!extension) throw ParseError("operator '" + std::string(op_name(f->op)) + "' has no core rendering here", 0);
  return extension(*f, rec);
}

FormulaPtr desugar(const SurfaceFormula& f) { return lower(f.root, nullptr); }

}  // namespace tmc
