#include "nqgl/formula.hpp"

#include <algorithm>
#include <functional>

namespace nqgl {

namespace {

constexpr std::size_t kTopHash = 0x9e3779b97f4a7c15ULL;

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const detail::FormulaNode& topNode() {
  static const detail::FormulaNode node{};
  return node;
}

}  // namespace

Kind Formula::kind() const { return node_ ? node_->kind : Kind::Top; }

const Formula& Formula::lhs() const {
  if (!node_ || (node_->kind != Kind::And && node_->kind != Kind::Implies)) {
    throw std::logic_error("lhs() on a formula without binary connective");
  }
  return node_->lhs;
}

const Formula& Formula::rhs() const {
  if (!node_ || (node_->kind != Kind::And && node_->kind != Kind::Implies)) {
    throw std::logic_error("rhs() on a formula without binary connective");
  }
  return node_->rhs;
}

const Formula& Formula::body() const {
  if (!node_ || (node_->kind != Kind::Not && node_->kind != Kind::Box && node_->kind != Kind::ForAll)) {
    throw std::logic_error("body() on a formula without unary connective");
  }
  return node_->lhs;
}

Variable Formula::bound() const {
  if (kind() != Kind::ForAll) throw std::logic_error("bound() on a non-quantified formula");
  return node_->var;
}

const PredicateSymbol& Formula::predicate() const {
  if (kind() != Kind::Atom) throw std::logic_error("predicate() on a non-atomic formula");
  return node_->predicate;
}

const std::vector<Variable>& Formula::args() const {
  if (kind() != Kind::Atom) throw std::logic_error("args() on a non-atomic formula");
  return node_->args;
}

std::size_t Formula::hash() const { return node_ ? node_->hash : kTopHash; }
std::size_t Formula::size() const { return node_ ? node_->size : 1; }
std::size_t Formula::modalDepth() const { return node_ ? node_->modalDepth : 0; }

Formula Formula::top() { return Formula(); }

Formula Formula::bottom() {
  static const Formula bot = [] {
    auto node = std::make_shared<detail::FormulaNode>();
    node->kind = Kind::Bottom;
    node->hash = mix(kTopHash, 1);
    return Formula(std::move(node));
  }();
  return bot;
}

Formula Formula::atom(PredicateSymbol symbol, std::vector<Variable> args) {
  if (args.size() != symbol.arity) {
    throw std::invalid_argument("predicate " + symbol.name + " has arity " + std::to_string(symbol.arity) +
                                " but got " + std::to_string(args.size()) + " arguments");
  }
  auto node = std::make_shared<detail::FormulaNode>();
  node->kind = Kind::Atom;
  std::size_t h = mix(std::hash<std::string>{}(symbol.name), symbol.arity);
  for (auto v : args) h = mix(h, v.index);
  node->hash = mix(h, 2);
  node->predicate = std::move(symbol);
  node->args = std::move(args);
  return Formula(std::move(node));
}

namespace {

std::shared_ptr<detail::FormulaNode> compound(Kind kind, Formula a, Formula b, std::size_t salt) {
  auto node = std::make_shared<detail::FormulaNode>();
  node->kind = kind;
  node->hash = mix(mix(mix(salt, a.hash()), b.hash()), static_cast<std::size_t>(kind));
  node->size = 1 + a.size() + (kind == Kind::And || kind == Kind::Implies ? b.size() : 0);
  node->modalDepth = std::max(a.modalDepth(), b.modalDepth()) + (kind == Kind::Box ? 1 : 0);
  node->lhs = std::move(a);
  node->rhs = std::move(b);
  return node;
}

}  // namespace

Formula Formula::conj(Formula lhs, Formula rhs) { return Formula(compound(Kind::And, std::move(lhs), std::move(rhs), 3)); }

Formula Formula::implies(Formula lhs, Formula rhs) {
  return Formula(compound(Kind::Implies, std::move(lhs), std::move(rhs), 4));
}

Formula Formula::negation(Formula body) { return Formula(compound(Kind::Not, std::move(body), Formula(), 5)); }

Formula Formula::box(Formula body) { return Formula(compound(Kind::Box, std::move(body), Formula(), 6)); }

Formula Formula::forall(Variable var, Formula body) {
  auto node = compound(Kind::ForAll, std::move(body), Formula(), mix(7, var.index));
  node->var = var;
  return Formula(std::move(node));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  return negation(conj(negation(std::move(lhs)), negation(std::move(rhs))));
}

Formula Formula::exists(Variable var, Formula body) { return negation(forall(var, negation(std::move(body)))); }

Formula Formula::diamond(Formula body) { return negation(box(negation(std::move(body)))); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
  const auto& x = a.node_ ? *a.node_ : topNode();
  const auto& y = b.node_ ? *b.node_ : topNode();
  switch (x.kind) {
    case Kind::Top:
    case Kind::Bottom:
      return true;
    case Kind::Atom:
      return x.predicate == y.predicate && x.args == y.args;
    case Kind::And:
    case Kind::Implies:
      return x.lhs == y.lhs && x.rhs == y.rhs;
    case Kind::Not:
    case Kind::Box:
      return x.lhs == y.lhs;
    case Kind::ForAll:
      return x.var == y.var && x.lhs == y.lhs;
  }
  return false;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  const auto& x = a.node_ ? *a.node_ : topNode();
  const auto& y = b.node_ ? *b.node_ : topNode();
  switch (x.kind) {
    case Kind::Top:
    case Kind::Bottom:
      return std::strong_ordering::equal;
    case Kind::Atom:
      if (auto c = x.predicate <=> y.predicate; c != 0) return c;
      return x.args <=> y.args;
    case Kind::And:
    case Kind::Implies:
      if (auto c = x.lhs <=> y.lhs; c != 0) return c;
      return x.rhs <=> y.rhs;
    case Kind::Not:
    case Kind::Box:
      return x.lhs <=> y.lhs;
    case Kind::ForAll:
      if (auto c = x.var <=> y.var; c != 0) return c;
      return x.lhs <=> y.lhs;
  }
  return std::strong_ordering::equal;
}

namespace {

void collectVars(const Formula& phi, VariableSet& out) {
  switch (phi.kind()) {
    case Kind::Top:
    case Kind::Bottom:
      return;
    case Kind::Atom:
      out.insert(phi.args().begin(), phi.args().end());
      return;
    case Kind::And:
    case Kind::Implies:
      collectVars(phi.lhs(), out);
      collectVars(phi.rhs(), out);
      return;
    case Kind::Not:
    case Kind::Box:
      collectVars(phi.body(), out);
      return;
    case Kind::ForAll:
      out.insert(phi.bound());
      collectVars(phi.body(), out);
      return;
  }
}

void collectFree(const Formula& phi, VariableSet& bound, VariableSet& out) {
  switch (phi.kind()) {
    case Kind::Top:
    case Kind::Bottom:
      return;
    case Kind::Atom:
      for (auto v : phi.args()) {
        if (!bound.contains(v)) out.insert(v);
      }
      return;
    case Kind::And:
    case Kind::Implies:
      collectFree(phi.lhs(), bound, out);
      collectFree(phi.rhs(), bound, out);
      return;
    case Kind::Not:
    case Kind::Box:
      collectFree(phi.body(), bound, out);
      return;
    case Kind::ForAll: {
      bool inserted = bound.insert(phi.bound()).second;
      collectFree(phi.body(), bound, out);
      if (inserted) bound.erase(phi.bound());
      return;
    }
  }
}

Formula rebuildUnary(const Formula& phi, Formula body) {
  if (body == phi.body()) return phi;
  switch (phi.kind()) {
    case Kind::Not:
      return Formula::negation(std::move(body));
    case Kind::Box:
      return Formula::box(std::move(body));
    case Kind::ForAll:
      return Formula::forall(phi.bound(), std::move(body));
    default:
      throw std::logic_error("rebuildUnary on non-unary formula");
  }
}

Formula rebuildBinary(const Formula& phi, Formula lhs, Formula rhs) {
  if (lhs == phi.lhs() && rhs == phi.rhs()) return phi;
  return phi.is(Kind::And) ? Formula::conj(std::move(lhs), std::move(rhs))
                           : Formula::implies(std::move(lhs), std::move(rhs));
}

// under: z is bound by an enclosing binder at this position
Formula substituteImpl(const Formula& phi, Variable z, Variable x, bool underZ) {
  switch (phi.kind()) {
    case Kind::Top:
    case Kind::Bottom:
      return phi;
    case Kind::Atom: {
      const auto& args = phi.args();
      if (std::find(args.begin(), args.end(), x) == args.end()) return phi;
      if (underZ) {
        throw CaptureError("substituting " + z.name() + " for " + x.name() + " would be captured by a binder on " +
                           z.name());
      }
      auto replaced = args;
      std::replace(replaced.begin(), replaced.end(), x, z);
      return Formula::atom(phi.predicate(), std::move(replaced));
    }
    case Kind::And:
    case Kind::Implies:
      return rebuildBinary(phi, substituteImpl(phi.lhs(), z, x, underZ), substituteImpl(phi.rhs(), z, x, underZ));
    case Kind::Not:
    case Kind::Box:
      return rebuildUnary(phi, substituteImpl(phi.body(), z, x, underZ));
    case Kind::ForAll:
      if (phi.bound() == x) return phi;  // x not free below
      return rebuildUnary(phi, substituteImpl(phi.body(), z, x, underZ || phi.bound() == z));
  }
  return phi;
}

}  // namespace

VariableSet vars(const Formula& phi) {
  VariableSet out;
  collectVars(phi, out);
  return out;
}

VariableSet vars(const FormulaSet& set) {
  VariableSet out;
  for (const auto& f : set) collectVars(f, out);
  return out;
}

VariableSet freeVars(const Formula& phi) {
  VariableSet bound, out;
  collectFree(phi, bound, out);
  return out;
}

VariableSet freeVars(const FormulaSet& set) {
  VariableSet out;
  for (const auto& f : set) {
    VariableSet bound;
    collectFree(f, bound, out);
  }
  return out;
}

Formula substitute(const Formula& phi, Variable z, Variable x) {
  if (z == x) return phi;
  return substituteImpl(phi, z, x, false);
}

Formula renameBound(const Formula& phi, Variable from, Variable to) {
  switch (phi.kind()) {
    case Kind::Top:
    case Kind::Bottom:
    case Kind::Atom:
      return phi;
    case Kind::And:
    case Kind::Implies:
      return rebuildBinary(phi, renameBound(phi.lhs(), from, to), renameBound(phi.rhs(), from, to));
    case Kind::Not:
    case Kind::Box:
      return rebuildUnary(phi, renameBound(phi.body(), from, to));
    case Kind::ForAll: {
      auto body = renameBound(phi.body(), from, to);
      if (phi.bound() != from) return rebuildUnary(phi, std::move(body));
      return Formula::forall(to, substitute(body, to, from));
    }
  }
  return phi;
}

Formula diamondTower(std::size_t n) {
  Formula f = Formula::top();
  for (std::size_t i = 0; i < n; ++i) f = Formula::diamond(std::move(f));
  return f;
}

Formula boxTower(std::size_t n, Formula phi) {
  for (std::size_t i = 0; i < n; ++i) phi = Formula::box(std::move(phi));
  return phi;
}

std::optional<std::size_t> towerHeight(const Formula& phi) {
  std::size_t n = 0;
  const Formula* cur = &phi;
  while (true) {
    if (cur->is(Kind::Top)) return n;
    if (!cur->is(Kind::Not)) return std::nullopt;
    const auto& b = cur->body();
    if (!b.is(Kind::Box) || !b.body().is(Kind::Not)) return std::nullopt;
    cur = &b.body().body();
    ++n;
  }
}

FormulaSet boxSet(const FormulaSet& s) {
  FormulaSet out;
  for (const auto& f : s) out.insert(Formula::box(f));
  return out;
}

FormulaSet unboxSet(const FormulaSet& s) {
  FormulaSet out;
  for (const auto& f : s) {
    if (f.is(Kind::Box)) out.insert(f.body());
  }
  return out;
}

FormulaSet boxedMembers(const FormulaSet& s) {
  FormulaSet out;
  for (const auto& f : s) {
    if (f.is(Kind::Box)) out.insert(f);
  }
  return out;
}

namespace {

void collectSubformulas(const Formula& phi, FormulaSet& out) {
  if (!out.insert(phi).second) return;
  switch (phi.kind()) {
    case Kind::And:
    case Kind::Implies:
      collectSubformulas(phi.lhs(), out);
      collectSubformulas(phi.rhs(), out);
      return;
    case Kind::Not:
    case Kind::Box:
    case Kind::ForAll:
      collectSubformulas(phi.body(), out);
      return;
    default:
      return;
  }
}

void collectPredicates(const Formula& phi, std::set<PredicateSymbol>& out) {
  switch (phi.kind()) {
    case Kind::Atom:
      out.insert(phi.predicate());
      return;
    case Kind::And:
    case Kind::Implies:
      collectPredicates(phi.lhs(), out);
      collectPredicates(phi.rhs(), out);
      return;
    case Kind::Not:
    case Kind::Box:
    case Kind::ForAll:
      collectPredicates(phi.body(), out);
      return;
    default:
      return;
  }
}

}  // namespace

FormulaSet subformulas(const Formula& phi) {
  FormulaSet out;
  collectSubformulas(phi, out);
  return out;
}

std::set<PredicateSymbol> predicates(const Formula& phi) {
  std::set<PredicateSymbol> out;
  collectPredicates(phi, out);
  return out;
}

bool isPropositional(const Formula& phi) {
  switch (phi.kind()) {
    case Kind::Top:
    case Kind::Bottom:
      return true;
    case Kind::Atom:
      return phi.args().empty();
    case Kind::And:
    case Kind::Implies:
      return isPropositional(phi.lhs()) && isPropositional(phi.rhs());
    case Kind::Not:
    case Kind::Box:
      return isPropositional(phi.body());
    case Kind::ForAll:
      return false;
  }
  return false;
}

Formula replaceAtom(const Formula& phi, const PredicateSymbol& atom, const Formula& replacement) {
  switch (phi.kind()) {
    case Kind::Top:
    case Kind::Bottom:
      return phi;
    case Kind::Atom:
      return phi.predicate() == atom ? replacement : phi;
    case Kind::And:
    case Kind::Implies:
      return rebuildBinary(phi, replaceAtom(phi.lhs(), atom, replacement), replaceAtom(phi.rhs(), atom, replacement));
    case Kind::Not:
    case Kind::Box:
    case Kind::ForAll:
      return rebuildUnary(phi, replaceAtom(phi.body(), atom, replacement));
  }
  return phi;
}

Variable freshAbove(const VariableSet& used) {
  if (used.empty()) return Variable{0};
  return Variable{used.rbegin()->index + 1};
}

}  // namespace nqgl
