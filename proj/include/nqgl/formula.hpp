#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace nqgl {

/// An individual variable v<index>. The universe v0, v1, ... is unbounded.
struct Variable {
  std::uint32_t index = 0;

  auto operator<=>(const Variable&) const = default;
  std::string name() const { return "v" + std::to_string(index); }
};

/// A predicate symbol with a fixed arity. Arity 0 symbols are propositional letters.
struct PredicateSymbol {
  std::string name;
  std::size_t arity = 0;

  auto operator<=>(const PredicateSymbol&) const = default;
};

enum class Kind : std::uint8_t { Top, Bottom, Atom, And, Implies, Not, ForAll, Box };

/// Thrown by substitute() when a free occurrence would be captured by a binder.
class CaptureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
struct FormulaNode;
}

/// Immutable first-order modal formula over the primitive connectives
/// T, F, atoms, &, ->, ~, forall and box. Derived forms (|, exists, dia)
/// are expanded by the factory functions below.
///
/// Values share structure; equality and ordering are structural.
class Formula {
 public:
  /// T. The empty handle is the constant T.
  Formula() = default;

  static Formula top();
  static Formula bottom();
  static Formula atom(PredicateSymbol symbol, std::vector<Variable> args = {});
  static Formula conj(Formula lhs, Formula rhs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula negation(Formula body);
  static Formula forall(Variable var, Formula body);
  static Formula box(Formula body);

  // ~(~a & ~b), ~forall x ~a, ~box ~a
  static Formula disj(Formula lhs, Formula rhs);
  static Formula exists(Variable var, Formula body);
  static Formula diamond(Formula body);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }

  /// Left operand of And/Implies.
  const Formula& lhs() const;
  /// Right operand of And/Implies.
  const Formula& rhs() const;
  /// Operand of Not/Box/ForAll.
  const Formula& body() const;
  /// Bound variable of ForAll.
  Variable bound() const;
  const PredicateSymbol& predicate() const;
  const std::vector<Variable>& args() const;

  std::size_t hash() const;
  /// Number of nodes in the tree.
  std::size_t size() const;
  /// Maximal nesting of box.
  std::size_t modalDepth() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const detail::FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::FormulaNode> node_;
};

using FormulaSet = std::set<Formula>;
using VariableSet = std::set<Variable>;

/// All variables with a free or bound occurrence.
VariableSet vars(const Formula& phi);
VariableSet vars(const FormulaSet& set);
VariableSet freeVars(const Formula& phi);
VariableSet freeVars(const FormulaSet& set);

/// phi[z/x]: replaces the free occurrences of x by z. Throws CaptureError
/// instead of renaming when a replaced occurrence sits under a binder on z.
Formula substitute(const Formula& phi, Variable z, Variable x);

/// Renames the binder `from` (and the occurrences it binds) to `to` everywhere in phi.
Formula renameBound(const Formula& phi, Variable from, Variable to);

/// dia^n T, expanded into ~box~ form.
Formula diamondTower(std::size_t n);
/// box^n phi.
Formula boxTower(std::size_t n, Formula phi);

/// If phi is dia^n T (n >= 0) returns n.
std::optional<std::size_t> towerHeight(const Formula& phi);

FormulaSet boxSet(const FormulaSet& s);
FormulaSet unboxSet(const FormulaSet& s);
/// The members of s of the form box psi.
FormulaSet boxedMembers(const FormulaSet& s);

/// Subformulas including phi itself (first-order subformulas are the bodies with x free).
FormulaSet subformulas(const Formula& phi);

/// Predicate symbols occurring in phi.
std::set<PredicateSymbol> predicates(const Formula& phi);

/// No quantifiers and only 0-ary atoms.
bool isPropositional(const Formula& phi);

/// The formula that replaces each occurrence of `atom` (an arity-0 atom) by `replacement`.
Formula replaceAtom(const Formula& phi, const PredicateSymbol& atom, const Formula& replacement);

/// Smallest variable index strictly above every variable of the given set.
Variable freshAbove(const VariableSet& used);

namespace detail {

struct FormulaNode {
  Kind kind = Kind::Top;
  std::size_t hash = 0;
  std::size_t size = 1;
  std::size_t modalDepth = 0;
  Formula lhs;  // And/Implies: left; Not/Box/ForAll: body
  Formula rhs;
  Variable var;
  PredicateSymbol predicate;
  std::vector<Variable> args;
};

}  // namespace detail

}  // namespace nqgl

template <>
struct std::hash<nqgl::Formula> {
  std::size_t operator()(const nqgl::Formula& f) const noexcept { return f.hash(); }
};
