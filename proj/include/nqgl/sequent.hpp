#pragma once

#include <compare>
#include <cstdint>

#include "nqgl/formula.hpp"

namespace nqgl {

/// Gamma |- Delta over finite sets of formulas.
struct Sequent {
  FormulaSet antecedent;
  FormulaSet succedent;

  auto operator<=>(const Sequent&) const = default;
  bool operator==(const Sequent&) const = default;
};

VariableSet vars(const Sequent& s);
VariableSet freeVars(const Sequent& s);
std::size_t size(const Sequent& s);

/// Finite explicit part of a coinfinite set of variables. Every variable at
/// or above the watermark is held in reserve, so the complement is infinite.
class VariableUniverse {
 public:
  VariableUniverse() = default;
  /// The explicit set `vars`; the watermark starts just above its maximum.
  explicit VariableUniverse(VariableSet vars);
  VariableUniverse(VariableSet vars, std::uint32_t watermark);

  const VariableSet& members() const { return members_; }
  std::uint32_t watermark() const { return watermark_; }
  bool contains(Variable v) const { return members_.contains(v); }
  /// Membership test for Phi(U): every variable of phi lies in the universe.
  bool varsWithin(const Formula& phi) const;

  /// Takes the next reserve variable and adds it to the universe.
  Variable addFresh();
  /// Takes the next reserve variable without adding it.
  Variable reserveFresh();

  bool operator==(const VariableUniverse&) const = default;

 private:
  VariableSet members_;
  std::uint32_t watermark_ = 0;
};

template <class Set>
bool isSubset(const Set& small, const Set& big) {
  for (const auto& x : small) {
    if (!big.contains(x)) return false;
  }
  return true;
}

template <class Set>
Set setUnion(Set a, const Set& b) {
  a.insert(b.begin(), b.end());
  return a;
}

inline FormulaSet withFormula(FormulaSet s, const Formula& f) {
  s.insert(f);
  return s;
}

inline FormulaSet withoutFormula(FormulaSet s, const Formula& f) {
  s.erase(f);
  return s;
}

}  // namespace nqgl
