#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "nqgl/formula.hpp"
#include "nqgl/sequent.hpp"

namespace nqgl {

/// Grammar or arity error; `position` is a byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct ParseOptions {
  /// Accept `dia^{n} T` and `dia^{n+c} T`, the exponent-parametric towers of
  /// schematic proof templates.
  bool schematic = false;
};

/// The arity-0 atom that stands for dia^n T inside schematic templates.
/// It has no surface spelling of its own, so ordinary input cannot produce it.
const PredicateSymbol& towerParameter();
bool mentionsTowerParameter(const Formula& phi);

/// Parses the ASCII grammar:
///   T  F  Pname(v0,...)  ~A  A & B  A | B  A -> B  box A  dia A
///   forall vN. A  exists vN. A  (A)
/// Binding strength: unary > & > | > ->, with -> right-associative.
/// |, exists and dia are expanded into the primitive connectives.
Formula parse(std::string_view text, ParseOptions options = {});

/// `G1, G2 |- D1, D2`. Either side may be empty.
Sequent parseSequent(std::string_view text, ParseOptions options = {});

/// A sequent if the text contains `|-`, otherwise the sequent `|- text`.
Sequent parseGoal(std::string_view text, ParseOptions options = {});

Variable parseVariable(std::string_view text);

/// Prints with minimal parentheses; ~box~ is shown as `dia`. Output parses
/// back to a structurally equal formula.
std::string print(const Formula& phi);
std::string print(const Sequent& s);
std::string print(const FormulaSet& s);

}  // namespace nqgl
