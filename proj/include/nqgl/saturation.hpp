#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nqgl/formula.hpp"
#include "nqgl/kripke.hpp"
#include "nqgl/search.hpp"
#include "nqgl/sequent.hpp"

namespace nqgl {

/// (S, T): formulas asserted true and false.
struct Pair {
  FormulaSet left;
  FormulaSet right;
  bool operator==(const Pair&) const = default;
};

inline Sequent asSequent(const Pair& p) { return Sequent{p.left, p.right}; }

class SaturationError : public std::runtime_error {
 public:
  enum class Kind { Inconsistent, NoConsistentChoice, Provable, NoWitness, StageLimit };
  SaturationError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Bounded stand-in for finite consistency: (S, T) counts as consistent when
/// cut-free search finds no proof of S |- T within the depth bound. Since
/// the search weakens freely this covers every finite S' <= S, T' <= T.
/// A "consistent" answer may be overturned at a higher depth.
class ConsistencyOracle {
 public:
  explicit ConsistencyOracle(std::size_t depth, std::size_t maxNodes = 400'000);
  bool consistent(const Pair& p);
  std::size_t depth() const { return searcher_.options().depth; }
  /// Queries answered "consistent" only because the node budget ran out.
  std::size_t inconclusive() const { return inconclusive_; }

 private:
  CutFreeSearcher searcher_;
  std::size_t inconclusive_ = 0;
};

bool boundedConsistent(const Pair& p, std::size_t depth);

/// One stage of the saturation procedure.
struct TraceEntry {
  std::size_t stage = 0;
  Formula formula;
  /// "S", "T" or "-" (in neither side, nothing to do).
  std::string side;
  /// Which closure case applied, e.g. "and", "imp", "all", "box", "atom".
  std::string rule;
  FormulaSet addedLeft;
  FormulaSet addedRight;
  std::optional<Variable> fresh;
  /// Alternatives rejected as inconsistent before the committed choice.
  std::size_t rejectedChoices = 0;
};

/// (U_n, S_n, T_n) with the triangular schedule gamma_0; gamma_0, gamma_1; ...
/// over the subformula closure, which grows as instances are added.
struct SaturationState {
  VariableUniverse universe;
  Pair pair;
  std::size_t stage = 0;
  std::size_t depth = 0;
  std::vector<Formula> schedule;
  FormulaSet scheduled;
  std::vector<TraceEntry> trace;
  /// Formulas processed while they were in S (resp. T).
  FormulaSet processedLeft;
  FormulaSet processedRight;
  /// A full row of the schedule ran without changing anything.
  bool exhausted = false;

  // Schedule cursor.
  std::size_t row = 0;
  std::size_t column = 0;
  bool rowChanged = false;
};

/// Starts a run; throws SaturationError if the start pair is not bounded-consistent.
SaturationState startSaturation(Pair start, VariableUniverse universe, std::size_t depth);

/// Processes the next scheduled formula.
void saturationStep(SaturationState& state, ConsistencyOracle& oracle);

SaturationState saturateStages(const Pair& start, const VariableUniverse& universe, std::size_t stages,
                               std::size_t depth);

/// Runs until a full schedule row changes nothing.
SaturationState saturate(const Pair& start, const VariableUniverse& universe, std::size_t depth,
                         std::size_t maxStages = 200'000);
SaturationState saturate(const Pair& start, const VariableUniverse& universe, ConsistencyOracle& oracle,
                         std::size_t maxStages = 200'000);

/// psi[z/x] for forall x. psi; binders of z inside psi are renamed to a
/// variable above every variable involved when they would capture.
Formula quantifierInstance(const Formula& forall, Variable z);

struct SaturationViolation {
  /// 1: conjunction, 2: implication, 3: negation, 4: universal quantifier.
  int condition = 0;
  Formula formula;
  /// S or T.
  char side = 'S';
  /// The formula had been processed by the schedule on that side.
  bool processed = true;
  std::string message;
};

struct SaturationReport {
  std::vector<SaturationViolation> violations;
  /// Members of S or T never processed while there.
  std::vector<Formula> unprocessed;
  FormulaSet overlap;
  std::size_t processedViolations() const;
  bool ok() const { return processedViolations() == 0 && overlap.empty(); }
};

SaturationReport checkSaturated(const SaturationState& state);
/// Checks a hand-built pair; every member counts as processed.
SaturationReport checkSaturated(const Pair& pair, const VariableUniverse& universe);

/// A world (U, S, T) of the canonical model with its GL witness.
struct CanonicalWorld {
  VariableUniverse universe;
  Pair pair;
  /// Least n with box ~dia^n T in S.
  std::size_t glWitness = 0;
  SaturationState state;
};

/// Least n with box ~dia^n T in the set, if any.
std::optional<std::size_t> glWitnessOf(const FormulaSet& left);

struct RootOptions {
  std::size_t depth = 4;
  std::size_t witnessCap = 8;
};

/// Finds the least n <= cap such that ({box ~dia^n T} + Gamma, Delta) is
/// bounded-consistent and saturates it. Consistency for witness n is checked
/// at depth + n, enough for the search to use the height bound.
CanonicalWorld rootFromSequent(const Sequent& s, const RootOptions& options = {});

/// Seed (box^-1 S + box box^-1 S, {phi}) for box phi in T, saturated.
CanonicalWorld successorPair(const CanonicalWorld& w, const Formula& boxedTarget);
/// The unsaturated seed.
Pair successorSeed(const CanonicalWorld& w, const Formula& boxedTarget);

struct CanonicalFragment {
  KripkeModel model;
  WorldId root = 0;
  std::vector<CanonicalWorld> worlds;
  /// Tree parent of each world before the transitive closure.
  std::vector<std::optional<WorldId>> parent;
  /// Some world at maxDepth still had a boxed formula in T.
  bool truncated = false;
};

/// Root plus successors for every boxed member of T, recursively, up to
/// maxDepth levels; R is the transitive closure of the tree, D the
/// universes, and I reads atoms off S.
CanonicalFragment buildCanonicalFragment(const CanonicalWorld& root, std::size_t maxDepth = 16);

/// For each world and each member phi of S (resp. T): phi forced (resp. not
/// forced) with every variable read as itself. Returns the failures.
std::vector<std::string> truthLemmaFailures(const CanonicalFragment& fragment);

nlohmann::json traceToJson(const SaturationState& state);

}  // namespace nqgl
