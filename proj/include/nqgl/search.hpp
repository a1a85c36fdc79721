#pragma once

#include <cstddef>
#include <map>
#include <optional>

#include "nqgl/kernel.hpp"
#include "nqgl/sequent.hpp"

namespace nqgl {

struct SearchOptions {
  /// Maximal number of box and all-l steps on any branch.
  std::size_t depth = 8;
  /// Node budget per call; the search gives up (inconclusively) beyond it.
  std::size_t maxNodes = 2'000'000;
};

struct SearchResult {
  std::optional<Proof> proof;
  bool budgetExhausted = false;
  std::size_t nodesVisited = 0;
};

/// Bounded backward search for cut-free proofs in the omega-free part of
/// the calculus. Propositional rules and all-r are applied invertibly and
/// cost nothing; box and all-l steps are the branching choices and each
/// consumes one unit of depth. Every returned proof passes checkProof with
/// cut disabled.
///
/// Failed goals are memoised per depth, so one searcher can be reused for
/// many related queries.
class CutFreeSearcher {
 public:
  explicit CutFreeSearcher(SearchOptions options = {}) : options_(options) {}

  SearchResult prove(const Sequent& goal);
  /// Convenience: true iff no proof of goal exists within the bound.
  bool refutedWithinBound(const Sequent& goal) { return !prove(goal).proof; }

  const SearchOptions& options() const { return options_; }

 private:
  std::optional<Proof> search(const Sequent& goal, std::size_t depth);
  std::optional<Proof> modalAndQuantifierSteps(const Sequent& goal, std::size_t depth);

  SearchOptions options_;
  std::map<Sequent, std::size_t> failedAtDepth_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace nqgl
