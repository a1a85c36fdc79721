#pragma once

#include <cstdint>
#include <random>
#include <set>

#include "nqgl/kripke.hpp"

namespace nqgl {

struct RandomModelOptions {
  std::size_t maxWorlds = 5;
  std::size_t maxElements = 3;
  /// Probability of each candidate edge before the transitive closure.
  double edgeProbability = 0.5;
};

/// A random validated model on a transitive acyclic frame (edges only go
/// from lower to higher world index) with monotone domains, interpreting
/// exactly the given predicate symbols.
KripkeModel randomModel(std::mt19937_64& rng, const std::set<PredicateSymbol>& symbols,
                        const RandomModelOptions& options = {});

/// Seed from the NQGL_SEED environment variable, or `fallback`.
std::uint64_t seedFromEnvironment(std::uint64_t fallback = 0);

}  // namespace nqgl
