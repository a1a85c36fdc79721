#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nqgl/kernel.hpp"
#include "nqgl/search.hpp"

namespace nqgl {

struct GalleryEntry {
  std::string name;
  std::string description;
  Proof proof;
};

struct GalleryOptions {
  /// Loeb premises box(box P -> P) |- box P, dia^n T are searched for n <= loebMax.
  std::size_t loebMax = 3;
  SearchOptions search{};
};

/// Generated derivations: identity expansions, four-axiom instances,
/// necessitation examples, diamond ladders, the omega certificates and the
/// bounded-search Loeb premises. Throws std::runtime_error if a Loeb premise
/// is not found within the search bound.
std::vector<GalleryEntry> buildGallery(const GalleryOptions& options = {});

/// The schematic weakening family: P |- P by the omega rule, premise k being
/// P |- P, dia^k T by weakening.
Proof omegaWeakening();

/// dia dia T |- dia T by the omega rule; every premise is the one-step
/// ladder weakened by dia^k T.
Proof omegaLadder();

/// box(box P -> P) |- box P, dia^n T, found by bounded search.
Proof loebPremise(std::size_t n, const SearchOptions& options = {});

/// Writes <name>.json per entry plus manifest.json. Returns the written paths.
std::vector<std::filesystem::path> writeGallery(const std::filesystem::path& dir,
                                                const std::vector<GalleryEntry>& entries);

}  // namespace nqgl
