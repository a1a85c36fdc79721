#include "nqgl/random_models.hpp"

#include <cstdlib>
#include <string>

namespace nqgl {

namespace {

void allTuples(const std::vector<Element>& domain, std::size_t arity, Tuple& prefix, std::vector<Tuple>& out) {
  if (prefix.size() == arity) {
    out.push_back(prefix);
    return;
  }
  for (Element e : domain) {
    prefix.push_back(e);
    allTuples(domain, arity, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

KripkeModel randomModel(std::mt19937_64& rng, const std::set<PredicateSymbol>& symbols,
                        const RandomModelOptions& options) {
  KripkeModel m;
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, options.maxWorlds))(rng);
  const std::size_t e =
      std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, options.maxElements))(rng);
  std::vector<Element> elements;
  for (std::size_t i = 0; i < e; ++i) elements.push_back(m.element("d" + std::to_string(i)));
  for (std::size_t w = 0; w < n; ++w) m.addWorld("w" + std::to_string(w));

  std::bernoulli_distribution edge(options.edgeProbability), coin(0.5);
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t u = w + 1; u < n; ++u) {
      if (edge(rng)) m.frame.addEdge(w, u);
    }
  }
  m.frame = transitiveClosure(m.frame);

  // D_w is a prefix of the elements, at least as long as every predecessor's.
  std::vector<std::size_t> prefix(n, 1);
  for (std::size_t w = 0; w < n; ++w) {
    std::size_t lo = 1;
    for (std::size_t v = 0; v < w; ++v) {
      if (m.frame.related(v, w)) lo = std::max(lo, prefix[v]);
    }
    prefix[w] = std::uniform_int_distribution<std::size_t>(lo, e)(rng);
    std::vector<Element> domain(elements.begin(), elements.begin() + static_cast<long>(prefix[w]));
    for (Element d : domain) m.addToDomain(w, d);
    for (const auto& p : symbols) {
      std::vector<Tuple> tuples;
      Tuple scratch;
      allTuples(domain, p.arity, scratch, tuples);
      for (const auto& t : tuples) {
        if (coin(rng)) m.setTrue(w, p, t);
      }
    }
  }
  return m;
}

std::uint64_t seedFromEnvironment(std::uint64_t fallback) {
  const char* s = std::getenv("NQGL_SEED");
  if (s == nullptr || *s == '\0') return fallback;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    return fallback;
  }
}

}  // namespace nqgl
