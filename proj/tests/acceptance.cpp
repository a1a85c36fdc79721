// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nqgl/gallery.hpp"
#include "nqgl/gl_prover.hpp"
#include "nqgl/kernel.hpp"
#include "nqgl/random_models.hpp"
#include "nqgl/saturation.hpp"
#include "nqgl/search.hpp"
#include "nqgl/syntax.hpp"
#include "oracles.hpp"

using namespace nqgl;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;
  std::vector<std::string> info;

  void fail(const std::string& why) {
    ok = false;
    if (notes.size() < 12) notes.push_back(why);
  }
  void check(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

bool runCriterion(int id, const std::string& title, std::optional<double> limitSeconds,
                  const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limitSeconds && secs > *limitSeconds) {
    out.fail("runtime " + std::to_string(secs) + " s exceeds " + std::to_string(*limitSeconds) + " s");
  }
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2f s", secs);
  std::cout << "criterion " << id << ": " << (out.ok ? "PASS" : "FAIL") << "  " << title << " (" << timing << ")\n";
  for (const auto& i : out.info) std::cout << "    " << i << '\n';
  for (const auto& n : out.notes) std::cout << "    ! " << n << '\n';
  std::cout.flush();
  return out.ok;
}

// ------------------------------------------------------------ propositional brute force

/// Strict partial orders on 1..maxWorlds labelled worlds, found by filtering every relation.
const std::vector<oracle::Adjacency>& strictOrders(std::size_t maxWorlds) {
  static std::map<std::size_t, std::vector<oracle::Adjacency>> cache;
  auto& out = cache[maxWorlds];
  if (!out.empty()) return out;
  for (std::size_t n = 1; n <= maxWorlds; ++n) {
    const std::size_t bits = n * n;
    for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
      auto rel = [&](std::size_t a, std::size_t b) { return (mask >> (a * n + b)) & 1u; };
      bool good = true;
      for (std::size_t a = 0; a < n && good; ++a) good = !rel(a, a);
      for (std::size_t a = 0; a < n && good; ++a) {
        for (std::size_t b = 0; b < n && good; ++b) {
          for (std::size_t c = 0; c < n && good; ++c) good = !(rel(a, b) && rel(b, c)) || rel(a, c);
        }
      }
      if (!good) continue;
      oracle::Adjacency adj(n);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          if (rel(a, b)) adj[a].push_back(b);
        }
      }
      out.push_back(std::move(adj));
    }
  }
  return out;
}

bool evalBits(const oracle::Adjacency& a, const std::vector<unsigned>& val, std::size_t w, const Formula& f,
              const std::map<std::string, unsigned>& atomIndex) {
  switch (f.kind()) {
    case Kind::Top:
      return true;
    case Kind::Bottom:
      return false;
    case Kind::Atom:
      return (val[w] >> atomIndex.at(f.predicate().name)) & 1u;
    case Kind::And:
      return evalBits(a, val, w, f.lhs(), atomIndex) && evalBits(a, val, w, f.rhs(), atomIndex);
    case Kind::Implies:
      return !evalBits(a, val, w, f.lhs(), atomIndex) || evalBits(a, val, w, f.rhs(), atomIndex);
    case Kind::Not:
      return !evalBits(a, val, w, f.body(), atomIndex);
    case Kind::Box:
      for (auto u : a[w]) {
        if (!evalBits(a, val, u, f.body(), atomIndex)) return false;
      }
      return true;
    case Kind::ForAll:
      break;
  }
  throw std::logic_error("propositional input expected");
}

/// True when some strict partial order with <= maxWorlds worlds refutes phi.
bool bruteForceRefutable(const Formula& phi, std::size_t maxWorlds) {
  std::map<std::string, unsigned> atomIndex;
  for (const auto& p : predicates(phi)) atomIndex.emplace(p.name, static_cast<unsigned>(atomIndex.size()));
  const std::size_t k = atomIndex.size();
  for (const auto& adj : strictOrders(maxWorlds)) {
    const std::size_t n = adj.size();
    const std::uint64_t total = 1ull << (n * k);
    std::vector<unsigned> val(n);
    for (std::uint64_t code = 0; code < total; ++code) {
      for (std::size_t w = 0; w < n; ++w) val[w] = static_cast<unsigned>((code >> (w * k)) & ((1ull << k) - 1));
      for (std::size_t w = 0; w < n; ++w) {
        if (!evalBits(adj, val, w, phi, atomIndex)) return true;
      }
    }
  }
  return false;
}

/// Independent check of a propositional countermodel.
std::optional<std::string> countermodelProblem(const Countermodel& cm, const Formula& phi) {
  const auto& m = cm.model;
  if (!validateModel(m).empty()) return "countermodel fails validation";
  auto adj = oracle::adjacency(m.frame);
  for (std::size_t a = 0; a < adj.size(); ++a) {
    for (auto b : adj[a]) {
      if (a == b) return "countermodel frame is reflexive";
      for (auto c : adj[b]) {
        if (!m.frame.related(a, c)) return "countermodel frame is not transitive";
      }
    }
    if (oracle::longestPath(adj, a) < 0) return "countermodel frame has a cycle";
  }
  std::vector<std::set<std::string>> val(m.worldCount());
  for (WorldId w = 0; w < m.worldCount(); ++w) {
    for (const auto& [p, tuples] : m.interpretation(w)) {
      if (!tuples.empty()) val[w].insert(p.name);
    }
  }
  if (oracle::eval(adj, val, cm.world, phi)) return "formula holds at the designated world";
  return std::nullopt;
}

// ------------------------------------------------------------ criteria

void criterion1(Outcome& out) {
  struct Case {
    const char* text;
    std::optional<bool> provable;  // nullopt: whichever side brute force confirms
  };
  const Case cases[] = {
      {"box (box P -> P) -> box P", true},
      {"box (P -> Q) -> (box P -> box Q)", true},
      {"box P -> box box P", true},
      {"box P -> P", false},
      {"P -> box P", false},
      {"dia T", false},
      {"box P -> box (box P -> P)", std::nullopt},
  };
  for (const auto& c : cases) {
    Formula phi = parse(c.text);
    Sequent s{{}, {phi}};
    GLVerdict v = decide(s);
    auto cert = certify(v, s);
    out.check(cert.ok, std::string(c.text) + ": certify rejected: " + cert.reason);
    const bool refutable = bruteForceRefutable(phi, 4);
    const bool expected = c.provable.value_or(!refutable);
    out.check(isProof(v) == expected, std::string(c.text) + ": unexpected verdict");
    if (isProof(v)) {
      out.check(!refutable, std::string(c.text) + ": proved but brute force refutes it");
    } else if (auto problem = countermodelProblem(std::get<Countermodel>(v), phi)) {
      out.fail(std::string(c.text) + ": " + *problem);
    }
    std::string verdict = isProof(v) ? "provable" : "refuted";
    if (!isProof(v)) verdict += ", worlds: " + std::to_string(std::get<Countermodel>(v).model.worldCount());
    out.info.push_back(std::string(c.text) + " : " + verdict);
  }
}

void criterion2(Outcome& out) {
  oracle::FormulaGen gen(20261016, 2);
  std::size_t tested = 0, provable = 0, refuted = 0, attempts = 0;
  while (tested < 240 && attempts < 100000) {
    ++attempts;
    Formula phi = gen(2 + static_cast<int>(attempts % 11), 2);
    if (phi.size() > 12 || phi.modalDepth() > 2) continue;
    ++tested;
    Sequent s{{}, {phi}};
    GLVerdict v = decide(s);
    auto cert = certify(v, s);
    out.check(cert.ok, print(phi) + ": certify rejected: " + cert.reason);
    if (isProof(v)) {
      ++provable;
      out.check(!validityOracle(phi, 4).has_value(), print(phi) + ": provable but validityOracle refutes it");
      out.check(!bruteForceRefutable(phi, 4), print(phi) + ": provable but brute force refutes it");
    } else {
      ++refuted;
      if (auto problem = countermodelProblem(std::get<Countermodel>(v), phi)) out.fail(print(phi) + ": " + *problem);
    }
  }
  out.check(tested >= 200, "only " + std::to_string(tested) + " formulas generated");
  out.check(provable > 0 && refuted > 0, "generator produced only one kind of verdict");
  out.info.push_back(std::to_string(tested) + " formulas: " + std::to_string(provable) + " provable, " +
                     std::to_string(refuted) + " refuted");
}

void criterion3(Outcome& out) {
  auto gallery = buildGallery();
  std::set<PredicateSymbol> symbols;
  for (const auto& e : gallery) {
    out.check(checkProof(e.proof).accepted, e.name + ": gallery proof rejected");
    auto s = oracle::symbolsOf(e.proof.conclusion);
    symbols.insert(s.begin(), s.end());
  }
  const std::uint64_t seed = seedFromEnvironment(3);
  std::mt19937_64 rng(seed);
  const std::size_t models = 150;
  std::size_t checks = 0;
  for (std::size_t i = 0; i < models; ++i) {
    KripkeModel m = oracle::randomModel(rng, 5, 3, symbols);
    out.check(validateModel(m).empty(), "random model fails validation");
    for (const auto& e : gallery) {
      for (WorldId w = 0; w < m.worldCount(); ++w) {
        ++checks;
        if (oracle::refutesFO(m, w, e.proof.conclusion) || refutesSequent(m, w, e.proof.conclusion)) {
          out.fail(e.name + " refuted at world " + std::to_string(w) + " of model " + std::to_string(i));
        }
      }
    }
  }
  out.info.push_back(std::to_string(gallery.size()) + " end-sequents, " + std::to_string(models) +
                     " models (seed " + std::to_string(seed) + "), " + std::to_string(checks) + " world checks");
}

void criterion4(Outcome& out) {
  CheckOptions cutFree;
  cutFree.allowCut = false;
  const Sequent pp = parseSequent("P |- P");

  Proof w = omegaWeakening();
  out.check(w.rule == RuleTag::OmegaBL && w.certificate, "weakening family is not an omega node");
  out.check(w.conclusion == pp, "weakening family concludes " + print(w.conclusion));
  out.check(checkProof(w).accepted, "weakening certificate rejected");
  CheckOptions deep;
  deep.instanceBound = 8;
  out.check(checkProof(w, deep).accepted, "weakening certificate rejected with K = 8");

  SchematicCertificate off = *w.certificate;
  off.templateProof = weaken(axiomId(parse("P")), parseSequent("P |- P, dia^{n+1} T", {true}));
  out.check(!checkProof(makeOmega(pp, off)).accepted, "exponent-offset mutation accepted");
  out.check(!checkProof(makeOmega(parseSequent("P |- Q"), *w.certificate)).accepted,
            "wrong-conclusion mutation accepted");
  out.check(!checkProof(makeOmega(parseSequent("Q |- Q"), *w.certificate)).accepted,
            "mutated conclusion Q |- Q accepted");

  for (std::size_t k = 0; k <= 8; ++k) {
    Proof inst = instantiate(*w.certificate, k);
    Sequent want = pp;
    want.succedent.insert(diamondTower(k));
    out.check(inst.conclusion == want, "instance " + std::to_string(k) + " has the wrong conclusion");
    out.check(checkProof(inst, cutFree).accepted, "instance " + std::to_string(k) + " rejected");
  }

  Proof ladder = omegaLadder();
  out.check(checkProof(ladder, cutFree).accepted, "omega ladder rejected");

  for (std::size_t n = 0; n <= 3; ++n) {
    Proof p = loebPremise(n, {n + 3, 2'000'000});
    Sequent want = parseSequent("box (box P -> P) |- box P");
    want.succedent.insert(diamondTower(n));
    out.check(p.conclusion == want, "Loeb premise " + std::to_string(n) + " has the wrong conclusion");
    out.check(!p.containsRule(RuleTag::Cut) && !p.containsRule(RuleTag::OmegaBL),
              "Loeb premise " + std::to_string(n) + " uses cut or omega");
    out.check(checkProof(p, cutFree).accepted, "Loeb premise " + std::to_string(n) + " rejected cut-free");
    out.info.push_back("Loeb premise n=" + std::to_string(n) + ": " + std::to_string(p.nodeCount()) + " nodes");
  }
}

/// Runs the procedure step by step from `start`, checking that S, T and U only
/// grow and that S and T stay disjoint. Returns the final pair.
Pair replay(const Pair& start, const VariableUniverse& universe, std::size_t depth, Outcome& out,
            const std::string& label) {
  SaturationState st = startSaturation(start, universe, depth);
  ConsistencyOracle oracle(depth);
  while (!st.exhausted && st.stage < 20000) {
    Pair before = st.pair;
    VariableSet ubefore = st.universe.members();
    saturationStep(st, oracle);
    if (!isSubset(before.left, st.pair.left) || !isSubset(before.right, st.pair.right) ||
        !isSubset(ubefore, st.universe.members())) {
      out.fail(label + ": stage " + std::to_string(st.stage) + " is not monotone");
    }
    for (const auto& g : st.pair.left) {
      if (st.pair.right.contains(g)) out.fail(label + ": " + print(g) + " in S and T");
    }
  }
  out.check(st.exhausted, label + ": replay did not finish");
  return st.pair;
}

void criterion5(Outcome& out) {
  const char* fixtures[] = {
      "|- box P -> P",
      "|- (forall v0. P(v0)) -> box forall v0. P(v0)",
      "|- dia T",
      "|- P -> box P",
      "|- box box F -> box F",
      "|- (forall v0. box P(v0)) -> box forall v0. P(v0)",
      "P(v0) |- forall v1. P(v1)",
      "|- box (P | Q) -> box P | box Q",
      "box exists v0. P(v0) |- exists v0. box P(v0)",
      "dia T |- dia dia T",
  };
  std::size_t replays = 0;
  for (const char* text : fixtures) {
    const std::string label = text;
    Sequent s = parseSequent(text);
    CanonicalWorld root = rootFromSequent(s);
    CanonicalFragment frag = buildCanonicalFragment(root);
    const auto& m = frag.model;
    out.check(!frag.truncated, label + ": fragment truncated");
    out.check(validateModel(m).empty(), label + ": model fails validation");

    auto adj = oracle::adjacency(m.frame);
    for (std::size_t a = 0; a < adj.size(); ++a) {
      for (auto b : adj[a]) {
        if (a == b) out.fail(label + ": reflexive world");
        for (auto c : adj[b]) {
          if (!m.frame.related(a, c)) out.fail(label + ": not transitive");
        }
      }
      if (oracle::longestPath(adj, a) < 0) out.fail(label + ": cycle, so not in BL");
    }
    auto cls = classifyFrame(m.frame);
    out.check(cls.transitive && cls.irreflexive && cls.converselyWellFounded && cls.boundedLength,
              label + ": classifier disagrees");
    out.check(oracle::refutesFO(m, frag.root, s), label + ": root does not refute the sequent");
    out.check(static_cast<std::size_t>(oracle::longestPath(adj, frag.root)) <= root.glWitness,
              label + ": height exceeds the GL witness");
    out.check(truthLemmaFailures(frag).empty(), label + ": truth lemma fails");

    for (WorldId w = 0; w < frag.worlds.size(); ++w) {
      auto rep = checkSaturated(frag.worlds[w].state);
      out.check(rep.processedViolations() == 0, label + ": saturation violation at world " + std::to_string(w));
      out.check(rep.overlap.empty(), label + ": S and T overlap at world " + std::to_string(w));
    }

    // Replay every trace stage by stage.
    VariableUniverse u(vars(s));
    if (u.members().empty()) u.addFresh();
    Pair seed{withFormula(s.antecedent, Formula::box(Formula::negation(diamondTower(root.glWitness)))), s.succedent};
    Pair final = replay(seed, u, root.state.depth, out, label + " root");
    out.check(final == root.pair, label + ": root replay differs");
    ++replays;
    for (WorldId w = 0; w < frag.worlds.size(); ++w) {
      if (!frag.parent[w]) continue;
      const auto& parent = frag.worlds[*frag.parent[w]];
      bool reproduced = false;
      for (const auto& target : boxedMembers(parent.pair.right)) {
        if (!frag.worlds[w].pair.right.contains(target.body())) continue;
        Pair p = replay(successorSeed(parent, target), parent.universe, parent.state.depth, out,
                        label + " world " + std::to_string(w));
        ++replays;
        reproduced = reproduced || p == frag.worlds[w].pair;
      }
      out.check(reproduced, label + ": world " + std::to_string(w) + " not reproduced by any successor seed");
    }
    out.info.push_back(label + " : worlds " + std::to_string(m.worldCount()) + ", witness " +
                       std::to_string(root.glWitness));
  }
  out.info.push_back(std::to_string(replays) + " traces replayed");
}

bool propositional(const Sequent& s) {
  for (const auto* side : {&s.antecedent, &s.succedent}) {
    for (const auto& f : *side) {
      if (!isPropositional(f)) return false;
    }
  }
  return true;
}

void criterion6(Outcome& out) {
  CheckOptions cutFree;
  cutFree.allowCut = false;
  std::vector<Proof> facts;
  for (auto& e : buildGallery()) facts.push_back(std::move(e.proof));
  // Predicate facts from the same constructors and from bounded search.
  const Formula boxAll = parse("box forall v0. R(v0)");
  facts.push_back(mkIdentity(boxAll));
  facts.push_back(mkFourAxiom(Formula::box(parse("forall v0. R(v0)"))));
  facts.push_back(mkNecessitation(mkIdentity(parse("forall v0. R(v0)"))));
  // More instances of the gallery constructors.
  for (std::size_t k = 6; k <= 8; ++k) facts.push_back(mkDiamondLadder(k));
  for (std::size_t i = 2; i <= 4; ++i) facts.push_back(mkFourAxiom(boxTower(i, parse("P"))));
  facts.push_back(mkFourAxiom(parse("Q")));
  facts.push_back(mkNecessitation(mkFourAxiom(parse("Q"))));
  CutFreeSearcher searcher({8, 2'000'000});
  for (const char* text : {"box forall v0. R(v0) |- forall v0. box R(v0)", "forall v0. box R(v0) |- box R(v1)",
                           "forall v0. R(v0) |- R(v1)", "R(v1) |- exists v0. R(v0)",
                           "box R(v1) |- box box R(v1)"}) {
    auto r = searcher.prove(parseSequent(text));
    if (!r.proof) {
      out.fail(std::string("no proof of fact ") + text);
      continue;
    }
    facts.push_back(*r.proof);
  }

  // Cut every fact or earlier cut against every fact on each shared formula,
  // skipping cuts whose conclusion repeats a premise.
  std::vector<Proof> cuts;
  std::set<Sequent> seen;
  for (const auto& f : facts) seen.insert(f.conclusion);
  auto cutAll = [&](const std::vector<Proof>& lefts, const std::vector<Proof>& rights, std::vector<Proof>& into) {
    for (const auto& a : lefts) {
      for (const auto& b : rights) {
        for (const auto& phi : a.conclusion.succedent) {
          if (!b.conclusion.antecedent.contains(phi)) continue;
          Sequent c{setUnion(a.conclusion.antecedent, withoutFormula(b.conclusion.antecedent, phi)),
                    setUnion(withoutFormula(a.conclusion.succedent, phi), b.conclusion.succedent)};
          if (!seen.insert(c).second) continue;
          Annotations ann;
          ann.cutFormula = phi;
          Proof left = weaken(a, Sequent{c.antecedent, withFormula(c.succedent, phi)});
          Proof right = weaken(b, Sequent{withFormula(c.antecedent, phi), c.succedent});
          into.push_back(makeNode(RuleTag::Cut, c, {left, right}, ann));
        }
      }
    }
  };
  std::vector<Proof> round;
  cutAll(facts, facts, round);
  for (int depth = 0; depth < 6 && !round.empty() && cuts.size() < 150; ++depth) {
    cuts.insert(cuts.end(), round.begin(), round.end());
    std::vector<Proof> next;
    cutAll(round, facts, next);
    cutAll(facts, round, next);
    round = std::move(next);
  }

  std::size_t prop = 0, pred = 0;
  for (const auto& p : cuts) {
    const std::string label = print(p.conclusion);
    if (!checkProof(p).accepted) {
      out.fail(label + ": cut proof rejected: " + checkProof(p).describe());
      continue;
    }
    if (propositional(p.conclusion)) {
      ++prop;
      GLVerdict v = decide(p.conclusion);
      out.check(isProof(v), label + ": decide does not prove it");
      out.check(certify(v, p.conclusion).ok, label + ": decide verdict does not certify");
    } else {
      ++pred;
      auto r = searcher.prove(p.conclusion);
      if (!r.proof) {
        out.fail(label + ": no cut-free proof at depth 8");
        continue;
      }
      out.check(r.proof->conclusion == p.conclusion, label + ": search proved a different sequent");
      out.check(!r.proof->containsRule(RuleTag::Cut), label + ": search proof contains cut");
      out.check(checkProof(*r.proof, cutFree).accepted, label + ": search proof rejected cut-free");
    }
  }
  out.check(cuts.size() >= 50, "only " + std::to_string(cuts.size()) + " cut sequents");
  out.check(pred > 0, "no predicate cases");
  out.info.push_back(std::to_string(cuts.size()) + " cut sequents: " + std::to_string(prop) +
                     " decided, " + std::to_string(pred) + " by bounded search");
}

void criterion7(Outcome& out) {
  std::size_t frames = 0, acyclicModels = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::uint32_t mask = 0; mask < (1u << (n * n)); ++mask) {
      ++frames;
      Frame f(n);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          if ((mask >> (a * n + b)) & 1u) f.addEdge(a, b);
        }
      }
      auto adj = oracle::adjacency(f);
      bool trans = true, irrefl = true, acyclic = true;
      for (std::size_t a = 0; a < n; ++a) {
        irrefl = irrefl && !f.related(a, a);
        for (auto b : adj[a]) {
          for (auto c : adj[b]) trans = trans && f.related(a, c);
        }
        acyclic = acyclic && oracle::longestPath(adj, a) >= 0;
      }
      auto cls = classifyFrame(f);
      const std::string label = std::to_string(n) + " worlds, mask " + std::to_string(mask);
      out.check(cls.transitive == trans && cls.irreflexive == irrefl, label + ": wrong transitivity/irreflexivity");
      out.check(cls.converselyWellFounded == acyclic, label + ": wrong conversely-well-founded");
      out.check(!(cls.transitive && cls.irreflexive) || cls.converselyWellFounded,
                label + ": transitive and irreflexive but not conversely well-founded");
      out.check(!cls.converselyWellFounded || cls.boundedLength, label + ": CW but not bounded-length");
      if (!acyclic) continue;

      ++acyclicModels;
      KripkeModel m;
      for (std::size_t w = 0; w < n; ++w) m.addWorld("w" + std::to_string(w));
      m.frame = f;
      Element d = m.element("d");
      for (std::size_t w = 0; w < n; ++w) m.addToDomain(w, d);
      for (std::size_t w = 0; w < n; ++w) {
        const auto h = static_cast<std::size_t>(oracle::longestPath(adj, w));
        out.check(cls.heightPerWorld[w] && *cls.heightPerWorld[w] == h, label + ": wrong height");
        out.check(boundednessWitness(m, w) == h + 1, label + ": boundedness witness is not height + 1");
        out.check(oracle::pathOfLength(adj, w, h) && !oracle::pathOfLength(adj, w, h + 1),
                  label + ": path oracle disagrees");
      }
    }
  }
  // Random acyclic models with nontrivial domains and interpretations.
  std::mt19937_64 rng(seedFromEnvironment(7));
  for (int i = 0; i < 200; ++i) {
    KripkeModel m = oracle::randomModel(rng, 5, 3);
    auto adj = oracle::adjacency(m.frame);
    for (WorldId w = 0; w < m.worldCount(); ++w) {
      out.check(boundednessWitness(m, w) == static_cast<std::size_t>(oracle::longestPath(adj, w)) + 1,
                "random model " + std::to_string(i) + ": boundedness witness is not height + 1");
    }
    ++acyclicModels;
  }
  out.info.push_back(std::to_string(frames) + " frames classified, " + std::to_string(acyclicModels) +
                     " acyclic models checked");
}

}  // namespace

int main() {
  bool all = true;
  all &= runCriterion(1, "propositional verdicts certify", 5.0, criterion1);
  all &= runCriterion(2, "decide agrees with the brute-force oracle", 60.0, criterion2);
  all &= runCriterion(3, "gallery end-sequents hold on random models", 30.0, criterion3);
  all &= runCriterion(4, "omega certificates and Loeb premises", std::nullopt, criterion4);
  all &= runCriterion(5, "saturation fixtures yield certified countermodels", std::nullopt, criterion5);
  all &= runCriterion(6, "cut sequents re-proved cut-free", std::nullopt, criterion6);
  all &= runCriterion(7, "exhaustive frame classification", std::nullopt, criterion7);
  std::cout << (all ? "all criteria passed" : "some criteria failed") << '\n';
  return all ? 0 : 1;
}
