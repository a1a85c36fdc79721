#include <doctest.h>

#include <functional>

#include "nqgl/gallery.hpp"
#include "nqgl/gl_prover.hpp"
#include "nqgl/proof_io.hpp"
#include "nqgl/syntax.hpp"
#include "oracles.hpp"

using namespace nqgl;

namespace {

Sequent seq(const char* text) { return parseSequent(text); }
Formula f(const char* text) { return parse(text); }

Annotations principal(const Formula& m) {
  Annotations a;
  a.principal = m;
  return a;
}

// Every strict partial order on n <= 4 worlds as adjacency lists.
std::vector<oracle::Adjacency> strictOrders(std::size_t n) {
  std::vector<oracle::Adjacency> out;
  for (std::uint32_t mask = 0; mask < (1u << (n * n)); ++mask) {
    oracle::Adjacency a(n);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (mask >> (i * n + i) & 1) ok = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask >> (i * n + j) & 1) a[i].push_back(j);
      }
    }
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (auto j : a[i]) {
        for (auto k : a[j]) {
          if (!(mask >> (i * n + k) & 1)) ok = false;
        }
      }
    }
    if (ok) out.push_back(a);
  }
  return out;
}

// Valid on every strict partial order with at most maxWorlds worlds (atoms P, Q).
bool bruteForceValid(const Formula& phi, std::size_t maxWorlds) {
  for (std::size_t n = 1; n <= maxWorlds; ++n) {
    for (const auto& adj : strictOrders(n)) {
      for (std::uint32_t v = 0; v < (1u << (2 * n)); ++v) {
        std::vector<std::set<std::string>> val(n);
        for (std::size_t w = 0; w < n; ++w) {
          if (v >> w & 1) val[w].insert("P");
          if (v >> (n + w) & 1) val[w].insert("Q");
        }
        for (std::size_t w = 0; w < n; ++w) {
          if (!oracle::eval(adj, val, w, phi)) return false;
        }
      }
    }
  }
  return true;
}

void forEachNode(Proof& p, const std::function<void(Proof&)>& fn) {
  fn(p);
  for (auto& q : p.premises) forEachNode(q, fn);
}

bool unrefutedEverywhere(const KripkeModel& m, const Sequent& s) {
  for (WorldId w = 0; w < m.worldCount(); ++w) {
    if (refutesSequent(m, w, s)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("axioms") {
  CHECK(checkProof(axiomId(f("P"))));
  CHECK(checkProof(axiomTop()));
  CHECK(checkProof(axiomBot()));
  CHECK(checkProof(axiomId(f("box P & Q"))));
  CheckOptions atomic;
  atomic.atomicAxiomsOnly = true;
  CHECK_FALSE(checkProof(axiomId(f("box P")), atomic));
  Proof bad = axiomId(f("P"));
  bad.conclusion = seq("P |- Q");
  CHECK_FALSE(checkProof(bad));
  Proof extra = axiomId(f("P"));
  extra.conclusion = seq("P, Q |- P");
  CHECK_FALSE(checkProof(extra));  // weakening is the Set rule's job
}

TEST_CASE("Set rule") {
  CHECK(checkProof(weaken(axiomId(f("P")), seq("P, Q |- P, R"))));
  Proof bad = makeNode(RuleTag::Set, seq("Q |- P"), {axiomId(f("P"))});
  auto r = checkProof(bad);
  CHECK_FALSE(r);
  CHECK(r.path.empty());
}

TEST_CASE("Box rule with explicit split") {
  Annotations ann;
  ann.boxKept = FormulaSet{f("P")};
  ann.boxUnboxed = FormulaSet{f("Q")};
  Proof leaf = makeNode(RuleTag::Set, seq("box P, Q |- R"), {axiomId(f("R"))});
  Proof box = makeNode(RuleTag::Box, seq("box P, box Q |- box R"), {leaf}, ann);
  auto r = checkProof(box);
  // The Box node itself is fine; the failure is at the (unsound) Set leaf.
  CHECK_FALSE(r);
  CHECK(r.path == std::vector<std::size_t>{0});

  Proof good = makeNode(RuleTag::Box, seq("box P, box Q |- box Q"), {weaken(axiomId(f("Q")), seq("box P, Q |- Q"))},
                        ann);
  CHECK(checkProof(good));
  // Overlapping split: P kept boxed and unboxed.
  Annotations both;
  both.boxKept = FormulaSet{f("P")};
  both.boxUnboxed = FormulaSet{f("P")};
  Proof overlap =
      makeNode(RuleTag::Box, seq("box P |- box P"), {weaken(axiomId(f("P")), seq("box P, P |- P"))}, both);
  CHECK(checkProof(overlap));
  // Split that does not reproduce the conclusion.
  Annotations wrong = ann;
  wrong.boxKept = FormulaSet{f("P"), f("S")};
  good.ann = wrong;
  CHECK_FALSE(checkProof(good));
}

TEST_CASE("AllR eigenvariable condition") {
  Formula all = f("forall v0. P(v0)");
  Annotations ok = principal(all);
  ok.eigenvariable = Variable{5};
  // Conclusion of AllR from Gamma |- P(y) with y in vars(Gamma) is rejected.
  Proof viol = makeNode(RuleTag::AllR, seq("P(v5) |- forall v0. P(v0)"), {axiomId(f("P(v5)"))}, ok);
  auto r = checkProof(viol);
  CHECK_FALSE(r);
  CHECK(r.reason.find("eigen") != std::string::npos);

  // Correct use: forall v0. P(v0) |- forall v0. P(v0) via AllL then AllR.
  Annotations l = principal(all);
  l.witness = Variable{5};
  Proof left = makeNode(RuleTag::AllL, seq("forall v0. P(v0) |- P(v5)"),
                        {weaken(axiomId(f("P(v5)")), seq("forall v0. P(v0), P(v5) |- P(v5)"))}, l);
  Proof right = makeNode(RuleTag::AllR, seq("forall v0. P(v0) |- forall v0. P(v0)"), {left}, ok);
  CHECK(checkProof(right));
  // The eigenvariable must not occur bound either.
  Annotations bad = ok;
  bad.eigenvariable = Variable{0};
  Proof left0 = makeNode(RuleTag::AllL, seq("forall v0. P(v0) |- P(v0)"),
                         {weaken(axiomId(f("P(v0)")), seq("forall v0. P(v0), P(v0) |- P(v0)"))}, principal(all));
  CHECK_FALSE(checkProof(makeNode(RuleTag::AllR, seq("forall v0. P(v0) |- forall v0. P(v0)"), {left0}, bad)));
}

TEST_CASE("AllL rejects capture") {
  Formula all = f("forall v0. forall v1. Q(v0, v1)");
  Annotations a = principal(all);
  a.witness = Variable{1};
  Proof leaf = axiomId(f("forall v1. Q(v1, v1)"));
  Proof p = makeNode(RuleTag::AllL, Sequent{{all}, {f("forall v1. Q(v1, v1)")}},
                     {weaken(leaf, Sequent{{all, f("forall v1. Q(v1, v1)")}, {f("forall v1. Q(v1, v1)")}})}, a);
  CHECK_FALSE(checkProof(p));
}

TEST_CASE("Cut and the cut policy") {
  // P |- P & P by AndR, then cut with P & P |- P.
  Formula pp = f("P & P");
  Proof andR = makeNode(RuleTag::AndR, seq("P |- P & P"), {axiomId(f("P")), axiomId(f("P"))}, principal(pp));
  Proof andL = makeNode(RuleTag::AndL1, seq("P & P |- P"), {axiomId(f("P"))}, principal(pp));
  Annotations c;
  c.cutFormula = pp;
  Proof cut = makeNode(RuleTag::Cut, seq("P |- P"), {andR, andL}, c);
  CHECK(checkProof(cut));
  CheckOptions noCut;
  noCut.allowCut = false;
  CHECK_FALSE(checkProof(cut, noCut));
  Proof mutated = cut;
  mutated.ann.cutFormula = f("P");
  CHECK_FALSE(checkProof(mutated));
}

TEST_CASE("four axiom and necessitation") {
  for (const char* text : {"P", "T", "forall v0. P(v0)", "P & Q", "box P"}) {
    Proof p = mkFourAxiom(f(text));
    CHECK(p.conclusion == Sequent{{Formula::box(f(text))}, {Formula::box(Formula::box(f(text)))}});
    CHECK(checkProof(p, {false}));
  }
  Proof top = mkNecessitation(axiomTop());
  CHECK(top.conclusion == seq("|- box T"));
  CHECK(checkProof(top));
  Proof bp = mkNecessitation(axiomId(f("P")));
  CHECK(bp.conclusion == seq("box P |- box P"));
  CHECK(checkProof(bp));
  CHECK_THROWS(mkNecessitation(weaken(axiomId(f("P")), seq("P |- P, Q"))));
}

TEST_CASE("diamond ladders") {
  for (std::size_t k = 0; k <= 6; ++k) {
    Proof p = mkDiamondLadder(k);
    CHECK(p.conclusion == Sequent{{diamondTower(k + 1)}, {diamondTower(k)}});
    CHECK(checkProof(p, {false}));
    CHECK(p.nodeCount() == 2 + 5 * k);
  }
  CHECK(print(mkDiamondLadder(3).conclusion) == "dia dia dia dia T |- dia dia dia T");
  for (std::size_t k = 0; k <= 3; ++k) {
    CHECK(bruteForceValid(sequentFormula(mkDiamondLadder(k).conclusion), 4));
  }
}

TEST_CASE("identity expansion from atomic axioms") {
  CheckOptions atomic;
  atomic.atomicAxiomsOnly = true;
  atomic.allowCut = false;
  CHECK(mkIdentity(f("P(v0)")).nodeCount() == 1);
  CHECK(checkProof(mkIdentity(f("P & Q")), atomic));
  CHECK(checkProof(mkIdentity(f("box P")), atomic));
  oracle::FormulaGen gen(99);
  for (int i = 0; i < 300; ++i) {
    Formula phi = gen(1 + i % 12, 3);
    Proof p = mkIdentity(phi);
    INFO(print(phi));
    CHECK(p.conclusion == Sequent{{phi}, {phi}});
    CHECK(checkProof(p, atomic));
  }
  for (const char* text : {"forall v0. exists v1. Q(v0, v1)", "forall v0. box P(v0) -> P(v1)",
                           "exists v2. forall v0. box (P(v0) & P(v2))"}) {
    CHECK(checkProof(mkIdentity(f(text)), atomic));
  }
}

TEST_CASE("schematic certificates") {
  Proof w = omegaWeakening();
  CHECK(w.conclusion == seq("P |- P"));
  CHECK(checkProof(w));
  REQUIRE(w.certificate);
  for (std::size_t k = 0; k <= 8; ++k) {
    Proof inst = instantiate(*w.certificate, k);
    Sequent want = seq("P |- P");
    want.succedent.insert(diamondTower(k));
    CHECK(inst.conclusion == want);
    CHECK(checkProof(inst));
  }
  CHECK(instantiate(*w.certificate, 0).conclusion == seq("P |- P, T"));

  // Offset mutation: the template adds dia^{n+1} T.
  SchematicCertificate off = *w.certificate;
  off.templateProof = weaken(axiomId(f("P")), parseSequent("P |- P, dia^{n+1} T", {true}));
  CHECK_FALSE(checkSchematic(off, seq("P |- P")));
  CHECK_FALSE(checkProof(makeOmega(seq("P |- P"), off)));

  // Wrong conclusion.
  CHECK_FALSE(checkProof(makeOmega(seq("P |- Q"), *w.certificate)));
  // Conclusion mentioning the parameter.
  CHECK_FALSE(checkProof(makeOmega(parseSequent("P |- P, dia^{n} T", {true}), *w.certificate)));

  Proof ladder = omegaLadder();
  CHECK(checkProof(ladder, {false}));
  for (std::size_t k = 0; k <= 8; ++k) CHECK(checkProof(instantiate(*ladder.certificate, k), {false}));

  // Instance bound override still accepts.
  CheckOptions deep;
  deep.instanceBound = 8;
  CHECK(checkProof(w, deep));
}

TEST_CASE("a template whose side conditions depend on the exponent is rejected") {
  // The template claims dia^{n} T |- dia^{n} T as an axiom on T: only the
  // k = 0 instance is an instance of |- T. The symbolic pass must catch it
  // even when K = 0.
  SchematicCertificate cert;
  cert.templateProof = makeNode(RuleTag::AxiomTop, parseSequent("|- dia^{n} T", {true}), {});
  cert.instanceCheckBound = 0;
  CHECK_FALSE(checkSchematic(cert, seq("|-")));
}

TEST_CASE("gallery proofs check, round trip through JSON and resist mutation") {
  auto gallery = buildGallery();
  CHECK(gallery.size() >= 25);
  CheckOptions cutFree;
  cutFree.allowCut = false;
  for (const auto& e : gallery) {
    INFO(e.name);
    CHECK(checkProof(e.proof, cutFree));
    Proof back = proofFromJson(proofDocument(e.proof));
    CHECK(back.conclusion == e.proof.conclusion);
    CHECK(checkProof(back, cutFree));
    CHECK(proofToJson(back) == proofToJson(e.proof));

    Proof mutated = e.proof;
    std::size_t flips = 0;
    forEachNode(mutated, [&](Proof& node) {
      if (node.rule == RuleTag::Box && node.ann.boxKept) {
        Proof copy = node;
        node.ann.boxKept->insert(f("Z"));
        CHECK_FALSE(checkProof(node, cutFree));
        node = copy;
        ++flips;
      }
      if (node.rule == RuleTag::AllR && node.ann.eigenvariable) {
        Proof copy = node;
        node.ann.eigenvariable = Variable{node.ann.eigenvariable->index + 100};
        CHECK_FALSE(checkProof(node, cutFree));
        node = copy;
        ++flips;
      }
    });
    (void)flips;
  }
}

TEST_CASE("soundness: gallery end-sequents hold on random transitive acyclic models") {
  auto gallery = buildGallery();
  std::set<PredicateSymbol> symbols;
  for (const auto& e : gallery) {
    auto s = oracle::symbolsOf(e.proof.conclusion);
    symbols.insert(s.begin(), s.end());
  }
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 150; ++i) {
    KripkeModel m = oracle::randomModel(rng, 5, 3, symbols);
    REQUIRE(validateModel(m).empty());
    for (const auto& e : gallery) {
      INFO(e.name);
      CHECK(unrefutedEverywhere(m, e.proof.conclusion));
    }
  }
}

TEST_CASE("soundness spot check: each rule preserves validity on transitive frames") {
  oracle::FormulaGen gen(31);
  std::mt19937_64 rng(8);
  int instances = 0;
  for (int round = 0; round < 400; ++round) {
    Formula a = gen(3, 1), b = gen(3, 1), c = gen(2, 1);
    FormulaSet g{c};
    std::vector<std::pair<std::vector<Sequent>, Sequent>> rules = {
        {{Sequent{g, {a}}, Sequent{g, {b}}}, Sequent{g, {Formula::conj(a, b)}}},
        {{Sequent{withFormula(g, a), {b}}}, Sequent{withFormula(g, Formula::conj(a, c)), {b}}},
        {{Sequent{g, {a}}, Sequent{withFormula(g, b), {c}}}, Sequent{withFormula(g, Formula::implies(a, b)), {c}}},
        {{Sequent{withFormula(g, a), {b}}}, Sequent{g, {Formula::implies(a, b)}}},
        {{Sequent{g, {a, b}}}, Sequent{withFormula(g, Formula::negation(a)), {b}}},
        {{Sequent{withFormula(g, a), {b}}}, Sequent{g, {Formula::negation(a), b}}},
        {{Sequent{g, {a}}, Sequent{withFormula(g, a), {b}}}, Sequent{g, {b}}},
        // Box: box G, D |- phi / box G, box D |- box phi with G = {c}, D = {a}.
        {{Sequent{{Formula::box(c), a}, {b}}}, Sequent{{Formula::box(c), Formula::box(a)}, {Formula::box(b)}}},
    };
    for (int m = 0; m < 3; ++m) {
      KripkeModel model = oracle::randomModel(rng, 4, 1, {{"P", 0}, {"Q", 0}, {"R", 0}});
      for (std::size_t r = 0; r < rules.size(); ++r) {
        const auto& [premises, conclusion] = rules[r];
        INFO("rule instance " << r << ": " << print(conclusion));
        bool premisesValid = true;
        for (const auto& p : premises) premisesValid = premisesValid && unrefutedEverywhere(model, p);
        if (premisesValid) {
          ++instances;
          CHECK(unrefutedEverywhere(model, conclusion));
        }
      }
    }
  }
  CHECK(instances > 100);
}

TEST_CASE("check reports name the failing node") {
  Proof ok = mkFourAxiom(f("P"));
  Proof broken = makeNode(RuleTag::NegR, seq("|- ~P, box P"), {ok});
  auto r = checkProof(broken);
  CHECK_FALSE(r);
  CHECK(r.path.empty());
  Proof deep = mkDiamondLadder(2);
  deep.premises[0].premises[0].ann.boxUnboxed = FormulaSet{f("P")};
  auto r2 = checkProof(deep);
  CHECK_FALSE(r2);
  CHECK(r2.path == std::vector<std::size_t>{0, 0});
  CHECK(r2.describe().find("box") != std::string::npos);
}
