#include <doctest.h>

#include "nqgl/gl_prover.hpp"
#include "nqgl/syntax.hpp"
#include "oracles.hpp"

using namespace nqgl;

namespace {

std::size_t boxedSubformulas(const Formula& phi) {
  std::size_t n = 0;
  for (const auto& s : subformulas(phi)) n += s.is(Kind::Box);
  return n;
}

// Independent satisfaction check of a countermodel via the oracle evaluator.
bool oracleRefutes(const Countermodel& cm, const Formula& phi) {
  const auto& m = cm.model;
  auto adj = oracle::adjacency(m.frame);
  std::vector<std::set<std::string>> val(m.worldCount());
  for (WorldId w = 0; w < m.worldCount(); ++w) {
    for (const auto& [p, tuples] : m.interpretation(w)) {
      if (!tuples.empty()) val[w].insert(p.name);
    }
  }
  return !oracle::eval(adj, val, cm.world, phi);
}

}  // namespace

TEST_CASE("decide on the classic examples") {
  for (const char* text : {"box (box P -> P) -> box P", "box P -> box box P", "box (P -> Q) -> (box P -> box Q)",
                           "box P -> box (box P -> P)", "P | ~P", "box T", "dia P -> dia T"}) {
    INFO(text);
    Sequent s = parseGoal(text);
    auto v = decide(s);
    REQUIRE(isProof(v));
    CHECK(certify(v, s));
    CHECK_FALSE(validityOracle(parse(text), 4));
  }
  for (const char* text : {"box P -> P", "P -> box P", "dia T", "box F", "box (P | Q) -> box P | box Q"}) {
    INFO(text);
    Sequent s = parseGoal(text);
    auto v = decide(s);
    REQUIRE_FALSE(isProof(v));
    CHECK(certify(v, s));
    CHECK(oracleRefutes(std::get<Countermodel>(v), parse(text)));
  }
}

TEST_CASE("countermodel shapes") {
  // box P -> P fails at a single world where P is false.
  auto v = decide(parseGoal("box P -> P"));
  const auto& cm = std::get<Countermodel>(v);
  CHECK(cm.model.worldCount() == 1);
  CHECK_FALSE(forces(cm.model, cm.world, parse("P")));
  // The two-world chain from the examples refutes it as well, at its leaf.
  KripkeModel chain;
  chain.addWorld("w0");
  chain.addWorld("w1");
  chain.frame.addEdge(0, 1);
  for (WorldId w = 0; w < 2; ++w) chain.addToDomain(w, chain.element("d"));
  chain.setTrue(0, {"P", 0});
  CHECK(refutesSequent(chain, 1, parseGoal("box P -> P")));
  CHECK_FALSE(refutesSequent(chain, 0, parseGoal("box P -> P")));

  // Needs depth: dia dia T is refuted by a 2-world chain (height 1).
  auto dd = decide(parseGoal("box box F -> box F"));
  const auto& m2 = std::get<Countermodel>(dd);
  CHECK(m2.model.worldCount() == 2);
  CHECK(certify(dd, parseGoal("box box F -> box F")));
}

TEST_CASE("certify rejects corrupted evidence") {
  Sequent s = parseGoal("box box F -> box F");
  auto v = decide(s);
  auto cm = std::get<Countermodel>(v);
  // Break transitivity on a 3-chain countermodel.
  Sequent s3 = parseGoal("box box box F -> box box F");
  auto v3 = decide(s3);
  auto cm3 = std::get<Countermodel>(v3);
  REQUIRE(cm3.model.worldCount() == 3);
  REQUIRE(certify(cm3, s3));
  cm3.model.frame.removeEdge(0, 2);
  auto r = certify(cm3, s3);
  CHECK_FALSE(r);
  CHECK(r.reason.find("transitive") != std::string::npos);
  // Wrong designated world.
  cm.world = 1;
  CHECK_FALSE(certify(cm, s));
  // Proof for the wrong sequent.
  auto lv = decide(parseGoal("box P -> box box P"));
  CHECK_FALSE(certify(lv, parseGoal("box P -> box box Q")));
  // Tampered proof node.
  auto proof = std::get<GLProof>(lv);
  proof.premises.at(0).rule = GLRule::AndL;
  CHECK_FALSE(checkGLProof(proof));
}

TEST_CASE("decide rejects predicate input") {
  CHECK_THROWS_AS(decide(parseGoal("forall v0. P(v0)")), std::invalid_argument);
  CHECK_THROWS_AS(decide(parseGoal("P(v0) -> P(v0)")), std::invalid_argument);
}

TEST_CASE("validityOracle examples") {
  auto d = validityOracle(parse("dia T"), 3);
  REQUIRE(d);
  CHECK(d->model.worldCount() == 1);
  CHECK(d->model.frame.successors(d->world).empty());
  CHECK_FALSE(validityOracle(parse("box (box P -> P) -> box P"), 4));
  CHECK_FALSE(validityOracle(parse("P | ~P"), 4));
  auto c = validityOracle(parse("box P -> P"), 2);
  REQUIRE(c);
  CHECK(certify(*c, parseGoal("box P -> P")));
}

TEST_CASE("agreement with the oracle on generated formulas") {
  oracle::FormulaGen gen(1234);
  int proved = 0, refuted = 0;
  for (int i = 0; i < 250; ++i) {
    Formula phi = gen(2 + i % 11, 2);
    Sequent s{{}, {phi}};
    DecideStats stats;
    auto v = decide(s, &stats);
    INFO(print(phi));
    CHECK(certify(v, s));
    if (isProof(v)) {
      ++proved;
      CHECK_FALSE(validityOracle(phi, 4));
    } else {
      ++refuted;
      CHECK(oracleRefutes(std::get<Countermodel>(v), phi));
    }
    const std::size_t boxes = boxedSubformulas(phi);
    CHECK(stats.maxModalSteps <= boxes);
    CHECK(stats.maxBranchLength <= (boxes + 1) * phi.size());
    CHECK(stats.blocked == 0);
  }
  CHECK(proved > 20);
  CHECK(refuted > 20);
}

TEST_CASE("GL proof JSON round trip") {
  auto v = decide(parseGoal("box (box P -> P) -> box P"));
  const auto& p = std::get<GLProof>(v);
  GLProof back = glProofFromJson(glProofToJson(p));
  CHECK(checkGLProof(back));
  CHECK(glProofToJson(back) == glProofToJson(p));
  CHECK(sequentFormula(parseSequent("A, B |- C")) == parse("A & B -> C"));
  CHECK(sequentFormula(parseSequent("|-")) == parse("T -> F"));
}
