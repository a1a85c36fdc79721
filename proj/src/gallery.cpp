#include "nqgl/gallery.hpp"

#include <fstream>
#include <stdexcept>

#include "nqgl/proof_io.hpp"
#include "nqgl/syntax.hpp"

namespace nqgl {

namespace {

Formula tower() { return Formula::atom(towerParameter()); }

Proof necessitationFromAndL() {
  Formula p = parse("P"), pq = parse("P & Q");
  Annotations ann;
  ann.principal = pq;
  Proof andl = makeNode(RuleTag::AndL1, Sequent{{pq}, {p}}, {axiomId(p)}, ann);
  return mkNecessitation(andl);
}

}  // namespace

Proof omegaWeakening() {
  Formula p = parse("P");
  SchematicCertificate cert;
  cert.templateProof = weaken(axiomId(p), Sequent{{p}, {p, tower()}});
  return makeOmega(Sequent{{p}, {p}}, std::move(cert));
}

Proof omegaLadder() {
  Proof step = mkDiamondLadder(1);
  Sequent goal = step.conclusion;
  SchematicCertificate cert;
  cert.templateProof = weaken(step, Sequent{goal.antecedent, withFormula(goal.succedent, tower())});
  return makeOmega(goal, std::move(cert));
}

Proof loebPremise(std::size_t n, const SearchOptions& options) {
  Sequent goal = parseSequent("box (box P -> P) |- box P");
  goal.succedent.insert(diamondTower(n));
  CutFreeSearcher searcher(options);
  auto result = searcher.prove(goal);
  if (!result.proof) {
    throw std::runtime_error("no cut-free proof of " + print(goal) + " within depth " +
                             std::to_string(options.depth));
  }
  return std::move(*result.proof);
}

std::vector<GalleryEntry> buildGallery(const GalleryOptions& options) {
  std::vector<GalleryEntry> out;
  auto add = [&](std::string name, std::string what, Proof p) {
    out.push_back(GalleryEntry{std::move(name), std::move(what), std::move(p)});
  };

  const char* identities[] = {"P",     "P & Q",        "P -> Q", "~P", "box P", "forall v0. R(v0)",
                              "dia P", "box (P -> Q) & dia ~P"};
  std::size_t i = 0;
  for (const char* text : identities) {
    add("identity_" + std::to_string(i++), std::string("identity from atomic axioms: ") + text,
        mkIdentity(parse(text)));
  }

  const char* four[] = {"P", "T", "forall v0. R(v0)", "P & Q", "box P"};
  i = 0;
  for (const char* text : four) {
    std::string name = i == 0 ? "fouraxiom" : "fouraxiom_" + std::to_string(i);
    add(name, std::string("box A |- box box A for A = ") + text, mkFourAxiom(parse(text)));
    ++i;
  }

  add("necessitation_0", "|- box T from |- T", mkNecessitation(axiomTop()));
  add("necessitation_1", "box P |- box P from P |- P", mkNecessitation(axiomId(parse("P"))));
  add("necessitation_2", "box (P & Q) |- box P", necessitationFromAndL());

  for (std::size_t k = 0; k <= 5; ++k) {
    add("ladder_" + std::to_string(k), "dia^{k+1} T |- dia^k T for k = " + std::to_string(k), mkDiamondLadder(k));
  }

  add("omega_weakening", "P |- P through the schematic weakening family", omegaWeakening());
  add("omega_ladder", "dia dia T |- dia T through a schematic family over the one-step ladder", omegaLadder());

  for (std::size_t n = 0; n <= options.loebMax; ++n) {
    add("loeb_premise_" + std::to_string(n), "box (box P -> P) |- box P, dia^n T for n = " + std::to_string(n),
        loebPremise(n, options.search));
  }
  return out;
}

std::vector<std::filesystem::path> writeGallery(const std::filesystem::path& dir,
                                                const std::vector<GalleryEntry>& entries) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  nlohmann::json manifest = nlohmann::json::array();
  auto dump = [&](const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << j.dump(2) << '\n';
    if (!f) throw std::runtime_error("write failed: " + path.string());
    written.push_back(path);
  };
  for (const auto& e : entries) {
    dump(dir / (e.name + ".json"), proofDocument(e.proof));
    manifest.push_back({{"name", e.name},
                        {"file", e.name + ".json"},
                        {"description", e.description},
                        {"conclusion", print(e.proof.conclusion)},
                        {"cutFree", !e.proof.containsRule(RuleTag::Cut)},
                        {"nodes", e.proof.nodeCount()}});
  }
  dump(dir / "manifest.json", manifest);
  return written;
}

}  // namespace nqgl
