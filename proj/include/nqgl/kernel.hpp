#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nqgl/formula.hpp"
#include "nqgl/sequent.hpp"

namespace nqgl {

enum class RuleTag {
  AxiomId,   // phi |- phi
  AxiomTop,  // |- T
  AxiomBot,  // F |-
  Set,       // weakening: Gamma <= Gamma', Delta <= Delta'
  Cut,
  AndR,
  AndL1,
  AndL2,
  ImpR,
  ImpL,
  NegR,
  NegL,
  AllR,
  AllL,
  Box,      // box G, D |- phi  /  box G, box D |- box phi
  OmegaBL,  // boundedness of length, premises given by a schematic certificate
};

std::string ruleName(RuleTag tag);
std::optional<RuleTag> ruleFromName(std::string_view name);
std::size_t premiseCount(RuleTag tag);

/// Rule-specific data attached to a proof node.
struct Annotations {
  /// Principal formula; inferred from the conclusion when absent.
  std::optional<Formula> principal;
  std::optional<Formula> cutFormula;
  /// AllR eigenvariable y.
  std::optional<Variable> eigenvariable;
  /// AllL instance variable z.
  std::optional<Variable> witness;
  /// Box split: Gamma stays boxed in the premise, Delta is unboxed. They may overlap.
  std::optional<FormulaSet> boxKept;
  std::optional<FormulaSet> boxUnboxed;

  bool operator==(const Annotations&) const = default;
};

struct SchematicCertificate;

struct Proof {
  Sequent conclusion;
  RuleTag rule = RuleTag::AxiomId;
  std::vector<Proof> premises;
  Annotations ann;
  std::shared_ptr<const SchematicCertificate> certificate;  // OmegaBL only

  std::size_t nodeCount() const;
  bool containsRule(RuleTag tag) const;
};

/// A finite stand-in for the premise family Gamma |- Delta, dia^k T (all k).
/// The template is an ordinary proof whose formulas may mention the tower
/// parameter atom (see towerParameter()); instance k replaces it by dia^k T.
struct SchematicCertificate {
  Proof templateProof;
  std::size_t instanceCheckBound = 3;
};

struct CheckOptions {
  bool allowCut = true;
  /// Restrict AxiomId to atomic formulas.
  bool atomicAxiomsOnly = false;
  /// Overrides every certificate's instanceCheckBound when set.
  std::optional<std::size_t> instanceBound;
};

/// Outcome of a check: accepted, or the first failing node (as a path of
/// premise indices from the root) and the reason.
struct CheckReport {
  bool accepted = true;
  std::vector<std::size_t> path;
  std::string reason;

  explicit operator bool() const { return accepted; }
  static CheckReport ok() { return {}; }
  static CheckReport reject(std::string why) { return {false, {}, std::move(why)}; }
  std::string describe() const;
};

CheckReport checkProof(const Proof& p, const CheckOptions& options = {});

/// Validates a certificate against the OmegaBL conclusion Gamma |- Delta:
/// instances k = 0..K must be proofs of Gamma |- Delta, dia^k T, and the
/// template itself must check with the tower parameter left opaque.
CheckReport checkSchematic(const SchematicCertificate& cert, const Sequent& conclusion,
                           const CheckOptions& options = {});

/// Replaces the tower parameter by dia^k T throughout the template.
Proof instantiate(const SchematicCertificate& cert, std::size_t k);

Sequent substituteTower(const Sequent& s, const Formula& replacement);

// Node constructors. They do not check anything.
Proof axiomId(const Formula& phi);
Proof axiomTop();
Proof axiomBot();
/// Set node; returns p unchanged when the sequents already agree.
Proof weaken(Proof p, const Sequent& conclusion);
Proof makeNode(RuleTag rule, Sequent conclusion, std::vector<Proof> premises, Annotations ann = {});
Proof makeOmega(Sequent conclusion, SchematicCertificate cert);

/// From a proof of Gamma |- phi, a proof of box Gamma |- box phi.
Proof mkNecessitation(const Proof& p);
/// box phi |- box box phi.
Proof mkFourAxiom(const Formula& phi);
/// dia^{k+1} T |- dia^k T, cut-free.
Proof mkDiamondLadder(std::size_t k);
/// phi |- phi from atomic axioms, |- T and F |- only.
Proof mkIdentity(const Formula& phi);

}  // namespace nqgl
