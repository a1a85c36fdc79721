#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "nqgl/formula.hpp"
#include "nqgl/kripke.hpp"
#include "nqgl/sequent.hpp"

namespace nqgl {

/// Rules of the propositional GL calculus: G3-style classical rules plus
///   box G, G, box phi |- phi  /  box G |- box phi   (side formulas allowed)
enum class GLRule { Axiom, AndL, AndR, ImpL, ImpR, NegL, NegR, ModalGL };

std::string glRuleName(GLRule r);
std::optional<GLRule> glRuleFromName(std::string_view name);

struct GLProof {
  Sequent conclusion;
  GLRule rule = GLRule::Axiom;
  /// The decomposed formula; for ModalGL the succedent member box phi.
  std::optional<Formula> principal;
  std::vector<GLProof> premises;

  std::size_t nodeCount() const;
};

struct Countermodel {
  KripkeModel model;
  WorldId world = 0;
};

using GLVerdict = std::variant<GLProof, Countermodel>;

inline bool isProof(const GLVerdict& v) { return std::holds_alternative<GLProof>(v); }

struct DecideStats {
  std::size_t nodes = 0;
  /// Longest branch, counted in rule applications.
  std::size_t maxBranchLength = 0;
  /// Most GL-rule applications on a single branch.
  std::size_t maxModalSteps = 0;
  /// Backward GL steps refused because their premise repeats an ancestor premise.
  std::size_t blocked = 0;
};

/// Decides a propositional sequent. Throws std::invalid_argument on
/// quantifiers or predicate arguments.
///
/// Invertible rules are applied first (left before right, in formula order);
/// at a saturated leaf each succedent box phi is tried in formula order.
/// When every choice fails, the failed leaves form a tree whose transitive
/// closure is returned as the countermodel, rooted at world 0.
GLVerdict decide(const Sequent& s, DecideStats* stats = nullptr);

/// Checks every node of a GL proof. Premises may be weaker than the
/// canonical ones (fewer formulas), which keeps the check sound.
struct GLCheckResult {
  bool ok = true;
  std::vector<std::size_t> path;
  std::string reason;
  explicit operator bool() const { return ok; }
};
GLCheckResult checkGLProof(const GLProof& p);

/// Re-checks a verdict against the sequent it claims to settle: proofs by
/// checkGLProof, countermodels by validation, frame class (transitive,
/// irreflexive, bounded length) and refutesSequent.
GLCheckResult certify(const GLVerdict& v, const Sequent& s);

/// Brute force over every transitive irreflexive frame with at most
/// maxWorlds worlds and every valuation of the atoms of phi. Returns a
/// refuting model and world, or nothing.
std::optional<Countermodel> validityOracle(const Formula& phi, std::size_t maxWorlds);

/// /\ Gamma -> \/ Delta, with T and F for empty sides.
Formula sequentFormula(const Sequent& s);

nlohmann::json glProofToJson(const GLProof& p);
/// Accepts a bare node or a {"calculus": "GL", "proof": ...} document.
GLProof glProofFromJson(const nlohmann::json& j);
nlohmann::json glProofDocument(const GLProof& p);

}  // namespace nqgl
