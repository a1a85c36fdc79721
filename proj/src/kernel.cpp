#include "nqgl/kernel.hpp"

#include <array>
#include <sstream>

#include "nqgl/syntax.hpp"

namespace nqgl {

namespace {

struct RuleInfo {
  RuleTag tag;
  const char* name;
  std::size_t premises;
};

constexpr std::array<RuleInfo, 16> kRules{{
    {RuleTag::AxiomId, "axiom-id", 0},
    {RuleTag::AxiomTop, "axiom-top", 0},
    {RuleTag::AxiomBot, "axiom-bot", 0},
    {RuleTag::Set, "set", 1},
    {RuleTag::Cut, "cut", 2},
    {RuleTag::AndR, "and-r", 2},
    {RuleTag::AndL1, "and-l1", 1},
    {RuleTag::AndL2, "and-l2", 1},
    {RuleTag::ImpR, "imp-r", 1},
    {RuleTag::ImpL, "imp-l", 2},
    {RuleTag::NegR, "neg-r", 1},
    {RuleTag::NegL, "neg-l", 1},
    {RuleTag::AllR, "all-r", 1},
    {RuleTag::AllL, "all-l", 1},
    {RuleTag::Box, "box", 1},
    {RuleTag::OmegaBL, "omega", 0},
}};

const RuleInfo& info(RuleTag tag) {
  for (const auto& r : kRules) {
    if (r.tag == tag) return r;
  }
  throw std::logic_error("unknown rule tag");
}

}  // namespace

std::string ruleName(RuleTag tag) { return info(tag).name; }

std::optional<RuleTag> ruleFromName(std::string_view name) {
  for (const auto& r : kRules) {
    if (name == r.name) return r.tag;
  }
  return std::nullopt;
}

std::size_t premiseCount(RuleTag tag) { return info(tag).premises; }

std::size_t Proof::nodeCount() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.nodeCount();
  if (certificate) n += certificate->templateProof.nodeCount();
  return n;
}

bool Proof::containsRule(RuleTag tag) const {
  if (rule == tag) return true;
  for (const auto& p : premises) {
    if (p.containsRule(tag)) return true;
  }
  return certificate && certificate->templateProof.containsRule(tag);
}

std::string CheckReport::describe() const {
  if (accepted) return "accepted";
  std::ostringstream out;
  out << "rejected at [";
  for (std::size_t i = 0; i < path.size(); ++i) out << (i ? "," : "") << path[i];
  out << "]: " << reason;
  return out.str();
}

namespace {

using Reason = std::optional<std::string>;

// The two contexts X with X + {m} = side: side without m, or side itself.
std::array<FormulaSet, 2> contextOptions(const FormulaSet& side, const Formula& m) {
  return {withoutFormula(side, m), side};
}

std::vector<Formula> principalCandidates(const Proof& p, const FormulaSet& side, Kind kind) {
  std::vector<Formula> out;
  if (p.ann.principal) {
    out.push_back(*p.ann.principal);
    return out;
  }
  for (const auto& f : side) {
    if (f.is(kind)) out.push_back(f);
  }
  return out;
}

std::string show(const Sequent& s) { return "'" + print(s) + "'"; }

// Tries every candidate principal formula; accepts when one of them fits.
template <class Fn>
Reason tryPrincipals(const Proof& p, const FormulaSet& side, Kind kind, const char* sideName, Fn&& fits) {
  auto candidates = principalCandidates(p, side, kind);
  if (candidates.empty()) return std::string("no principal formula of the right shape in the ") + sideName;
  Reason last;
  for (const auto& m : candidates) {
    if (!m.is(kind)) {
      last = "annotated principal " + print(m) + " has the wrong shape";
      continue;
    }
    if (!side.contains(m)) {
      last = "principal " + print(m) + " is not in the " + sideName + " of the conclusion";
      continue;
    }
    last = fits(m);
    if (!last) return std::nullopt;
  }
  return last;
}

Reason checkNode(const Proof& p, const CheckOptions& options);

Reason checkAxioms(const Proof& p, const CheckOptions& options) {
  const auto& c = p.conclusion;
  switch (p.rule) {
    case RuleTag::AxiomId:
      if (c.antecedent.size() != 1 || c.antecedent != c.succedent) {
        return "axiom-id needs a conclusion phi |- phi, got " + show(c);
      }
      if (options.atomicAxiomsOnly && !c.antecedent.begin()->is(Kind::Atom)) {
        return "axiom-id restricted to atoms, got " + print(*c.antecedent.begin());
      }
      return std::nullopt;
    case RuleTag::AxiomTop:
      if (!c.antecedent.empty() || c.succedent != FormulaSet{Formula::top()}) {
        return "axiom-top needs the conclusion |- T, got " + show(c);
      }
      return std::nullopt;
    case RuleTag::AxiomBot:
      if (!c.succedent.empty() || c.antecedent != FormulaSet{Formula::bottom()}) {
        return "axiom-bot needs the conclusion F |-, got " + show(c);
      }
      return std::nullopt;
    default:
      throw std::logic_error("not an axiom");
  }
}

Reason checkCut(const Proof& p) {
  const auto& c = p.conclusion;
  const auto& left = p.premises[0].conclusion;
  const auto& right = p.premises[1].conclusion;
  std::vector<Formula> candidates;
  if (p.ann.cutFormula) {
    candidates.push_back(*p.ann.cutFormula);
  } else {
    for (const auto& f : left.succedent) {
      if (right.antecedent.contains(f)) candidates.push_back(f);
    }
  }
  if (candidates.empty()) return "no cut formula shared by the premises";
  Reason last;
  for (const auto& phi : candidates) {
    if (!left.succedent.contains(phi) || !right.antecedent.contains(phi)) {
      last = "cut formula " + print(phi) + " must be in the left succedent and the right antecedent";
      continue;
    }
    for (const auto& delta : contextOptions(left.succedent, phi)) {
      for (const auto& lambda : contextOptions(right.antecedent, phi)) {
        if (c.antecedent == setUnion(left.antecedent, lambda) && c.succedent == setUnion(delta, right.succedent)) {
          return std::nullopt;
        }
      }
    }
    last = "conclusion " + show(c) + " is not the cut of the premises on " + print(phi);
  }
  return last;
}

Reason checkBox(const Proof& p) {
  const auto& c = p.conclusion;
  const auto& prem = p.premises[0].conclusion;
  if (c.succedent.size() != 1 || !c.succedent.begin()->is(Kind::Box)) {
    return "box rule needs a single boxed succedent, got " + show(c);
  }
  const Formula& phi = c.succedent.begin()->body();
  if (prem.succedent != FormulaSet{phi}) {
    return "box premise must have succedent {" + print(phi) + "}, got " + show(prem);
  }
  FormulaSet kept, unboxed;
  if (p.ann.boxKept || p.ann.boxUnboxed) {
    kept = p.ann.boxKept.value_or(FormulaSet{});
    unboxed = p.ann.boxUnboxed.value_or(FormulaSet{});
  } else {
    // Largest split compatible with the premise; any valid split is contained in it.
    for (const auto& psi : unboxSet(c.antecedent)) {
      if (prem.antecedent.contains(Formula::box(psi))) kept.insert(psi);
      if (prem.antecedent.contains(psi)) unboxed.insert(psi);
    }
  }
  if (c.antecedent != setUnion(boxSet(kept), boxSet(unboxed))) {
    return "box conclusion antecedent must be exactly box Gamma, box Delta for the split Gamma={" + print(kept) +
           "}, Delta={" + print(unboxed) + "}";
  }
  if (prem.antecedent != setUnion(boxSet(kept), unboxed)) {
    return "box premise antecedent must be exactly box Gamma, Delta for the split Gamma={" + print(kept) +
           "}, Delta={" + print(unboxed) + "}";
  }
  return std::nullopt;
}

Reason checkNode(const Proof& p, const CheckOptions& options) {
  if (p.rule != RuleTag::OmegaBL && p.certificate) return "only omega nodes carry a certificate";
  if (p.premises.size() != premiseCount(p.rule)) {
    return ruleName(p.rule) + " expects " + std::to_string(premiseCount(p.rule)) + " premises, got " +
           std::to_string(p.premises.size());
  }
  const auto& c = p.conclusion;
  auto prem = [&](std::size_t i) -> const Sequent& { return p.premises.at(i).conclusion; };

  switch (p.rule) {
    case RuleTag::AxiomId:
    case RuleTag::AxiomTop:
    case RuleTag::AxiomBot:
      return checkAxioms(p, options);

    case RuleTag::Set:
      if (!isSubset(prem(0).antecedent, c.antecedent) || !isSubset(prem(0).succedent, c.succedent)) {
        return "set rule needs the premise " + show(prem(0)) + " to be included in the conclusion " + show(c);
      }
      return std::nullopt;

    case RuleTag::Cut:
      if (!options.allowCut) return std::string("cut is not allowed in the cut-free fragment");
      return checkCut(p);

    case RuleTag::AndR:
      return tryPrincipals(p, c.succedent, Kind::And, "succedent", [&](const Formula& m) -> Reason {
        for (const auto& delta : contextOptions(c.succedent, m)) {
          if (prem(0) == Sequent{c.antecedent, withFormula(delta, m.lhs())} &&
              prem(1) == Sequent{c.antecedent, withFormula(delta, m.rhs())}) {
            return std::nullopt;
          }
        }
        return "premises do not match and-r on " + print(m);
      });

    case RuleTag::AndL1:
    case RuleTag::AndL2:
      return tryPrincipals(p, c.antecedent, Kind::And, "antecedent", [&](const Formula& m) -> Reason {
        const Formula& part = p.rule == RuleTag::AndL1 ? m.lhs() : m.rhs();
        for (const auto& gamma : contextOptions(c.antecedent, m)) {
          if (prem(0) == Sequent{withFormula(gamma, part), c.succedent}) return std::nullopt;
        }
        return "premise " + show(prem(0)) + " does not match " + ruleName(p.rule) + " on " + print(m);
      });

    case RuleTag::ImpR:
      return tryPrincipals(p, c.succedent, Kind::Implies, "succedent", [&](const Formula& m) -> Reason {
        for (const auto& delta : contextOptions(c.succedent, m)) {
          if (prem(0) == Sequent{withFormula(c.antecedent, m.lhs()), withFormula(delta, m.rhs())}) {
            return std::nullopt;
          }
        }
        return "premise " + show(prem(0)) + " does not match imp-r on " + print(m);
      });

    case RuleTag::ImpL:
      return tryPrincipals(p, c.antecedent, Kind::Implies, "antecedent", [&](const Formula& m) -> Reason {
        const auto& a = m.lhs();
        const auto& b = m.rhs();
        if (!prem(0).succedent.contains(a) || !prem(1).antecedent.contains(b)) {
          return "imp-l premises must expose " + print(a) + " on the right and " + print(b) + " on the left";
        }
        for (const auto& delta : contextOptions(prem(0).succedent, a)) {
          for (const auto& lambda : contextOptions(prem(1).antecedent, b)) {
            if (c.antecedent == withFormula(setUnion(prem(0).antecedent, lambda), m) &&
                c.succedent == setUnion(delta, prem(1).succedent)) {
              return std::nullopt;
            }
          }
        }
        return "conclusion " + show(c) + " does not match imp-l on " + print(m);
      });

    case RuleTag::NegR:
      return tryPrincipals(p, c.succedent, Kind::Not, "succedent", [&](const Formula& m) -> Reason {
        for (const auto& delta : contextOptions(c.succedent, m)) {
          if (prem(0) == Sequent{withFormula(c.antecedent, m.body()), delta}) return std::nullopt;
        }
        return "premise " + show(prem(0)) + " does not match neg-r on " + print(m);
      });

    case RuleTag::NegL:
      return tryPrincipals(p, c.antecedent, Kind::Not, "antecedent", [&](const Formula& m) -> Reason {
        for (const auto& gamma : contextOptions(c.antecedent, m)) {
          if (prem(0) == Sequent{gamma, withFormula(c.succedent, m.body())}) return std::nullopt;
        }
        return "premise " + show(prem(0)) + " does not match neg-l on " + print(m);
      });

    case RuleTag::AllR:
      if (!p.ann.eigenvariable) return std::string("all-r needs an eigenvariable annotation");
      if (vars(c).contains(*p.ann.eigenvariable)) {
        return "eigenvariable " + p.ann.eigenvariable->name() + " occurs in the conclusion " + show(c);
      }
      return tryPrincipals(p, c.succedent, Kind::ForAll, "succedent", [&](const Formula& m) -> Reason {
        Formula inst;
        try {
          inst = substitute(m.body(), *p.ann.eigenvariable, m.bound());
        } catch (const CaptureError& e) {
          return std::string(e.what());
        }
        for (const auto& delta : contextOptions(c.succedent, m)) {
          if (prem(0) == Sequent{c.antecedent, withFormula(delta, inst)}) return std::nullopt;
        }
        return "premise " + show(prem(0)) + " does not match all-r on " + print(m);
      });

    case RuleTag::AllL:
      if (!p.ann.witness) return std::string("all-l needs a witness variable annotation");
      return tryPrincipals(p, c.antecedent, Kind::ForAll, "antecedent", [&](const Formula& m) -> Reason {
        Formula inst;
        try {
          inst = substitute(m.body(), *p.ann.witness, m.bound());
        } catch (const CaptureError& e) {
          return std::string(e.what());
        }
        for (const auto& gamma : contextOptions(c.antecedent, m)) {
          if (prem(0) == Sequent{withFormula(gamma, inst), c.succedent}) return std::nullopt;
        }
        return "premise " + show(prem(0)) + " does not match all-l on " + print(m);
      });

    case RuleTag::Box:
      return checkBox(p);

    case RuleTag::OmegaBL: {
      if (!p.certificate) return std::string("omega node without a certificate");
      auto report = checkSchematic(*p.certificate, c, options);
      if (!report) return report.reason;
      return std::nullopt;
    }
  }
  return std::string("unknown rule");
}

CheckReport checkRec(const Proof& p, const CheckOptions& options, std::vector<std::size_t>& path) {
  if (auto why = checkNode(p, options)) return {false, path, *why};
  for (std::size_t i = 0; i < p.premises.size(); ++i) {
    path.push_back(i);
    auto r = checkRec(p.premises[i], options, path);
    path.pop_back();
    if (!r) return r;
  }
  return CheckReport::ok();
}

Proof mapFormulas(const Proof& p, const Formula& replacement) {
  Proof out;
  out.conclusion = substituteTower(p.conclusion, replacement);
  out.rule = p.rule;
  out.certificate = p.certificate;
  const auto& param = towerParameter();
  auto mapSet = [&](const FormulaSet& s) {
    FormulaSet r;
    for (const auto& f : s) r.insert(replaceAtom(f, param, replacement));
    return r;
  };
  out.ann = p.ann;
  if (p.ann.principal) out.ann.principal = replaceAtom(*p.ann.principal, param, replacement);
  if (p.ann.cutFormula) out.ann.cutFormula = replaceAtom(*p.ann.cutFormula, param, replacement);
  if (p.ann.boxKept) out.ann.boxKept = mapSet(*p.ann.boxKept);
  if (p.ann.boxUnboxed) out.ann.boxUnboxed = mapSet(*p.ann.boxUnboxed);
  out.premises.reserve(p.premises.size());
  for (const auto& q : p.premises) out.premises.push_back(mapFormulas(q, replacement));
  return out;
}

bool sequentMentionsTower(const Sequent& s) {
  for (const auto& f : s.antecedent) {
    if (mentionsTowerParameter(f)) return true;
  }
  for (const auto& f : s.succedent) {
    if (mentionsTowerParameter(f)) return true;
  }
  return false;
}

}  // namespace

CheckReport checkProof(const Proof& p, const CheckOptions& options) {
  std::vector<std::size_t> path;
  return checkRec(p, options, path);
}

Sequent substituteTower(const Sequent& s, const Formula& replacement) {
  Sequent out;
  for (const auto& f : s.antecedent) out.antecedent.insert(replaceAtom(f, towerParameter(), replacement));
  for (const auto& f : s.succedent) out.succedent.insert(replaceAtom(f, towerParameter(), replacement));
  return out;
}

Proof instantiate(const SchematicCertificate& cert, std::size_t k) {
  return mapFormulas(cert.templateProof, diamondTower(k));
}

CheckReport checkSchematic(const SchematicCertificate& cert, const Sequent& conclusion, const CheckOptions& options) {
  if (sequentMentionsTower(conclusion)) {
    return CheckReport::reject("omega conclusion " + show(conclusion) + " mentions the tower parameter");
  }
  if (cert.templateProof.containsRule(RuleTag::OmegaBL)) {
    return CheckReport::reject("nested omega nodes inside a template are not supported");
  }
  const std::size_t bound = options.instanceBound.value_or(cert.instanceCheckBound);
  for (std::size_t k = 0; k <= bound; ++k) {
    Proof inst = instantiate(cert, k);
    Sequent expected{conclusion.antecedent, withFormula(conclusion.succedent, diamondTower(k))};
    if (inst.conclusion != expected) {
      return CheckReport::reject("instance k=" + std::to_string(k) + " proves " + show(inst.conclusion) +
                                 ", expected " + show(expected));
    }
    if (auto r = checkProof(inst, options); !r) {
      return CheckReport::reject("instance k=" + std::to_string(k) + " " + r.describe());
    }
  }
  Sequent symbolic{conclusion.antecedent, withFormula(conclusion.succedent, Formula::atom(towerParameter()))};
  if (cert.templateProof.conclusion != symbolic) {
    return CheckReport::reject("template proves " + show(cert.templateProof.conclusion) + ", expected " +
                               show(symbolic));
  }
  if (auto r = checkProof(cert.templateProof, options); !r) {
    return CheckReport::reject("symbolic pass " + r.describe());
  }
  return CheckReport::ok();
}

Proof makeNode(RuleTag rule, Sequent conclusion, std::vector<Proof> premises, Annotations ann) {
  Proof p;
  p.rule = rule;
  p.conclusion = std::move(conclusion);
  p.premises = std::move(premises);
  p.ann = std::move(ann);
  return p;
}

Proof makeOmega(Sequent conclusion, SchematicCertificate cert) {
  Proof p = makeNode(RuleTag::OmegaBL, std::move(conclusion), {});
  p.certificate = std::make_shared<const SchematicCertificate>(std::move(cert));
  return p;
}

Proof axiomId(const Formula& phi) { return makeNode(RuleTag::AxiomId, Sequent{{phi}, {phi}}, {}); }
Proof axiomTop() { return makeNode(RuleTag::AxiomTop, Sequent{{}, {Formula::top()}}, {}); }
Proof axiomBot() { return makeNode(RuleTag::AxiomBot, Sequent{{Formula::bottom()}, {}}, {}); }

Proof weaken(Proof p, const Sequent& conclusion) {
  if (p.conclusion == conclusion) return p;
  return makeNode(RuleTag::Set, conclusion, {std::move(p)});
}

Proof mkNecessitation(const Proof& p) {
  const auto& c = p.conclusion;
  if (c.succedent.size() != 1) {
    throw std::invalid_argument("necessitation needs a single succedent formula, got '" + print(c) + "'");
  }
  Annotations ann;
  ann.boxKept = FormulaSet{};
  ann.boxUnboxed = c.antecedent;
  Sequent concl{boxSet(c.antecedent), {Formula::box(*c.succedent.begin())}};
  return makeNode(RuleTag::Box, std::move(concl), {p}, std::move(ann));
}

Proof mkFourAxiom(const Formula& phi) {
  Formula boxed = Formula::box(phi);
  Annotations ann;
  ann.boxKept = FormulaSet{phi};
  ann.boxUnboxed = FormulaSet{};
  return makeNode(RuleTag::Box, Sequent{{boxed}, {Formula::box(boxed)}}, {axiomId(boxed)}, std::move(ann));
}

Proof mkDiamondLadder(std::size_t k) {
  if (k == 0) return weaken(axiomTop(), Sequent{{diamondTower(1)}, {Formula::top()}});
  // dia^{k+1} T |- dia^k T, unfolded as ~box~dia^k T |- ~box~dia^{k-1} T
  const Formula upper = diamondTower(k + 1);
  const Formula lower = diamondTower(k);
  const Formula lowerInner = Formula::box(Formula::negation(diamondTower(k - 1)));  // box ~dia^{k-1} T
  const Formula upperInner = Formula::box(Formula::negation(lower));               // box ~dia^k T
  const Formula notPrev = Formula::negation(diamondTower(k - 1));
  const Formula notCur = Formula::negation(lower);

  Proof ladder = mkDiamondLadder(k - 1);  // dia^k T |- dia^{k-1} T
  Proof negL1 = makeNode(RuleTag::NegL, Sequent{{lower, notPrev}, {}}, {std::move(ladder)});
  Proof negR1 = makeNode(RuleTag::NegR, Sequent{{notPrev}, {notCur}}, {std::move(negL1)});
  Annotations split;
  split.boxKept = FormulaSet{};
  split.boxUnboxed = FormulaSet{notPrev};
  Proof box = makeNode(RuleTag::Box, Sequent{{lowerInner}, {upperInner}}, {std::move(negR1)}, std::move(split));
  Proof negL2 = makeNode(RuleTag::NegL, Sequent{{lowerInner, upper}, {}}, {std::move(box)});
  return makeNode(RuleTag::NegR, Sequent{{upper}, {lower}}, {std::move(negL2)});
}

Proof mkIdentity(const Formula& phi) {
  const Sequent goal{{phi}, {phi}};
  switch (phi.kind()) {
    case Kind::Atom:
      return axiomId(phi);
    case Kind::Top:
      return weaken(axiomTop(), goal);
    case Kind::Bottom:
      return weaken(axiomBot(), goal);
    case Kind::And: {
      Proof left = makeNode(RuleTag::AndL1, Sequent{{phi}, {phi.lhs()}}, {mkIdentity(phi.lhs())});
      Proof right = makeNode(RuleTag::AndL2, Sequent{{phi}, {phi.rhs()}}, {mkIdentity(phi.rhs())});
      return makeNode(RuleTag::AndR, goal, {std::move(left), std::move(right)});
    }
    case Kind::Implies: {
      Proof impl = makeNode(RuleTag::ImpL, Sequent{{phi, phi.lhs()}, {phi.rhs()}},
                            {mkIdentity(phi.lhs()), mkIdentity(phi.rhs())});
      return makeNode(RuleTag::ImpR, goal, {std::move(impl)});
    }
    case Kind::Not: {
      Proof negl = makeNode(RuleTag::NegL, Sequent{{phi, phi.body()}, {}}, {mkIdentity(phi.body())});
      return makeNode(RuleTag::NegR, goal, {std::move(negl)});
    }
    case Kind::ForAll: {
      Variable y = freshAbove(vars(phi));
      Formula inst = substitute(phi.body(), y, phi.bound());
      Annotations witness;
      witness.witness = y;
      Proof alll = makeNode(RuleTag::AllL, Sequent{{phi}, {inst}}, {mkIdentity(inst)}, std::move(witness));
      Annotations eigen;
      eigen.eigenvariable = y;
      return makeNode(RuleTag::AllR, goal, {std::move(alll)}, std::move(eigen));
    }
    case Kind::Box:
      return mkNecessitation(mkIdentity(phi.body()));
  }
  throw std::logic_error("unreachable");
}

}  // namespace nqgl
