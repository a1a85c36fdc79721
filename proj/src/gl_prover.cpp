#include "nqgl/gl_prover.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "nqgl/proof_io.hpp"
#include "nqgl/syntax.hpp"

namespace nqgl {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<GLRule, const char*>, 8> kGLRuleNames{{
    {GLRule::Axiom, "axiom"},
    {GLRule::AndL, "and-l"},
    {GLRule::AndR, "and-r"},
    {GLRule::ImpL, "imp-l"},
    {GLRule::ImpR, "imp-r"},
    {GLRule::NegL, "neg-l"},
    {GLRule::NegR, "neg-r"},
    {GLRule::ModalGL, "gl"},
}};

void requirePropositional(const Sequent& s) {
  for (const auto* side : {&s.antecedent, &s.succedent}) {
    for (const auto& f : *side) {
      if (!isPropositional(f)) throw std::invalid_argument("not propositional: " + print(f));
    }
  }
}

bool isAxiomatic(const Sequent& s) {
  if (s.succedent.contains(Formula::top()) || s.antecedent.contains(Formula::bottom())) return true;
  return std::any_of(s.antecedent.begin(), s.antecedent.end(),
                     [&](const Formula& f) { return s.succedent.contains(f); });
}

const Formula* firstOf(const FormulaSet& side, Kind kind) {
  for (const auto& f : side) {
    if (f.is(kind)) return &f;
  }
  return nullptr;
}

Sequent glPremise(const FormulaSet& antecedent, const Formula& boxedGoal) {
  FormulaSet boxed = boxedMembers(antecedent);
  FormulaSet left = setUnion(unboxSet(boxed), boxed);
  left.insert(boxedGoal);
  return Sequent{std::move(left), {boxedGoal.body()}};
}

GLProof node(Sequent conclusion, GLRule rule, std::optional<Formula> principal, std::vector<GLProof> premises = {}) {
  return GLProof{std::move(conclusion), rule, std::move(principal), std::move(premises)};
}

// A saturated leaf on which every backward GL step failed, with the
// refutations of those steps as children.
struct Refutation {
  Sequent leaf;
  std::vector<std::shared_ptr<const Refutation>> children;
};
using RefPtr = std::shared_ptr<const Refutation>;
using Outcome = std::variant<GLProof, RefPtr>;

class Decider {
 public:
  Outcome run(const Sequent& s, std::size_t length, std::size_t modal) {
    ++stats.nodes;
    stats.maxBranchLength = std::max(stats.maxBranchLength, length);
    stats.maxModalSteps = std::max(stats.maxModalSteps, modal);

    if (isAxiomatic(s)) return node(s, GLRule::Axiom, std::nullopt);
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;

    const std::size_t blockedBefore = stats.blocked;
    Outcome out = expand(s, length, modal);
    if (stats.blocked == blockedBefore) memo_.emplace(s, out);
    return out;
  }

  DecideStats stats;

 private:
  Outcome single(const Sequent& s, GLRule rule, const Formula& m, Sequent premise, std::size_t length,
                 std::size_t modal) {
    Outcome sub = run(premise, length + 1, modal);
    if (auto* p = std::get_if<GLProof>(&sub)) return node(s, rule, m, {std::move(*p)});
    return sub;
  }

  Outcome branching(const Sequent& s, GLRule rule, const Formula& m, Sequent left, Sequent right,
                    std::size_t length, std::size_t modal) {
    Outcome a = run(left, length + 1, modal);
    if (!std::holds_alternative<GLProof>(a)) return a;
    Outcome b = run(right, length + 1, modal);
    if (!std::holds_alternative<GLProof>(b)) return b;
    return node(s, rule, m, {std::get<GLProof>(std::move(a)), std::get<GLProof>(std::move(b))});
  }

  Outcome expand(const Sequent& s, std::size_t length, std::size_t modal) {
    const auto& gamma = s.antecedent;
    const auto& delta = s.succedent;

    if (const Formula* m = firstOf(gamma, Kind::Not)) {
      return single(s, GLRule::NegL, *m, Sequent{withoutFormula(gamma, *m), withFormula(delta, m->body())}, length,
                    modal);
    }
    if (const Formula* m = firstOf(gamma, Kind::And)) {
      FormulaSet left = withoutFormula(gamma, *m);
      left.insert(m->lhs());
      left.insert(m->rhs());
      return single(s, GLRule::AndL, *m, Sequent{std::move(left), delta}, length, modal);
    }
    if (const Formula* m = firstOf(delta, Kind::Not)) {
      return single(s, GLRule::NegR, *m, Sequent{withFormula(gamma, m->body()), withoutFormula(delta, *m)}, length,
                    modal);
    }
    if (const Formula* m = firstOf(delta, Kind::Implies)) {
      return single(s, GLRule::ImpR, *m,
                    Sequent{withFormula(gamma, m->lhs()), withFormula(withoutFormula(delta, *m), m->rhs())}, length,
                    modal);
    }
    if (const Formula* m = firstOf(gamma, Kind::Implies)) {
      FormulaSet rest = withoutFormula(gamma, *m);
      return branching(s, GLRule::ImpL, *m, Sequent{rest, withFormula(delta, m->lhs())},
                       Sequent{withFormula(rest, m->rhs()), delta}, length, modal);
    }
    if (const Formula* m = firstOf(delta, Kind::And)) {
      FormulaSet rest = withoutFormula(delta, *m);
      return branching(s, GLRule::AndR, *m, Sequent{gamma, withFormula(rest, m->lhs())},
                       Sequent{gamma, withFormula(rest, m->rhs())}, length, modal);
    }

    auto ref = std::make_shared<Refutation>();
    ref->leaf = s;
    for (const auto& m : delta) {
      if (!m.is(Kind::Box)) continue;
      Sequent premise = glPremise(gamma, m);
      if (std::find(ancestors_.begin(), ancestors_.end(), premise) != ancestors_.end()) {
        ++stats.blocked;
        continue;
      }
      ancestors_.push_back(premise);
      Outcome sub = run(premise, length + 1, modal + 1);
      ancestors_.pop_back();
      if (auto* p = std::get_if<GLProof>(&sub)) return node(s, GLRule::ModalGL, m, {std::move(*p)});
      ref->children.push_back(std::get<RefPtr>(std::move(sub)));
    }
    return RefPtr(std::move(ref));
  }

  std::vector<Sequent> ancestors_;
  std::map<Sequent, Outcome> memo_;
};

Countermodel modelFromRefutation(const RefPtr& root) {
  Countermodel cm;
  KripkeModel& m = cm.model;
  const Element d = m.element("d");
  std::deque<std::pair<RefPtr, WorldId>> queue;

  auto addLeafWorld = [&](const RefPtr& r) {
    WorldId w = m.addWorld("w" + std::to_string(m.worldCount()));
    m.addToDomain(w, d);
    for (const auto& f : r->leaf.antecedent) {
      if (f.is(Kind::Atom)) m.setTrue(w, f.predicate());
    }
    queue.emplace_back(r, w);
    return w;
  };

  cm.world = addLeafWorld(root);
  while (!queue.empty()) {
    auto [r, w] = queue.front();
    queue.pop_front();
    for (const auto& child : r->children) {
      WorldId c = addLeafWorld(child);
      m.frame.addEdge(w, c);
    }
  }
  m.frame = transitiveClosure(m.frame);
  return cm;
}

GLCheckResult fail(std::string why) { return GLCheckResult{false, {}, std::move(why)}; }

bool within(const Sequent& premise, const FormulaSet& antecedent, const FormulaSet& succedent) {
  return isSubset(premise.antecedent, antecedent) && isSubset(premise.succedent, succedent);
}

GLCheckResult checkNode(const GLProof& p) {
  const auto& gamma = p.conclusion.antecedent;
  const auto& delta = p.conclusion.succedent;
  auto arity = [&](std::size_t n) { return p.premises.size() == n; };

  if (p.rule == GLRule::Axiom) {
    if (!arity(0)) return fail("axiom with premises");
    if (!isAxiomatic(p.conclusion)) return fail("not an axiom: " + print(p.conclusion));
    return {};
  }
  if (!p.principal) return fail(glRuleName(p.rule) + ": missing principal formula");
  const Formula& m = *p.principal;
  const bool left = p.rule == GLRule::AndL || p.rule == GLRule::ImpL || p.rule == GLRule::NegL;
  if (!(left ? gamma : delta).contains(m)) {
    return fail(glRuleName(p.rule) + ": principal " + print(m) + " not in the " + (left ? "antecedent" : "succedent"));
  }
  const Kind expected = [&] {
    switch (p.rule) {
      case GLRule::AndL:
      case GLRule::AndR:
        return Kind::And;
      case GLRule::ImpL:
      case GLRule::ImpR:
        return Kind::Implies;
      case GLRule::NegL:
      case GLRule::NegR:
        return Kind::Not;
      default:
        return Kind::Box;
    }
  }();
  if (!m.is(expected)) return fail(glRuleName(p.rule) + ": principal has the wrong connective");

  const std::size_t want = (p.rule == GLRule::ImpL || p.rule == GLRule::AndR) ? 2 : 1;
  if (!arity(want)) return fail(glRuleName(p.rule) + ": expected " + std::to_string(want) + " premises");
  const Sequent& p0 = p.premises[0].conclusion;

  bool good = false;
  switch (p.rule) {
    case GLRule::AndL:
      good = within(p0, setUnion(gamma, FormulaSet{m.lhs(), m.rhs()}), delta);
      break;
    case GLRule::AndR:
      good = within(p0, gamma, withFormula(delta, m.lhs())) &&
             within(p.premises[1].conclusion, gamma, withFormula(delta, m.rhs()));
      break;
    case GLRule::ImpL:
      good = within(p0, gamma, withFormula(delta, m.lhs())) &&
             within(p.premises[1].conclusion, withFormula(gamma, m.rhs()), delta);
      break;
    case GLRule::ImpR:
      good = within(p0, withFormula(gamma, m.lhs()), withFormula(delta, m.rhs()));
      break;
    case GLRule::NegL:
      good = within(p0, gamma, withFormula(delta, m.body()));
      break;
    case GLRule::NegR:
      good = within(p0, withFormula(gamma, m.body()), delta);
      break;
    case GLRule::ModalGL: {
      Sequent canonical = glPremise(gamma, m);
      good = within(p0, canonical.antecedent, canonical.succedent);
      break;
    }
    case GLRule::Axiom:
      break;
  }
  if (!good) return fail(glRuleName(p.rule) + ": premise does not match the conclusion");
  return {};
}

GLCheckResult checkTree(const GLProof& p, std::vector<std::size_t>& path) {
  GLCheckResult r = checkNode(p);
  if (!r) {
    r.path = path;
    return r;
  }
  for (std::size_t i = 0; i < p.premises.size(); ++i) {
    path.push_back(i);
    r = checkTree(p.premises[i], path);
    path.pop_back();
    if (!r) return r;
  }
  return {};
}

// Strict partial orders on n worlds as successor bitmasks.
const std::vector<std::vector<std::uint32_t>>& strictOrders(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::vector<std::vector<std::uint32_t>>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) pairs.emplace_back(i, j);
    }
  }
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << pairs.size()); ++r) {
    std::vector<std::uint32_t> succ(n, 0);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (r >> k & 1) succ[pairs[k].first] |= 1u << pairs[k].second;
    }
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (succ[i] >> i & 1) ok = false;
      for (std::size_t j = 0; j < n && ok; ++j) {
        if ((succ[i] >> j & 1) && (succ[j] & ~succ[i])) ok = false;
      }
    }
    if (ok) out.push_back(std::move(succ));
  }
  return cache.emplace(n, std::move(out)).first->second;
}

struct Compiled {
  struct Op {
    Kind kind;
    int a = -1, b = -1;
    int atom = -1;
  };
  std::vector<Op> ops;
  std::vector<PredicateSymbol> atoms;
  std::map<Formula, int> index;

  int add(const Formula& f) {
    if (auto it = index.find(f); it != index.end()) return it->second;
    Op op{f.kind()};
    switch (f.kind()) {
      case Kind::Atom: {
        auto pos = std::find(atoms.begin(), atoms.end(), f.predicate());
        op.atom = static_cast<int>(pos - atoms.begin());
        if (pos == atoms.end()) atoms.push_back(f.predicate());
        break;
      }
      case Kind::And:
      case Kind::Implies:
        op.a = add(f.lhs());
        op.b = add(f.rhs());
        break;
      case Kind::Not:
      case Kind::Box:
        op.a = add(f.body());
        break;
      default:
        break;
    }
    ops.push_back(op);
    return index[f] = static_cast<int>(ops.size() - 1);
  }

  std::uint32_t eval(const std::vector<std::uint32_t>& succ, std::uint64_t valuation, std::size_t n,
                     std::vector<std::uint32_t>& mask) const {
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const Op& op = ops[i];
      std::uint32_t v = 0;
      switch (op.kind) {
        case Kind::Top:
          v = full;
          break;
        case Kind::Bottom:
          v = 0;
          break;
        case Kind::Atom:
          v = static_cast<std::uint32_t>(valuation >> (op.atom * n)) & full;
          break;
        case Kind::And:
          v = mask[op.a] & mask[op.b];
          break;
        case Kind::Implies:
          v = (~mask[op.a] | mask[op.b]) & full;
          break;
        case Kind::Not:
          v = ~mask[op.a] & full;
          break;
        case Kind::Box:
          for (std::size_t w = 0; w < n; ++w) {
            if ((succ[w] & ~mask[op.a]) == 0) v |= 1u << w;
          }
          break;
        case Kind::ForAll:
          throw std::logic_error("quantifier in compiled formula");
      }
      mask[i] = v;
    }
    return mask.back();
  }
};

}  // namespace

std::string glRuleName(GLRule r) {
  for (const auto& [tag, name] : kGLRuleNames) {
    if (tag == r) return name;
  }
  return "?";
}

std::optional<GLRule> glRuleFromName(std::string_view name) {
  for (const auto& [tag, n] : kGLRuleNames) {
    if (name == n) return tag;
  }
  return std::nullopt;
}

std::size_t GLProof::nodeCount() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.nodeCount();
  return n;
}

GLVerdict decide(const Sequent& s, DecideStats* stats) {
  requirePropositional(s);
  Decider d;
  Outcome out = d.run(s, 0, 0);
  if (stats) *stats = d.stats;
  if (auto* p = std::get_if<GLProof>(&out)) return std::move(*p);
  return modelFromRefutation(std::get<RefPtr>(out));
}

GLCheckResult checkGLProof(const GLProof& p) {
  try {
    requirePropositional(p.conclusion);
  } catch (const std::invalid_argument& e) {
    return fail(e.what());
  }
  std::vector<std::size_t> path;
  return checkTree(p, path);
}

GLCheckResult certify(const GLVerdict& v, const Sequent& s) {
  if (const auto* p = std::get_if<GLProof>(&v)) {
    if (!within(p->conclusion, s.antecedent, s.succedent)) {
      return fail("proof concludes " + print(p->conclusion) + ", not a subsequent of " + print(s));
    }
    return checkGLProof(*p);
  }
  const auto& cm = std::get<Countermodel>(v);
  if (cm.world >= cm.model.worldCount()) return fail("designated world out of range");
  auto violations = validateModel(cm.model);
  if (!violations.empty()) return fail("invalid model: " + violations.front().message);
  auto report = classifyFrame(cm.model.frame);
  if (!report.transitive) return fail("frame is not transitive");
  if (!report.irreflexive) return fail("frame is not irreflexive");
  if (!report.boundedLength) return fail("frame is not of bounded length");
  if (!refutesSequent(cm.model, cm.world, s)) {
    return fail("world " + cm.model.worldName(cm.world) + " does not refute " + print(s));
  }
  return {};
}

std::optional<Countermodel> validityOracle(const Formula& phi, std::size_t maxWorlds) {
  if (!isPropositional(phi)) throw std::invalid_argument("not propositional: " + print(phi));
  Compiled c;
  c.add(phi);
  if (maxWorlds > 5) throw std::invalid_argument("validityOracle supports at most 5 worlds");
  if (c.atoms.size() * maxWorlds > 62) throw std::invalid_argument("too many atoms for the oracle");

  std::vector<std::uint32_t> mask(c.ops.size());
  for (std::size_t n = 1; n <= maxWorlds; ++n) {
    const std::uint32_t full = (1u << n) - 1;
    const std::uint64_t valuations = std::uint64_t{1} << (c.atoms.size() * n);
    for (const auto& succ : strictOrders(n)) {
      for (std::uint64_t val = 0; val < valuations; ++val) {
        std::uint32_t truth = c.eval(succ, val, n, mask);
        if (truth == full) continue;

        Countermodel cm;
        KripkeModel& m = cm.model;
        Element d = m.element("d");
        for (std::size_t w = 0; w < n; ++w) {
          m.addWorld("w" + std::to_string(w));
          m.addToDomain(w, d);
        }
        for (std::size_t w = 0; w < n; ++w) {
          for (std::size_t u = 0; u < n; ++u) {
            if (succ[w] >> u & 1) m.frame.addEdge(w, u);
          }
          for (std::size_t a = 0; a < c.atoms.size(); ++a) {
            if (val >> (a * n + w) & 1) m.setTrue(w, c.atoms[a]);
          }
        }
        while (truth >> cm.world & 1) ++cm.world;
        return cm;
      }
    }
  }
  return std::nullopt;
}

Formula sequentFormula(const Sequent& s) {
  std::optional<Formula> left, right;
  for (const auto& f : s.antecedent) left = left ? Formula::conj(*left, f) : f;
  for (const auto& f : s.succedent) right = right ? Formula::disj(*right, f) : f;
  return Formula::implies(left.value_or(Formula::top()), right.value_or(Formula::bottom()));
}

json glProofToJson(const GLProof& p) {
  json j;
  j["rule"] = glRuleName(p.rule);
  j["conclusion"] = print(p.conclusion);
  if (p.principal) j["principal"] = print(*p.principal);
  json premises = json::array();
  for (const auto& q : p.premises) premises.push_back(glProofToJson(q));
  j["premises"] = premises;
  return j;
}

json glProofDocument(const GLProof& p) { return json{{"calculus", "GL"}, {"proof", glProofToJson(p)}}; }

GLProof glProofFromJson(const json& j) {
  const json& n = (j.is_object() && j.contains("calculus")) ? j.at("proof") : j;
  if (j.is_object() && j.contains("calculus") && j["calculus"] != "GL") {
    throw ProofFormatError("expected a GL proof document");
  }
  if (!n.is_object() || !n.contains("rule") || !n.contains("conclusion")) {
    throw ProofFormatError("GL proof node needs 'rule' and 'conclusion'");
  }
  GLProof p;
  auto rule = glRuleFromName(n["rule"].get<std::string>());
  if (!rule) throw ProofFormatError("unknown GL rule " + n["rule"].dump());
  p.rule = *rule;
  try {
    p.conclusion = parseSequent(n["conclusion"].get<std::string>());
    if (n.contains("principal")) p.principal = parse(n["principal"].get<std::string>());
  } catch (const ParseError& e) {
    throw ProofFormatError(e.what());
  }
  if (n.contains("premises")) {
    for (const auto& q : n["premises"]) p.premises.push_back(glProofFromJson(q));
  }
  return p;
}

}  // namespace nqgl
