#include "nqgl/search.hpp"

namespace nqgl {

namespace {

Annotations principal(const Formula& m) {
  Annotations ann;
  ann.principal = m;
  return ann;
}

std::optional<Proof> closeByAxiom(const Sequent& goal) {
  for (const auto& f : goal.antecedent) {
    if (goal.succedent.contains(f)) return weaken(axiomId(f), goal);
  }
  if (goal.succedent.contains(Formula::top())) return weaken(axiomTop(), goal);
  if (goal.antecedent.contains(Formula::bottom())) return weaken(axiomBot(), goal);
  return std::nullopt;
}

// First formula of `side` with the given kind, if any.
const Formula* firstOf(const FormulaSet& side, Kind kind) {
  for (const auto& f : side) {
    if (f.is(kind)) return &f;
  }
  return nullptr;
}

}  // namespace

SearchResult CutFreeSearcher::prove(const Sequent& goal) {
  nodes_ = 0;
  exhausted_ = false;
  SearchResult r;
  r.proof = search(goal, options_.depth);
  r.budgetExhausted = exhausted_;
  r.nodesVisited = nodes_;
  return r;
}

std::optional<Proof> CutFreeSearcher::search(const Sequent& goal, std::size_t depth) {
  if (exhausted_) return std::nullopt;
  if (++nodes_ > options_.maxNodes) {
    exhausted_ = true;
    return std::nullopt;
  }
  if (auto p = closeByAxiom(goal)) return p;
  if (auto it = failedAtDepth_.find(goal); it != failedAtDepth_.end() && it->second >= depth) return std::nullopt;

  auto fail = [&]() -> std::optional<Proof> {
    if (!exhausted_) {
      auto& slot = failedAtDepth_[goal];
      slot = std::max(slot, depth);
    }
    return std::nullopt;
  };

  const auto& gamma = goal.antecedent;
  const auto& delta = goal.succedent;

  // Invertible single-premise rules first, then the branching ones.
  if (const Formula* m = firstOf(gamma, Kind::And)) {
    FormulaSet rest = withoutFormula(gamma, *m);
    auto sub = search(Sequent{setUnion(rest, FormulaSet{m->lhs(), m->rhs()}), delta}, depth);
    if (!sub) return fail();
    Proof second = makeNode(RuleTag::AndL2, Sequent{withFormula(withFormula(rest, m->lhs()), *m), delta},
                            {std::move(*sub)}, principal(*m));
    return makeNode(RuleTag::AndL1, goal, {std::move(second)}, principal(*m));
  }
  if (const Formula* m = firstOf(gamma, Kind::Not)) {
    auto sub = search(Sequent{withoutFormula(gamma, *m), withFormula(delta, m->body())}, depth);
    if (!sub) return fail();
    return makeNode(RuleTag::NegL, goal, {std::move(*sub)}, principal(*m));
  }
  if (const Formula* m = firstOf(delta, Kind::Not)) {
    auto sub = search(Sequent{withFormula(gamma, m->body()), withoutFormula(delta, *m)}, depth);
    if (!sub) return fail();
    return makeNode(RuleTag::NegR, goal, {std::move(*sub)}, principal(*m));
  }
  if (const Formula* m = firstOf(delta, Kind::Implies)) {
    auto sub = search(Sequent{withFormula(gamma, m->lhs()), withFormula(withoutFormula(delta, *m), m->rhs())}, depth);
    if (!sub) return fail();
    return makeNode(RuleTag::ImpR, goal, {std::move(*sub)}, principal(*m));
  }
  if (const Formula* m = firstOf(delta, Kind::ForAll)) {
    Variable y = freshAbove(vars(goal));
    Formula inst = substitute(m->body(), y, m->bound());
    auto sub = search(Sequent{gamma, withFormula(withoutFormula(delta, *m), inst)}, depth);
    if (!sub) return fail();
    Annotations ann = principal(*m);
    ann.eigenvariable = y;
    return makeNode(RuleTag::AllR, goal, {std::move(*sub)}, std::move(ann));
  }
  if (const Formula* m = firstOf(gamma, Kind::Implies)) {
    FormulaSet rest = withoutFormula(gamma, *m);
    auto left = search(Sequent{rest, withFormula(delta, m->lhs())}, depth);
    if (!left) return fail();
    auto right = search(Sequent{withFormula(rest, m->rhs()), delta}, depth);
    if (!right) return fail();
    return makeNode(RuleTag::ImpL, goal, {std::move(*left), std::move(*right)}, principal(*m));
  }
  if (const Formula* m = firstOf(delta, Kind::And)) {
    FormulaSet rest = withoutFormula(delta, *m);
    auto left = search(Sequent{gamma, withFormula(rest, m->lhs())}, depth);
    if (!left) return fail();
    auto right = search(Sequent{gamma, withFormula(rest, m->rhs())}, depth);
    if (!right) return fail();
    return makeNode(RuleTag::AndR, goal, {std::move(*left), std::move(*right)}, principal(*m));
  }

  if (depth == 0) return fail();
  if (auto p = modalAndQuantifierSteps(goal, depth)) return p;
  return fail();
}

std::optional<Proof> CutFreeSearcher::modalAndQuantifierSteps(const Sequent& goal, std::size_t depth) {
  const auto& gamma = goal.antecedent;
  const auto& delta = goal.succedent;

  for (const auto& m : gamma) {
    if (!m.is(Kind::ForAll)) continue;
    VariableSet witnesses = freeVars(goal);
    if (witnesses.empty()) witnesses.insert(m.bound());
    for (Variable z : witnesses) {
      Formula inst;
      try {
        inst = substitute(m.body(), z, m.bound());
      } catch (const CaptureError&) {
        continue;
      }
      if (gamma.contains(inst)) continue;
      auto sub = search(Sequent{withFormula(gamma, inst), delta}, depth - 1);
      if (sub) {
        Annotations ann = principal(m);
        ann.witness = z;
        return makeNode(RuleTag::AllL, goal, {std::move(*sub)}, std::move(ann));
      }
      if (exhausted_) return std::nullopt;
    }
  }

  const FormulaSet boxed = boxedMembers(gamma);
  const FormulaSet unboxed = unboxSet(boxed);
  for (const auto& m : delta) {
    if (!m.is(Kind::Box)) continue;
    auto sub = search(Sequent{setUnion(boxed, unboxed), {m.body()}}, depth - 1);
    if (sub) {
      Annotations ann;
      ann.boxKept = unboxed;
      ann.boxUnboxed = unboxed;
      Proof box = makeNode(RuleTag::Box, Sequent{boxed, {m}}, {std::move(*sub)}, std::move(ann));
      return weaken(std::move(box), goal);
    }
    if (exhausted_) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace nqgl
