#include "nqgl/saturation.hpp"

#include <deque>

#include "nqgl/syntax.hpp"

namespace nqgl {

using nlohmann::json;

ConsistencyOracle::ConsistencyOracle(std::size_t depth, std::size_t maxNodes) : searcher_({depth, maxNodes}) {}

bool ConsistencyOracle::consistent(const Pair& p) {
  auto r = searcher_.prove(asSequent(p));
  if (r.proof) return false;
  if (r.budgetExhausted) ++inconclusive_;
  return true;
}

bool boundedConsistent(const Pair& p, std::size_t depth) {
  ConsistencyOracle oracle(depth);
  return oracle.consistent(p);
}

Formula quantifierInstance(const Formula& forall, Variable z) {
  const Variable x = forall.bound();
  const Formula& body = forall.body();
  try {
    return substitute(body, z, x);
  } catch (const CaptureError&) {
    VariableSet used = vars(body);
    used.insert(z);
    used.insert(x);
    return substitute(renameBound(body, z, freshAbove(used)), z, x);
  }
}

namespace {

void extendSchedule(SaturationState& st, const Formula& f) {
  std::deque<Formula> queue{f};
  while (!queue.empty()) {
    Formula g = queue.front();
    queue.pop_front();
    if (!st.scheduled.insert(g).second) continue;
    st.schedule.push_back(g);
    switch (g.kind()) {
      case Kind::And:
      case Kind::Implies:
        queue.push_back(g.lhs());
        queue.push_back(g.rhs());
        break;
      case Kind::Not:
      case Kind::Box:
      case Kind::ForAll:
        queue.push_back(g.body());
        break;
      default:
        break;
    }
  }
}

std::string ruleOf(Kind k) {
  switch (k) {
    case Kind::And:
      return "and";
    case Kind::Implies:
      return "imp";
    case Kind::Not:
      return "neg";
    case Kind::ForAll:
      return "all";
    case Kind::Box:
      return "box";
    case Kind::Atom:
      return "atom";
    default:
      return "const";
  }
}

class Stage {
 public:
  Stage(SaturationState& st, ConsistencyOracle& oracle, TraceEntry& entry) : st_(st), oracle_(oracle), entry_(entry) {}

  // Adds the formulas if the result stays consistent. Returns false when it would not.
  bool commit(const FormulaSet& addLeft, const FormulaSet& addRight) {
    Pair candidate = st_.pair;
    FormulaSet newLeft, newRight;
    for (const auto& f : addLeft) {
      if (candidate.left.insert(f).second) newLeft.insert(f);
    }
    for (const auto& f : addRight) {
      if (candidate.right.insert(f).second) newRight.insert(f);
    }
    if (newLeft.empty() && newRight.empty()) return true;
    if (!oracle_.consistent(candidate)) {
      ++entry_.rejectedChoices;
      return false;
    }
    st_.pair = std::move(candidate);
    for (const auto& f : newLeft) extendSchedule(st_, f);
    for (const auto& f : newRight) extendSchedule(st_, f);
    entry_.addedLeft.insert(newLeft.begin(), newLeft.end());
    entry_.addedRight.insert(newRight.begin(), newRight.end());
    changed = true;
    return true;
  }

  // First consistent option, left to right.
  void choose(std::initializer_list<std::pair<FormulaSet, FormulaSet>> options) {
    for (const auto& [l, r] : options) {
      if (commit(l, r)) return;
    }
    fail();
  }

  void require(const FormulaSet& l, const FormulaSet& r) {
    if (!commit(l, r)) fail();
  }

  [[noreturn]] void fail() {
    throw SaturationError(SaturationError::Kind::NoConsistentChoice,
                          "stage " + std::to_string(entry_.stage) + ": no consistent choice for " +
                              print(entry_.formula) + " in " + entry_.side + " at depth " +
                              std::to_string(oracle_.depth()));
  }

  bool changed = false;

 private:
  SaturationState& st_;
  ConsistencyOracle& oracle_;
  TraceEntry& entry_;
};

void processLeft(SaturationState& st, Stage& stage, const Formula& f) {
  switch (f.kind()) {
    case Kind::And:
      stage.require({f.lhs(), f.rhs()}, {});
      break;
    case Kind::Implies:
      stage.choose({{{}, {f.lhs()}}, {{f.rhs()}, {}}});
      break;
    case Kind::Not:
      stage.require({}, {f.body()});
      break;
    case Kind::ForAll: {
      FormulaSet inst;
      for (Variable z : st.universe.members()) inst.insert(quantifierInstance(f, z));
      stage.require(inst, {});
      break;
    }
    default:
      break;
  }
}

void processRight(SaturationState& st, Stage& stage, TraceEntry& entry, const Formula& f) {
  switch (f.kind()) {
    case Kind::And:
      stage.choose({{{}, {f.lhs()}}, {{}, {f.rhs()}}});
      break;
    case Kind::Implies:
      stage.require({f.lhs()}, {f.rhs()});
      break;
    case Kind::Not:
      stage.require({f.body()}, {});
      break;
    case Kind::ForAll: {
      for (Variable z : st.universe.members()) {
        if (st.pair.right.contains(quantifierInstance(f, z))) return;
      }
      Variable z{st.universe.watermark()};
      stage.require({}, {quantifierInstance(f, z)});
      Variable added = st.universe.addFresh();
      (void)added;
      entry.fresh = z;
      break;
    }
    default:
      break;
  }
}

}  // namespace

SaturationState startSaturation(Pair start, VariableUniverse universe, std::size_t depth) {
  SaturationState st;
  st.universe = std::move(universe);
  st.depth = depth;
  if (!boundedConsistent(start, depth)) {
    throw SaturationError(SaturationError::Kind::Inconsistent,
                          "start pair " + print(asSequent(start)) + " is provable at depth " + std::to_string(depth));
  }
  st.pair = std::move(start);
  for (const auto& f : st.pair.left) extendSchedule(st, f);
  for (const auto& f : st.pair.right) extendSchedule(st, f);
  return st;
}

void saturationStep(SaturationState& st, ConsistencyOracle& oracle) {
  if (st.exhausted) return;
  if (st.schedule.empty()) {
    st.exhausted = true;
    return;
  }
  const Formula f = st.schedule[st.column];
  TraceEntry entry;
  entry.stage = st.stage;
  entry.formula = f;
  entry.rule = ruleOf(f.kind());
  Stage stage(st, oracle, entry);
  if (st.pair.left.contains(f)) {
    entry.side = "S";
    processLeft(st, stage, f);
    st.processedLeft.insert(f);
  } else if (st.pair.right.contains(f)) {
    entry.side = "T";
    processRight(st, stage, entry, f);
    st.processedRight.insert(f);
  } else {
    entry.side = "-";
  }
  st.trace.push_back(std::move(entry));
  st.rowChanged = st.rowChanged || stage.changed;
  ++st.stage;

  ++st.column;
  const std::size_t rowLength = std::min(st.row + 1, st.schedule.size());
  if (st.column >= rowLength) {
    if (!st.rowChanged && rowLength == st.schedule.size()) st.exhausted = true;
    ++st.row;
    st.column = 0;
    st.rowChanged = false;
  }
}

SaturationState saturateStages(const Pair& start, const VariableUniverse& universe, std::size_t stages,
                               std::size_t depth) {
  SaturationState st = startSaturation(start, universe, depth);
  ConsistencyOracle oracle(depth);
  for (std::size_t i = 0; i < stages && !st.exhausted; ++i) saturationStep(st, oracle);
  return st;
}

SaturationState saturate(const Pair& start, const VariableUniverse& universe, ConsistencyOracle& oracle,
                         std::size_t maxStages) {
  SaturationState st = startSaturation(start, universe, oracle.depth());
  while (!st.exhausted) {
    if (st.stage >= maxStages) {
      throw SaturationError(SaturationError::Kind::StageLimit,
                            "saturation did not finish within " + std::to_string(maxStages) + " stages");
    }
    saturationStep(st, oracle);
  }
  return st;
}

SaturationState saturate(const Pair& start, const VariableUniverse& universe, std::size_t depth,
                         std::size_t maxStages) {
  ConsistencyOracle oracle(depth);
  return saturate(start, universe, oracle, maxStages);
}

std::size_t SaturationReport::processedViolations() const {
  std::size_t n = 0;
  for (const auto& v : violations) n += v.processed;
  return n;
}

namespace {

SaturationReport checkPair(const Pair& p, const VariableUniverse& u, const FormulaSet* doneLeft,
                           const FormulaSet* doneRight) {
  SaturationReport report;
  const auto& S = p.left;
  const auto& T = p.right;
  for (const auto& f : S) {
    if (T.contains(f)) report.overlap.insert(f);
  }
  auto violation = [&](int condition, const Formula& f, char side, const std::string& msg) {
    const FormulaSet* done = side == 'S' ? doneLeft : doneRight;
    bool processed = done == nullptr || done->contains(f);
    report.violations.push_back({condition, f, side, processed, print(f) + " in " + side + ": " + msg});
  };

  for (const auto& f : S) {
    if (doneLeft && !doneLeft->contains(f)) report.unprocessed.push_back(f);
    switch (f.kind()) {
      case Kind::And:
        if (!S.contains(f.lhs()) || !S.contains(f.rhs())) violation(1, f, 'S', "a conjunct is missing from S");
        break;
      case Kind::Implies:
        if (!T.contains(f.lhs()) && !S.contains(f.rhs())) {
          violation(2, f, 'S', "neither the antecedent in T nor the consequent in S");
        }
        break;
      case Kind::Not:
        if (!T.contains(f.body())) violation(3, f, 'S', "the negated formula is not in T");
        break;
      case Kind::ForAll:
        for (Variable z : u.members()) {
          if (!S.contains(quantifierInstance(f, z))) {
            violation(4, f, 'S', "instance at " + z.name() + " is missing from S");
            break;
          }
        }
        break;
      default:
        break;
    }
  }
  for (const auto& f : T) {
    if (doneRight && !doneRight->contains(f)) report.unprocessed.push_back(f);
    switch (f.kind()) {
      case Kind::And:
        if (!T.contains(f.lhs()) && !T.contains(f.rhs())) violation(1, f, 'T', "no conjunct in T");
        break;
      case Kind::Implies:
        if (!S.contains(f.lhs()) || !T.contains(f.rhs())) {
          violation(2, f, 'T', "needs the antecedent in S and the consequent in T");
        }
        break;
      case Kind::Not:
        if (!S.contains(f.body())) violation(3, f, 'T', "the negated formula is not in S");
        break;
      case Kind::ForAll: {
        bool witnessed = false;
        for (Variable z : u.members()) witnessed = witnessed || T.contains(quantifierInstance(f, z));
        if (!witnessed) violation(4, f, 'T', "no instance over the universe in T");
        break;
      }
      default:
        break;
    }
  }
  return report;
}

}  // namespace

SaturationReport checkSaturated(const SaturationState& st) {
  return checkPair(st.pair, st.universe, &st.processedLeft, &st.processedRight);
}

SaturationReport checkSaturated(const Pair& pair, const VariableUniverse& universe) {
  return checkPair(pair, universe, nullptr, nullptr);
}

std::optional<std::size_t> glWitnessOf(const FormulaSet& left) {
  std::optional<std::size_t> best;
  for (const auto& f : left) {
    if (!f.is(Kind::Box) || !f.body().is(Kind::Not)) continue;
    if (auto n = towerHeight(f.body().body())) {
      if (!best || *n < *best) best = n;
    }
  }
  return best;
}

CanonicalWorld rootFromSequent(const Sequent& s, const RootOptions& options) {
  VariableUniverse universe(vars(s));
  if (universe.members().empty()) universe.addFresh();

  if (!boundedConsistent(Pair{s.antecedent, s.succedent}, options.depth)) {
    throw SaturationError(SaturationError::Kind::Provable,
                          print(s) + " is provable at depth " + std::to_string(options.depth));
  }
  for (std::size_t n = 0; n <= options.witnessCap; ++n) {
    Pair seed{withFormula(s.antecedent, Formula::box(Formula::negation(diamondTower(n)))), s.succedent};
    ConsistencyOracle oracle(options.depth + n);
    if (!oracle.consistent(seed)) continue;
    CanonicalWorld w;
    w.state = saturate(seed, universe, oracle);
    w.universe = w.state.universe;
    w.pair = w.state.pair;
    w.glWitness = glWitnessOf(w.pair.left).value_or(n);
    return w;
  }
  throw SaturationError(SaturationError::Kind::NoWitness,
                        "no n <= " + std::to_string(options.witnessCap) + " makes box ~dia^n T, " + print(s) +
                            " consistent; inconclusive, the sequent may be provable");
}

Pair successorSeed(const CanonicalWorld& w, const Formula& boxedTarget) {
  if (!boxedTarget.is(Kind::Box) || !w.pair.right.contains(boxedTarget)) {
    throw std::invalid_argument("successor target must be a boxed member of T: " + print(boxedTarget));
  }
  FormulaSet boxed = boxedMembers(w.pair.left);
  return Pair{setUnion(unboxSet(boxed), boxed), {boxedTarget.body()}};
}

CanonicalWorld successorPair(const CanonicalWorld& w, const Formula& boxedTarget) {
  Pair seed = successorSeed(w, boxedTarget);
  CanonicalWorld next;
  try {
    next.state = saturate(seed, w.universe, w.state.depth);
  } catch (const SaturationError& e) {
    if (e.kind() != SaturationError::Kind::Inconsistent) throw;
    throw SaturationError(SaturationError::Kind::Inconsistent,
                          "successor seed for " + print(boxedTarget) + " is provable at depth " +
                              std::to_string(w.state.depth) + " (depth-bound artifact)");
  }
  next.universe = next.state.universe;
  next.pair = next.state.pair;
  auto witness = glWitnessOf(next.pair.left);
  if (!witness) throw std::logic_error("successor lost its GL witness");
  next.glWitness = *witness;
  return next;
}

CanonicalFragment buildCanonicalFragment(const CanonicalWorld& root, std::size_t maxDepth) {
  CanonicalFragment frag;
  std::vector<std::size_t> level{0};
  frag.worlds.push_back(root);
  frag.parent.push_back(std::nullopt);
  for (std::size_t i = 0; i < frag.worlds.size(); ++i) {
    FormulaSet targets = boxedMembers(frag.worlds[i].pair.right);
    if (targets.empty()) continue;
    if (level[i] >= maxDepth) {
      frag.truncated = true;
      continue;
    }
    for (const auto& target : targets) {
      CanonicalWorld child = successorPair(frag.worlds[i], target);
      frag.worlds.push_back(std::move(child));
      frag.parent.push_back(i);
      level.push_back(level[i] + 1);
    }
  }

  KripkeModel& m = frag.model;
  for (std::size_t i = 0; i < frag.worlds.size(); ++i) {
    WorldId w = m.addWorld("w" + std::to_string(i));
    const CanonicalWorld& cw = frag.worlds[i];
    for (Variable v : cw.universe.members()) m.addToDomain(w, m.element(v.name()));
    for (const auto& f : cw.pair.left) {
      if (!f.is(Kind::Atom)) continue;
      Tuple t;
      for (Variable v : f.args()) t.push_back(m.element(v.name()));
      m.setTrue(w, f.predicate(), t);
    }
    if (frag.parent[i]) m.frame.addEdge(*frag.parent[i], w);
  }
  m.frame = transitiveClosure(m.frame);
  frag.root = 0;
  return frag;
}

std::vector<std::string> truthLemmaFailures(const CanonicalFragment& frag) {
  std::vector<std::string> failures;
  const KripkeModel& m = frag.model;
  for (WorldId w = 0; w < frag.worlds.size(); ++w) {
    const CanonicalWorld& cw = frag.worlds[w];
    Environment env;
    for (Variable v : cw.universe.members()) env[v] = *m.findElement(v.name());
    auto check = [&](const Formula& f, bool expected) {
      for (Variable v : freeVars(f)) {
        if (!env.contains(v)) {
          failures.push_back(m.worldName(w) + ": free variable " + v.name() + " of " + print(f) +
                             " is outside the universe");
          return;
        }
      }
      if (forces(m, w, f, env) != expected) {
        failures.push_back(m.worldName(w) + ": " + print(f) + (expected ? " in S but not forced" : " in T but forced"));
      }
    };
    for (const auto& f : cw.pair.left) check(f, true);
    for (const auto& f : cw.pair.right) check(f, false);
  }
  return failures;
}

json traceToJson(const SaturationState& st) {
  json entries = json::array();
  auto list = [](const FormulaSet& s) {
    json a = json::array();
    for (const auto& f : s) a.push_back(print(f));
    return a;
  };
  for (const auto& e : st.trace) {
    json j{{"stage", e.stage}, {"formula", print(e.formula)}, {"side", e.side}, {"case", e.rule}};
    if (!e.addedLeft.empty()) j["addS"] = list(e.addedLeft);
    if (!e.addedRight.empty()) j["addT"] = list(e.addedRight);
    if (e.fresh) j["fresh"] = e.fresh->name();
    if (e.rejectedChoices) j["rejected"] = e.rejectedChoices;
    entries.push_back(std::move(j));
  }
  json universe = json::array();
  for (Variable v : st.universe.members()) universe.push_back(v.name());
  return json{{"depth", st.depth},
              {"stages", st.stage},
              {"exhausted", st.exhausted},
              {"universe", universe},
              {"S", list(st.pair.left)},
              {"T", list(st.pair.right)},
              {"trace", entries}};
}

}  // namespace nqgl
