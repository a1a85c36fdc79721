#include "nqgl/kripke.hpp"

#include <algorithm>
#include <functional>

#include "nqgl/syntax.hpp"

namespace nqgl {

Frame::Frame(std::size_t worldCount) : successors_(worldCount) {}

WorldId Frame::addWorld() {
  successors_.emplace_back();
  return successors_.size() - 1;
}

void Frame::addEdge(WorldId from, WorldId to) {
  if (from >= worldCount() || to >= worldCount()) throw std::out_of_range("edge endpoint is not a world");
  auto& succ = successors_[from];
  auto it = std::lower_bound(succ.begin(), succ.end(), to);
  if (it == succ.end() || *it != to) succ.insert(it, to);
}

void Frame::removeEdge(WorldId from, WorldId to) {
  auto& succ = successors_.at(from);
  auto it = std::lower_bound(succ.begin(), succ.end(), to);
  if (it != succ.end() && *it == to) succ.erase(it);
}

bool Frame::related(WorldId from, WorldId to) const {
  const auto& succ = successors_.at(from);
  return std::binary_search(succ.begin(), succ.end(), to);
}

WorldId KripkeModel::addWorld(std::string name) {
  if (findWorld(name)) throw std::invalid_argument("duplicate world '" + name + "'");
  worldNames_.push_back(std::move(name));
  domains_.emplace_back();
  interp_.emplace_back();
  return frame.addWorld();
}

std::optional<WorldId> KripkeModel::findWorld(std::string_view name) const {
  auto it = std::find(worldNames_.begin(), worldNames_.end(), name);
  if (it == worldNames_.end()) return std::nullopt;
  return static_cast<WorldId>(it - worldNames_.begin());
}

Element KripkeModel::element(const std::string& name) {
  if (auto e = findElement(name)) return *e;
  elementNames_.push_back(name);
  return elementNames_.size() - 1;
}

std::optional<Element> KripkeModel::findElement(std::string_view name) const {
  auto it = std::find(elementNames_.begin(), elementNames_.end(), name);
  if (it == elementNames_.end()) return std::nullopt;
  return static_cast<Element>(it - elementNames_.begin());
}

void KripkeModel::addToDomain(WorldId w, Element e) {
  auto& d = domains_.at(w);
  auto it = std::lower_bound(d.begin(), d.end(), e);
  if (it == d.end() || *it != e) d.insert(it, e);
}

void KripkeModel::setTrue(WorldId w, const PredicateSymbol& p, Tuple tuple) {
  interp_.at(w)[p].insert(std::move(tuple));
}

bool KripkeModel::holds(WorldId w, const PredicateSymbol& p, const Tuple& tuple) const {
  const auto& table = interp_.at(w);
  auto it = table.find(p);
  return it != table.end() && it->second.contains(tuple);
}

std::vector<ModelViolation> validateModel(const KripkeModel& m) {
  std::vector<ModelViolation> out;
  for (WorldId w = 0; w < m.worldCount(); ++w) {
    const auto& dw = m.domain(w);
    if (dw.empty()) {
      out.push_back({ModelViolation::Kind::EmptyDomain, w, std::nullopt, "empty domain at " + m.worldName(w)});
    }
    for (WorldId v : m.frame.successors(w)) {
      const auto& dv = m.domain(v);
      if (!std::includes(dv.begin(), dv.end(), dw.begin(), dw.end())) {
        out.push_back({ModelViolation::Kind::NonMonotoneDomain, w, v,
                       "domain of " + m.worldName(w) + " is not included in the domain of " + m.worldName(v)});
      }
    }
    for (const auto& [symbol, tuples] : m.interpretation(w)) {
      for (const auto& tuple : tuples) {
        if (tuple.size() != symbol.arity) {
          out.push_back({ModelViolation::Kind::ArityMismatch, w, std::nullopt,
                         "tuple of length " + std::to_string(tuple.size()) + " for " + symbol.name + "/" +
                             std::to_string(symbol.arity) + " at " + m.worldName(w)});
          continue;
        }
        for (Element e : tuple) {
          if (!std::binary_search(dw.begin(), dw.end(), e)) {
            out.push_back({ModelViolation::Kind::TupleOutsideDomain, w, std::nullopt,
                           "I(" + m.worldName(w) + "," + symbol.name + ") mentions " + m.elementName(e) +
                               " outside the domain"});
            break;
          }
        }
      }
    }
  }
  return out;
}

namespace {

bool forcesImpl(const KripkeModel& m, WorldId w, const Formula& phi, Environment& env) {
  switch (phi.kind()) {
    case Kind::Top:
      return true;
    case Kind::Bottom:
      return false;
    case Kind::Atom: {
      Tuple tuple;
      tuple.reserve(phi.args().size());
      for (auto v : phi.args()) {
        auto it = env.find(v);
        if (it == env.end()) throw UnboundVariable("free variable " + v.name() + " has no value");
        tuple.push_back(it->second);
      }
      return m.holds(w, phi.predicate(), tuple);
    }
    case Kind::And:
      return forcesImpl(m, w, phi.lhs(), env) && forcesImpl(m, w, phi.rhs(), env);
    case Kind::Implies:
      return !forcesImpl(m, w, phi.lhs(), env) || forcesImpl(m, w, phi.rhs(), env);
    case Kind::Not:
      return !forcesImpl(m, w, phi.body(), env);
    case Kind::ForAll: {
      Variable x = phi.bound();
      std::optional<Element> saved;
      if (auto it = env.find(x); it != env.end()) saved = it->second;
      bool result = true;
      for (Element d : m.domain(w)) {
        env[x] = d;
        if (!forcesImpl(m, w, phi.body(), env)) {
          result = false;
          break;
        }
      }
      if (saved) {
        env[x] = *saved;
      } else {
        env.erase(x);
      }
      return result;
    }
    case Kind::Box:
      for (WorldId v : m.frame.successors(w)) {
        if (!forcesImpl(m, v, phi.body(), env)) return false;
      }
      return true;
  }
  return false;
}

// Calls visit(env) for every assignment of `free` into D_w; stops when visit returns false.
bool forEachAssignment(const KripkeModel& m, WorldId w, const VariableSet& free,
                       const std::function<bool(const Environment&)>& visit) {
  std::vector<Variable> order(free.begin(), free.end());
  const auto& dom = m.domain(w);
  if (!order.empty() && dom.empty()) return true;
  std::vector<std::size_t> idx(order.size(), 0);
  while (true) {
    Environment env;
    for (std::size_t i = 0; i < order.size(); ++i) env[order[i]] = dom[idx[i]];
    if (!visit(env)) return false;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == dom.size()) idx[i++] = 0;
    if (i == idx.size()) return true;
  }
}

}  // namespace

bool forces(const KripkeModel& m, WorldId w, const Formula& phi, const Environment& env) {
  Environment scratch = env;
  return forcesImpl(m, w, phi, scratch);
}

bool validInModel(const KripkeModel& m, const Formula& phi) {
  VariableSet free = freeVars(phi);
  for (WorldId w = 0; w < m.worldCount(); ++w) {
    bool ok = forEachAssignment(m, w, free, [&](const Environment& env) { return forces(m, w, phi, env); });
    if (!ok) return false;
  }
  return true;
}

FrameClassReport classifyFrame(const Frame& f) {
  FrameClassReport r;
  const std::size_t n = f.worldCount();
  r.transitive = true;
  r.irreflexive = true;
  for (WorldId a = 0; a < n; ++a) {
    if (f.related(a, a)) r.irreflexive = false;
    for (WorldId b : f.successors(a)) {
      for (WorldId c : f.successors(b)) {
        if (!f.related(a, c)) r.transitive = false;
      }
    }
  }

  // Longest outgoing path by DFS; a grey node on the stack signals a cycle.
  enum class Mark { White, Grey, Black };
  std::vector<Mark> mark(n, Mark::White);
  std::vector<std::optional<std::size_t>> height(n);
  std::vector<bool> cyclic(n, false);
  std::function<void(WorldId)> visit = [&](WorldId w) {
    mark[w] = Mark::Grey;
    std::size_t best = 0;
    bool bad = false;
    for (WorldId v : f.successors(w)) {
      if (mark[v] == Mark::Grey) {
        bad = true;
        continue;
      }
      if (mark[v] == Mark::White) visit(v);
      if (cyclic[v]) {
        bad = true;
      } else {
        best = std::max(best, *height[v] + 1);
      }
    }
    mark[w] = Mark::Black;
    cyclic[w] = bad;
    if (!bad) height[w] = best;
  };
  for (WorldId w = 0; w < n; ++w) {
    if (mark[w] == Mark::White) visit(w);
  }
  // A node whose successor was grey when visited may have been finished before
  // that successor learned it is cyclic; propagate to a fixpoint.
  for (bool changed = true; changed;) {
    changed = false;
    for (WorldId w = 0; w < n; ++w) {
      if (cyclic[w]) continue;
      for (WorldId v : f.successors(w)) {
        if (cyclic[v]) {
          cyclic[w] = true;
          height[w].reset();
          changed = true;
          break;
        }
      }
    }
  }
  r.heightPerWorld = height;
  r.converselyWellFounded = std::none_of(cyclic.begin(), cyclic.end(), [](bool b) { return b; });
  r.boundedLength = r.converselyWellFounded;
  return r;
}

std::size_t boundednessWitness(const KripkeModel& m, WorldId w) {
  auto report = classifyFrame(m.frame);
  if (!report.heightPerWorld.at(w)) {
    throw NoBoundednessWitness("a cycle is reachable from " + m.worldName(w) + "; dia^n T holds for every n");
  }
  for (std::size_t n = 0;; ++n) {
    if (forces(m, w, Formula::negation(diamondTower(n)))) return n;
    if (n > m.worldCount() + 1) throw std::logic_error("boundedness witness exceeds the number of worlds");
  }
}

bool refutesSequent(const KripkeModel& m, WorldId w, const Sequent& s) {
  bool refuted = false;
  forEachAssignment(m, w, freeVars(s), [&](const Environment& env) {
    for (const auto& g : s.antecedent) {
      if (!forces(m, w, g, env)) return true;
    }
    for (const auto& d : s.succedent) {
      if (forces(m, w, d, env)) return true;
    }
    refuted = true;
    return false;
  });
  return refuted;
}

Frame transitiveClosure(const Frame& f) {
  const std::size_t n = f.worldCount();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (WorldId a = 0; a < n; ++a) {
    for (WorldId b : f.successors(a)) reach[a][b] = true;
  }
  for (WorldId k = 0; k < n; ++k) {
    for (WorldId i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (WorldId j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  Frame out(n);
  for (WorldId a = 0; a < n; ++a) {
    for (WorldId b = 0; b < n; ++b) {
      if (reach[a][b]) out.addEdge(a, b);
    }
  }
  return out;
}

}  // namespace nqgl
