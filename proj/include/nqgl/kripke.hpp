#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nqgl/formula.hpp"
#include "nqgl/sequent.hpp"

namespace nqgl {

using WorldId = std::size_t;
/// Domain elements are interned names; two elements are equal iff their ids are.
using Element = std::size_t;
using Tuple = std::vector<Element>;
using Environment = std::map<Variable, Element>;

/// Finite Kripke frame (W, R) with W = {0, ..., worldCount-1}.
class Frame {
 public:
  Frame() = default;
  explicit Frame(std::size_t worldCount);

  std::size_t worldCount() const { return successors_.size(); }
  WorldId addWorld();
  void addEdge(WorldId from, WorldId to);
  void removeEdge(WorldId from, WorldId to);
  bool related(WorldId from, WorldId to) const;
  /// Sorted successor list of w.
  const std::vector<WorldId>& successors(WorldId w) const { return successors_.at(w); }

 private:
  std::vector<std::vector<WorldId>> successors_;
};

/// Predicate Kripke model (W, R, D, I) over expanding domains.
class KripkeModel {
 public:
  Frame frame;

  WorldId addWorld(std::string name);
  std::size_t worldCount() const { return frame.worldCount(); }
  const std::string& worldName(WorldId w) const { return worldNames_.at(w); }
  std::optional<WorldId> findWorld(std::string_view name) const;

  /// Interns an element name.
  Element element(const std::string& name);
  std::optional<Element> findElement(std::string_view name) const;
  const std::string& elementName(Element e) const { return elementNames_.at(e); }
  std::size_t elementCount() const { return elementNames_.size(); }

  void addToDomain(WorldId w, Element e);
  /// Sorted D_w.
  const std::vector<Element>& domain(WorldId w) const { return domains_.at(w); }

  void setTrue(WorldId w, const PredicateSymbol& p, Tuple tuple = {});
  bool holds(WorldId w, const PredicateSymbol& p, const Tuple& tuple) const;
  const std::map<PredicateSymbol, std::set<Tuple>>& interpretation(WorldId w) const { return interp_.at(w); }

 private:
  std::vector<std::string> worldNames_;
  std::vector<std::string> elementNames_;
  std::vector<std::vector<Element>> domains_;
  std::vector<std::map<PredicateSymbol, std::set<Tuple>>> interp_;
};

struct ModelViolation {
  enum class Kind { EmptyDomain, NonMonotoneDomain, TupleOutsideDomain, ArityMismatch };
  Kind kind;
  WorldId world = 0;
  std::optional<WorldId> target;  // successor for NonMonotoneDomain
  std::string message;
};

/// Domain monotonicity along R, non-empty domains, and I(w,P) within (D_w)^n.
std::vector<ModelViolation> validateModel(const KripkeModel& m);

class UnboundVariable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// M, w |= phi under env. Throws UnboundVariable when a free variable of phi
/// has no value in env.
bool forces(const KripkeModel& m, WorldId w, const Formula& phi, const Environment& env = {});

/// M |= phi: the universal closure holds at every world.
bool validInModel(const KripkeModel& m, const Formula& phi);

struct FrameClassReport {
  bool transitive = false;
  bool irreflexive = false;
  bool converselyWellFounded = false;
  bool boundedLength = false;
  /// Longest outgoing path (in edges) per world; empty where a cycle is reachable.
  std::vector<std::optional<std::size_t>> heightPerWorld;
};

FrameClassReport classifyFrame(const Frame& f);

class NoBoundednessWitness : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least n with M, w |= ~dia^n T. Throws NoBoundednessWitness when a cycle is
/// reachable from w.
std::size_t boundednessWitness(const KripkeModel& m, WorldId w);

/// True iff some assignment of the sequent's free variables into D_w forces
/// every antecedent member and no succedent member at w, i.e. the universal
/// closure of the sequent fails at w.
bool refutesSequent(const KripkeModel& m, WorldId w, const Sequent& s);

/// R+, the transitive closure of the relation.
Frame transitiveClosure(const Frame& f);

}  // namespace nqgl
