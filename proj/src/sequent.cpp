#include "nqgl/sequent.hpp"

#include <stdexcept>

namespace nqgl {

VariableSet vars(const Sequent& s) { return setUnion(vars(s.antecedent), vars(s.succedent)); }

VariableSet freeVars(const Sequent& s) { return setUnion(freeVars(s.antecedent), freeVars(s.succedent)); }

std::size_t size(const Sequent& s) {
  std::size_t n = 0;
  for (const auto& f : s.antecedent) n += f.size();
  for (const auto& f : s.succedent) n += f.size();
  return n;
}

VariableUniverse::VariableUniverse(VariableSet vars)
    : members_(std::move(vars)), watermark_(freshAbove(members_).index) {}

VariableUniverse::VariableUniverse(VariableSet vars, std::uint32_t watermark)
    : members_(std::move(vars)), watermark_(watermark) {
  if (!members_.empty() && members_.rbegin()->index >= watermark_) {
    throw std::invalid_argument("universe member " + members_.rbegin()->name() + " lies above the reserve watermark");
  }
}

bool VariableUniverse::varsWithin(const Formula& phi) const {
  for (auto v : vars(phi)) {
    if (!members_.contains(v)) return false;
  }
  return true;
}

Variable VariableUniverse::addFresh() {
  Variable v = reserveFresh();
  members_.insert(v);
  return v;
}

Variable VariableUniverse::reserveFresh() { return Variable{watermark_++}; }

}  // namespace nqgl
