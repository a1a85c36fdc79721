#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "nqgl/kernel.hpp"

namespace nqgl {

class ProofFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Proof node: {"rule", "conclusion": "G |- D", "premises": [...], "ann": {...}}.
/// ann keys: "principal", "cut", "eigen", "witness", "gamma", "delta".
/// Omega node: {"rule": "omega", "conclusion", "cert": {"template": node, "K": k}};
/// template formulas may use the towers dia^{n} T and dia^{n+c} T.
Proof proofFromJson(const nlohmann::json& j);
nlohmann::json proofToJson(const Proof& p);

/// {"calculus": "NQGL", "proof": node}
nlohmann::json proofDocument(const Proof& p);

}  // namespace nqgl
