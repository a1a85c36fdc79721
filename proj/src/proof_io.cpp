#include "nqgl/proof_io.hpp"

#include "nqgl/syntax.hpp"

namespace nqgl {

using nlohmann::json;

namespace {

std::string stringField(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw ProofFormatError(where + ": missing string field '" + key + "'");
  }
  return it->get<std::string>();
}

Formula formulaAt(const json& j, const std::string& where, bool schematic) {
  if (!j.is_string()) throw ProofFormatError(where + ": formula must be a string");
  try {
    return parse(j.get<std::string>(), ParseOptions{schematic});
  } catch (const ParseError& e) {
    throw ProofFormatError(where + ": " + e.what());
  }
}

FormulaSet formulaSetAt(const json& j, const std::string& where, bool schematic) {
  if (!j.is_array()) throw ProofFormatError(where + ": expected an array of formulas");
  FormulaSet out;
  for (std::size_t i = 0; i < j.size(); ++i) out.insert(formulaAt(j[i], where + "/" + std::to_string(i), schematic));
  return out;
}

Variable variableAt(const json& j, const std::string& where) {
  if (!j.is_string()) throw ProofFormatError(where + ": variable must be a string");
  try {
    return parseVariable(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ProofFormatError(where + ": " + e.what());
  }
}

Proof fromJson(const json& j, const std::string& where, bool schematic) {
  if (!j.is_object()) throw ProofFormatError(where + ": proof node must be an object");
  Proof p;
  auto name = stringField(j, "rule", where);
  auto tag = ruleFromName(name);
  if (!tag) throw ProofFormatError(where + ": unknown rule '" + name + "'");
  p.rule = *tag;
  try {
    p.conclusion = parseSequent(stringField(j, "conclusion", where), ParseOptions{schematic});
  } catch (const ParseError& e) {
    throw ProofFormatError(where + "/conclusion: " + e.what());
  }
  if (auto it = j.find("premises"); it != j.end()) {
    if (!it->is_array()) throw ProofFormatError(where + "/premises: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      p.premises.push_back(fromJson((*it)[i], where + "/premises/" + std::to_string(i), schematic));
    }
  }
  if (auto it = j.find("ann"); it != j.end()) {
    const auto& a = *it;
    if (!a.is_object()) throw ProofFormatError(where + "/ann: expected an object");
    const std::string at = where + "/ann";
    if (a.contains("principal")) p.ann.principal = formulaAt(a["principal"], at + "/principal", schematic);
    if (a.contains("cut")) p.ann.cutFormula = formulaAt(a["cut"], at + "/cut", schematic);
    if (a.contains("eigen")) p.ann.eigenvariable = variableAt(a["eigen"], at + "/eigen");
    if (a.contains("witness")) p.ann.witness = variableAt(a["witness"], at + "/witness");
    if (a.contains("gamma")) p.ann.boxKept = formulaSetAt(a["gamma"], at + "/gamma", schematic);
    if (a.contains("delta")) p.ann.boxUnboxed = formulaSetAt(a["delta"], at + "/delta", schematic);
  }
  if (auto it = j.find("cert"); it != j.end()) {
    const auto& c = *it;
    if (!c.is_object() || !c.contains("template")) {
      throw ProofFormatError(where + "/cert: expected {\"template\": node, \"K\": k}");
    }
    SchematicCertificate cert;
    cert.templateProof = fromJson(c["template"], where + "/cert/template", true);
    if (c.contains("K")) {
      if (!c["K"].is_number_unsigned()) throw ProofFormatError(where + "/cert/K: expected a natural number");
      cert.instanceCheckBound = c["K"].get<std::size_t>();
    }
    p.certificate = std::make_shared<const SchematicCertificate>(std::move(cert));
  }
  return p;
}

json setToJson(const FormulaSet& s) {
  json out = json::array();
  for (const auto& f : s) out.push_back(print(f));
  return out;
}

}  // namespace

Proof proofFromJson(const json& j) {
  if (j.is_object() && j.contains("calculus")) {
    if (j["calculus"] != "NQGL") throw ProofFormatError("expected an NQGL proof document, got " + j["calculus"].dump());
    if (!j.contains("proof")) throw ProofFormatError("proof document without 'proof'");
    return fromJson(j["proof"], "", false);
  }
  return fromJson(j, "", false);
}

json proofToJson(const Proof& p) {
  json j;
  j["rule"] = ruleName(p.rule);
  j["conclusion"] = print(p.conclusion);
  json premises = json::array();
  for (const auto& q : p.premises) premises.push_back(proofToJson(q));
  j["premises"] = premises;
  json ann = json::object();
  if (p.ann.principal) ann["principal"] = print(*p.ann.principal);
  if (p.ann.cutFormula) ann["cut"] = print(*p.ann.cutFormula);
  if (p.ann.eigenvariable) ann["eigen"] = p.ann.eigenvariable->name();
  if (p.ann.witness) ann["witness"] = p.ann.witness->name();
  if (p.ann.boxKept) ann["gamma"] = setToJson(*p.ann.boxKept);
  if (p.ann.boxUnboxed) ann["delta"] = setToJson(*p.ann.boxUnboxed);
  if (!ann.empty()) j["ann"] = ann;
  if (p.certificate) {
    j["cert"] = json{{"template", proofToJson(p.certificate->templateProof)}, {"K", p.certificate->instanceCheckBound}};
  }
  return j;
}

json proofDocument(const Proof& p) { return json{{"calculus", "NQGL"}, {"proof", proofToJson(p)}}; }

}  // namespace nqgl
