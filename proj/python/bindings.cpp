#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "nqgl/gallery.hpp"
#include "nqgl/gl_prover.hpp"
#include "nqgl/kernel.hpp"
#include "nqgl/model_io.hpp"
#include "nqgl/proof_io.hpp"
#include "nqgl/saturation.hpp"
#include "nqgl/search.hpp"
#include "nqgl/syntax.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace nqgl;

namespace {

// Results cross the boundary as JSON text; the Python package decodes them.

std::string decideJson(const std::string& goal) {
  Sequent s = parseGoal(goal);
  DecideStats stats;
  GLVerdict v = decide(s, &stats);
  auto cert = certify(v, s);
  json r{{"sequent", print(s)},
         {"verdict", isProof(v) ? "provable" : "refuted"},
         {"certified", cert.ok},
         {"stats", {{"nodes", stats.nodes}, {"maxModalSteps", stats.maxModalSteps}}}};
  if (isProof(v)) {
    r["proof"] = glProofDocument(std::get<GLProof>(v));
  } else {
    const auto& cm = std::get<Countermodel>(v);
    r["model"] = modelToJson(cm.model);
    r["designated"] = cm.model.worldName(cm.world);
  }
  return r.dump();
}

std::string checkProofJson(const std::string& text, bool noCut, std::optional<std::size_t> K) {
  json doc = json::parse(text);
  json r;
  if (doc.is_object() && doc.value("calculus", "") == "GL") {
    GLProof p = glProofFromJson(doc);
    auto c = checkGLProof(p);
    r = {{"calculus", "GL"}, {"accepted", c.ok}, {"conclusion", print(p.conclusion)}};
    if (!c.ok) r["reason"] = c.reason;
    return r.dump();
  }
  Proof p = proofFromJson(doc);
  CheckOptions opts;
  opts.allowCut = !noCut;
  opts.instanceBound = K;
  auto c = checkProof(p, opts);
  r = {{"calculus", "NQGL"}, {"accepted", c.accepted}, {"conclusion", print(p.conclusion)}, {"nodes", p.nodeCount()}};
  if (!c.accepted) {
    r["reason"] = c.reason;
    r["path"] = c.path;
  }
  return r.dump();
}

std::optional<std::string> searchJson(const std::string& goal, std::size_t depth, std::size_t maxNodes) {
  CutFreeSearcher searcher({depth, maxNodes});
  auto r = searcher.prove(parseGoal(goal));
  if (!r.proof) return std::nullopt;
  return proofDocument(*r.proof).dump();
}

std::string galleryJson(std::optional<std::string> dir) {
  auto entries = buildGallery();
  if (dir) writeGallery(*dir, entries);
  json out = json::array();
  for (const auto& e : entries) {
    out.push_back({{"name", e.name},
                   {"description", e.description},
                   {"conclusion", print(e.proof.conclusion)},
                   {"proof", proofDocument(e.proof)}});
  }
  return out.dump();
}

std::optional<std::string> countermodelJson(const std::string& goal, std::size_t depth, std::size_t height) {
  Sequent s = parseGoal(goal);
  CanonicalWorld root;
  try {
    root = rootFromSequent(s, {depth, height});
  } catch (const SaturationError&) {
    return std::nullopt;
  }
  CanonicalFragment frag = buildCanonicalFragment(root);
  json r{{"sequent", print(s)},
         {"model", modelToJson(frag.model)},
         {"designated", frag.model.worldName(frag.root)},
         {"glWitness", root.glWitness},
         {"refutes", refutesSequent(frag.model, frag.root, s)},
         {"truthLemmaFailures", truthLemmaFailures(frag)},
         {"trace", traceToJson(root.state)}};
  return r.dump();
}

std::string modelCheckJson(const std::string& modelText, const std::string& formula) {
  KripkeModel m = modelFromJson(json::parse(modelText));
  Formula phi = parse(formula);
  VariableSet free = freeVars(phi);
  for (auto it = free.rbegin(); it != free.rend(); ++it) phi = Formula::forall(*it, phi);
  json forced = json::object();
  bool all = true;
  for (WorldId w = 0; w < m.worldCount(); ++w) {
    bool f = forces(m, w, phi);
    forced[m.worldName(w)] = f;
    all = all && f;
  }
  json violations = json::array();
  for (const auto& v : validateModel(m)) violations.push_back(v.message);
  return json{{"valid", all}, {"forced", forced}, {"modelViolations", violations}}.dump();
}

std::string frameCheckJson(const std::string& modelText) {
  KripkeModel m = modelFromJson(json::parse(modelText));
  auto c = classifyFrame(m.frame);
  json heights = json::object();
  for (WorldId w = 0; w < m.worldCount(); ++w) {
    heights[m.worldName(w)] = c.heightPerWorld[w] ? json(*c.heightPerWorld[w]) : json(nullptr);
  }
  return json{{"transitive", c.transitive},
              {"irreflexive", c.irreflexive},
              {"converselyWellFounded", c.converselyWellFounded},
              {"boundedLength", c.boundedLength},
              {"height", heights}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "NQGL workbench: syntax, GL decision, NQGL proof checking, Kripke models, saturation";

  static py::exception<ParseError> parseError(m, "ParseError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      PyErr_SetObject(parseError.ptr(), py::make_tuple(e.what(), e.position()).ptr());
    } catch (const ProofFormatError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const ModelFormatError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<Formula>(m, "Formula")
      .def(py::init([](const std::string& text) { return parse(text); }), py::arg("text"))
      .def("__str__", [](const Formula& f) { return print(f); })
      .def("__repr__", [](const Formula& f) { return "Formula('" + print(f) + "')"; })
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
      .def("__hash__", &Formula::hash)
      .def_property_readonly("size", &Formula::size)
      .def_property_readonly("modal_depth", &Formula::modalDepth)
      .def_property_readonly("is_propositional", [](const Formula& f) { return isPropositional(f); })
      .def_property_readonly("free_variables", [](const Formula& f) {
        std::vector<std::string> out;
        for (Variable v : freeVars(f)) out.push_back(v.name());
        return out;
      });

  m.def("parse", [](const std::string& text) { return parse(text); }, py::arg("text"));
  m.def("normalize_sequent", [](const std::string& text) { return print(parseGoal(text)); }, py::arg("text"),
        "Parse a sequent (or a formula as |- formula) and print it back.");
  m.def("diamond_tower", &diamondTower, py::arg("n"));

  m.def("_decide", &decideJson, py::arg("goal"));
  m.def("_check_proof", &checkProofJson, py::arg("text"), py::arg("no_cut") = false, py::arg("K") = py::none());
  m.def("_search", &searchJson, py::arg("goal"), py::arg("depth") = 8, py::arg("max_nodes") = 2'000'000);
  m.def("_gallery", &galleryJson, py::arg("directory") = py::none());
  m.def("_countermodel", &countermodelJson, py::arg("goal"), py::arg("depth") = 4, py::arg("height") = 8);
  m.def("_model_check", &modelCheckJson, py::arg("model"), py::arg("formula"));
  m.def("_frame_check", &frameCheckJson, py::arg("model"));
  m.def(
      "validity_oracle",
      [](const Formula& phi, std::size_t maxWorlds) -> std::optional<std::string> {
        auto cm = validityOracle(phi, maxWorlds);
        if (!cm) return std::nullopt;
        return json{{"model", modelToJson(cm->model)}, {"designated", cm->model.worldName(cm->world)}}.dump();
      },
      py::arg("formula"), py::arg("max_worlds") = 4);
}
