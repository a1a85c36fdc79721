// nqgl: command-line front end. Reports are JSON lines on stdout.
// Exit codes: 0 success / provable / valid, 1 refuted / rejected, 2 usage or input errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "nqgl/gallery.hpp"
#include "nqgl/gl_prover.hpp"
#include "nqgl/kernel.hpp"
#include "nqgl/kripke.hpp"
#include "nqgl/model_io.hpp"
#include "nqgl/proof_io.hpp"
#include "nqgl/random_models.hpp"
#include "nqgl/saturation.hpp"
#include "nqgl/search.hpp"
#include "nqgl/syntax.hpp"

using nlohmann::json;
using namespace nqgl;

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

bool pretty = false;

void emit(const json& j) { std::cout << j.dump(pretty ? 2 : -1) << '\n'; }

/// Input problem reported with exit code 2.
struct InputError {
  json report;
};

[[noreturn]] void inputError(const std::string& kind, const std::string& message, json extra = json::object()) {
  extra["error"] = kind;
  extra["message"] = message;
  throw InputError{std::move(extra)};
}

json readJsonFile(const std::string& path) {
  if (!std::filesystem::exists(path)) inputError("file-not-found", "no such file", {{"file", path}});
  std::ifstream in(path);
  if (!in) inputError("io", "cannot open file", {{"file", path}});
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    inputError("malformed-json", e.what(), {{"file", path}, {"position", e.byte}});
  }
}

void writeJsonFile(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) inputError("io", "cannot write file", {{"file", path}});
  out << j.dump(2) << '\n';
}

template <class F>
auto parsing(const std::string& text, F&& f) {
  try {
    return f(text);
  } catch (const ParseError& e) {
    inputError("parse", e.what(), {{"input", text}, {"position", e.position()}});
  }
}

Sequent goalOf(const std::string& text) {
  return parsing(text, [](const std::string& t) { return parseGoal(t); });
}

KripkeModel modelOf(const json& j, const std::string& file) {
  try {
    return modelFromJson(j);
  } catch (const ModelFormatError& e) {
    inputError("model-format", e.what(), {{"file", file}});
  }
}

bool isPropositional(const Sequent& s) {
  for (const auto* side : {&s.antecedent, &s.succedent}) {
    for (const auto& phi : *side) {
      if (!nqgl::isPropositional(phi)) return false;
    }
  }
  return true;
}

json names(const VariableSet& vs) {
  json out = json::array();
  for (Variable v : vs) out.push_back(v.name());
  return out;
}

json violationsJson(const std::vector<ModelViolation>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(v.message);
  return out;
}

json frameJson(const KripkeModel& m) {
  auto c = classifyFrame(m.frame);
  json heights = json::object();
  for (WorldId w = 0; w < m.worldCount(); ++w) {
    heights[m.worldName(w)] = c.heightPerWorld[w] ? json(*c.heightPerWorld[w]) : json(nullptr);
  }
  return {{"transitive", c.transitive},
          {"irreflexive", c.irreflexive},
          {"converselyWellFounded", c.converselyWellFounded},
          {"boundedLength", c.boundedLength},
          {"height", heights}};
}

json modelFile(const KripkeModel& m, WorldId designated, const Sequent& s) {
  json j = modelToJson(m);
  j["designated"] = m.worldName(designated);
  j["refutes"] = print(s);
  return j;
}

// ---------------------------------------------------------------- commands

struct ParseCmd {
  std::string text;
  int run() const {
    json r{{"command", "parse"}, {"input", text}};
    if (text.find("|-") != std::string::npos) {
      Sequent s = parsing(text, [](const std::string& t) { return parseSequent(t); });
      r["kind"] = "sequent";
      r["printed"] = print(s);
      r["freeVars"] = names(setUnion(freeVars(s.antecedent), freeVars(s.succedent)));
    } else {
      Formula phi = parsing(text, [](const std::string& t) { return parse(t); });
      r["kind"] = "formula";
      r["printed"] = print(phi);
      r["size"] = phi.size();
      r["modalDepth"] = phi.modalDepth();
      r["propositional"] = nqgl::isPropositional(phi);
      r["freeVars"] = names(freeVars(phi));
    }
    emit(r);
    return kOk;
  }
};

struct CheckProofCmd {
  std::string file;
  bool noCut = false;
  bool atomic = false;
  std::optional<std::size_t> K;
  std::size_t models = 0;

  int run() const {
    json doc = readJsonFile(file);
    json r{{"command", "check-proof"}, {"file", file}};
    std::optional<Sequent> conclusion;
    bool accepted = false;
    if (doc.is_object() && doc.value("calculus", "") == "GL") {
      GLProof p;
      try {
        p = glProofFromJson(doc);
      } catch (const std::exception& e) {
        inputError("proof-format", e.what(), {{"file", file}});
      }
      auto c = checkGLProof(p);
      accepted = c.ok;
      r["calculus"] = "GL";
      r["nodes"] = p.nodeCount();
      r["conclusion"] = print(p.conclusion);
      if (!c.ok) {
        r["path"] = c.path;
        r["reason"] = c.reason;
      }
      conclusion = p.conclusion;
    } else {
      Proof p;
      try {
        p = proofFromJson(doc);
      } catch (const ProofFormatError& e) {
        inputError("proof-format", e.what(), {{"file", file}});
      } catch (const ParseError& e) {
        inputError("parse", e.what(), {{"file", file}, {"position", e.position()}});
      }
      CheckOptions opts;
      opts.allowCut = !noCut;
      opts.atomicAxiomsOnly = atomic;
      opts.instanceBound = K;
      auto c = checkProof(p, opts);
      accepted = c.accepted;
      r["calculus"] = "NQGL";
      r["nodes"] = p.nodeCount();
      r["conclusion"] = print(p.conclusion);
      r["cutFree"] = !p.containsRule(RuleTag::Cut);
      if (!c.accepted) {
        r["path"] = c.path;
        r["reason"] = c.reason;
      }
      conclusion = p.conclusion;
    }
    r["accepted"] = accepted;
    if (accepted && models > 0) {
      // Spot check of the end-sequent on random models.
      std::set<PredicateSymbol> symbols;
      for (const auto* side : {&conclusion->antecedent, &conclusion->succedent}) {
        for (const auto& phi : *side) {
          auto p = predicates(phi);
          symbols.insert(p.begin(), p.end());
        }
      }
      std::uint64_t seed = seedFromEnvironment();
      std::mt19937_64 rng(seed);
      std::size_t refuted = 0;
      for (std::size_t i = 0; i < models; ++i) {
        KripkeModel m = randomModel(rng, symbols);
        for (WorldId w = 0; w < m.worldCount(); ++w) refuted += refutesSequent(m, w, *conclusion);
      }
      r["models"] = {{"count", models}, {"seed", seed}, {"refutations", refuted}};
      accepted = refuted == 0;
    }
    emit(r);
    return accepted ? kOk : kNo;
  }
};

struct ProveCmd {
  std::string text;
  std::string emitPath;
  std::size_t oracleWorlds = 0;
  bool search = false;
  std::size_t depth = 8;
  std::size_t maxNodes = 2'000'000;
  std::size_t satDepth = 4;
  std::size_t height = 8;

  int run() const {
    Sequent s = goalOf(text);
    json r{{"command", "prove"}, {"sequent", print(s)}};
    if (isPropositional(s) && !search) return decideGoal(s, r);
    return searchGoal(s, r);
  }

  int decideGoal(const Sequent& s, json& r) const {
    DecideStats stats;
    GLVerdict v = decide(s, &stats);
    auto cert = certify(v, s);
    r["method"] = "decide";
    r["verdict"] = isProof(v) ? "provable" : "refuted";
    r["certified"] = cert.ok;
    if (!cert.ok) r["certifyReason"] = cert.reason;
    r["stats"] = {{"nodes", stats.nodes}, {"maxBranchLength", stats.maxBranchLength},
                  {"maxModalSteps", stats.maxModalSteps}};
    if (isProof(v)) {
      r["proofNodes"] = std::get<GLProof>(v).nodeCount();
      if (!emitPath.empty()) writeJsonFile(emitPath, glProofDocument(std::get<GLProof>(v)));
    } else {
      const auto& cm = std::get<Countermodel>(v);
      r["worlds"] = cm.model.worldCount();
      r["designated"] = cm.model.worldName(cm.world);
      if (!emitPath.empty()) writeJsonFile(emitPath, modelFile(cm.model, cm.world, s));
    }
    if (!emitPath.empty()) r["emitted"] = emitPath;
    bool consistent = true;
    if (oracleWorlds > 0) {
      auto oc = validityOracle(sequentFormula(s), oracleWorlds);
      // A countermodel from decide may need more worlds than the oracle tries.
      consistent = !(isProof(v) && oc.has_value());
      r["oracle"] = {{"maxWorlds", oracleWorlds}, {"countermodelFound", oc.has_value()}, {"consistent", consistent}};
    }
    emit(r);
    if (!cert.ok || !consistent) return kError;
    return isProof(v) ? kOk : kNo;
  }

  int searchGoal(const Sequent& s, json& r) const {
    CutFreeSearcher searcher({depth, maxNodes});
    auto res = searcher.prove(s);
    r["method"] = "search";
    r["nodesVisited"] = res.nodesVisited;
    if (res.proof) {
      CheckOptions opts;
      opts.allowCut = false;
      auto c = checkProof(*res.proof, opts);
      r["verdict"] = "provable";
      r["certified"] = c.accepted;
      r["proofNodes"] = res.proof->nodeCount();
      if (!emitPath.empty()) {
        writeJsonFile(emitPath, proofDocument(*res.proof));
        r["emitted"] = emitPath;
      }
      emit(r);
      return c.accepted ? kOk : kError;
    }
    r["budgetExhausted"] = res.budgetExhausted;
    // No proof within the bound: look for a canonical countermodel.
    try {
      CanonicalWorld root = rootFromSequent(s, {satDepth, height});
      CanonicalFragment frag = buildCanonicalFragment(root);
      bool ok = validateModel(frag.model).empty() && classifyFrame(frag.model.frame).boundedLength &&
                refutesSequent(frag.model, frag.root, s);
      if (ok) {
        r["verdict"] = "refuted";
        r["certified"] = true;
        r["worlds"] = frag.model.worldCount();
        r["designated"] = frag.model.worldName(frag.root);
        if (!emitPath.empty()) {
          writeJsonFile(emitPath, modelFile(frag.model, frag.root, s));
          r["emitted"] = emitPath;
        }
        emit(r);
        return kNo;
      }
    } catch (const SaturationError& e) {
      r["saturation"] = e.what();
    }
    r["verdict"] = "unknown";
    emit(r);
    return kNo;
  }
};

struct CountermodelCmd {
  std::string text;
  std::size_t depth = 4;
  std::size_t height = 8;
  std::size_t levels = 16;
  std::string emitPath;
  std::string tracePath;

  int run() const {
    Sequent s = goalOf(text);
    json r{{"command", "countermodel"}, {"sequent", print(s)}};
    CanonicalWorld root;
    try {
      root = rootFromSequent(s, {depth, height});
    } catch (const SaturationError& e) {
      r["verdict"] = "none";
      r["reason"] = e.what();
      emit(r);
      return kNo;
    }
    CanonicalFragment frag = buildCanonicalFragment(root, levels);
    auto cls = classifyFrame(frag.model.frame);
    auto violations = validateModel(frag.model);
    auto lemma = truthLemmaFailures(frag);
    bool refutes = refutesSequent(frag.model, frag.root, s);
    bool certified = violations.empty() && cls.transitive && cls.irreflexive && cls.boundedLength && refutes;
    r["verdict"] = certified ? "refuted" : "uncertified";
    r["glWitness"] = root.glWitness;
    r["worlds"] = frag.model.worldCount();
    r["designated"] = frag.model.worldName(frag.root);
    r["truncated"] = frag.truncated;
    r["frame"] = frameJson(frag.model);
    r["truthLemmaFailures"] = lemma;
    r["modelViolations"] = violationsJson(violations);
    if (!emitPath.empty()) {
      writeJsonFile(emitPath, modelFile(frag.model, frag.root, s));
      r["emitted"] = emitPath;
    }
    if (!tracePath.empty()) {
      json worlds = json::array();
      for (WorldId w = 0; w < frag.worlds.size(); ++w) {
        json t = traceToJson(frag.worlds[w].state);
        t["world"] = frag.model.worldName(w);
        t["parent"] = frag.parent[w] ? json(frag.model.worldName(*frag.parent[w])) : json(nullptr);
        t["glWitness"] = frag.worlds[w].glWitness;
        worlds.push_back(std::move(t));
      }
      writeJsonFile(tracePath, {{"sequent", print(s)}, {"worlds", worlds}});
      r["trace"] = tracePath;
    }
    emit(r);
    return certified ? kOk : kNo;
  }
};

Formula universalClosure(Formula phi) {
  VariableSet free = freeVars(phi);
  for (auto it = free.rbegin(); it != free.rend(); ++it) phi = Formula::forall(*it, phi);
  return phi;
}

struct ModelCheckCmd {
  std::string file;
  std::string text;
  std::string world;

  int run() const {
    KripkeModel m = modelOf(readJsonFile(file), file);
    Formula phi = parsing(text, [](const std::string& t) { return parse(t); });
    json r{{"command", "model-check"}, {"file", file}, {"formula", print(phi)}};
    auto violations = validateModel(m);
    if (!violations.empty()) {
      r["error"] = "invalid-model";
      r["modelViolations"] = violationsJson(violations);
      emit(r);
      return kError;
    }
    Formula closed = universalClosure(phi);
    json at = json::object();
    bool all = true;
    for (WorldId w = 0; w < m.worldCount(); ++w) {
      bool f = forces(m, w, closed);
      at[m.worldName(w)] = f;
      all = all && f;
    }
    r["forced"] = at;
    bool verdict = all;
    if (!world.empty()) {
      auto w = m.findWorld(world);
      if (!w) inputError("unknown-world", "no world named " + world, {{"file", file}});
      verdict = at[world].get<bool>();
      r["world"] = world;
    }
    r["valid"] = verdict;
    emit(r);
    return verdict ? kOk : kNo;
  }
};

struct FrameCheckCmd {
  std::string file;
  int run() const {
    KripkeModel m = modelOf(readJsonFile(file), file);
    json r{{"command", "frame-check"}, {"file", file}};
    r.update(frameJson(m));
    auto c = classifyFrame(m.frame);
    if (c.converselyWellFounded) {
      json witness = json::object();
      for (WorldId w = 0; w < m.worldCount(); ++w) witness[m.worldName(w)] = boundednessWitness(m, w);
      r["boundednessWitness"] = witness;
    }
    r["modelViolations"] = violationsJson(validateModel(m));
    bool inBL = c.transitive && c.irreflexive && c.converselyWellFounded;
    r["inBL"] = inBL;
    emit(r);
    return inBL ? kOk : kNo;
  }
};

struct SaturateCmd {
  std::string text;
  std::size_t depth = 4;
  std::optional<std::size_t> stages;
  std::string tracePath;

  int run() const {
    Sequent s = goalOf(text);
    Pair start{s.antecedent, s.succedent};
    VariableUniverse u(setUnion(vars(start.left), vars(start.right)));
    if (u.members().empty()) u.addFresh();
    SaturationState st;
    try {
      st = stages ? saturateStages(start, u, *stages, depth) : saturate(start, u, depth);
    } catch (const SaturationError& e) {
      emit({{"command", "saturate"}, {"sequent", print(s)}, {"verdict", "inconsistent"}, {"reason", e.what()}});
      return kNo;
    }
    json trace = traceToJson(st);
    for (const auto& entry : trace["trace"]) emit(entry);
    auto rep = checkSaturated(st);
    json r{{"command", "saturate"},
           {"sequent", print(s)},
           {"stages", st.stage},
           {"exhausted", st.exhausted},
           {"S", trace["S"]},
           {"T", trace["T"]},
           {"universe", trace["universe"]},
           {"violations", rep.processedViolations()},
           {"unprocessed", rep.unprocessed.size()},
           {"overlap", rep.overlap.size()},
           {"ok", rep.ok()}};
    if (!tracePath.empty()) {
      writeJsonFile(tracePath, trace);
      r["trace"] = tracePath;
    }
    emit(r);
    return rep.ok() ? kOk : kNo;
  }
};

struct GalleryCmd {
  std::string dir;
  std::size_t loebMax = 3;

  int run() const {
    GalleryOptions opts;
    opts.loebMax = loebMax;
    auto entries = buildGallery(opts);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) inputError("io", ec.message(), {{"dir", dir}});
    std::vector<std::filesystem::path> files;
    try {
      files = writeGallery(dir, entries);
    } catch (const std::exception& e) {
      inputError("io", e.what(), {{"dir", dir}});
    }
    bool all = true;
    for (const auto& e : entries) {
      bool ok = checkProof(e.proof).accepted;
      all = all && ok;
      emit({{"command", "gallery"},
            {"name", e.name},
            {"file", (std::filesystem::path(dir) / (e.name + ".json")).string()},
            {"conclusion", print(e.proof.conclusion)},
            {"accepted", ok}});
    }
    emit({{"command", "gallery"}, {"dir", dir}, {"entries", entries.size()}, {"accepted", all}});
    return all ? kOk : kNo;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for the predicate provability logic NQGL"};
  app.add_flag("--pretty", pretty, "Indented output instead of JSON lines");
  app.require_subcommand(1);

  ParseCmd parseCmd;
  auto* p = app.add_subcommand("parse", "Parse and print a formula or sequent");
  p->add_option("input", parseCmd.text)->required();

  CheckProofCmd checkCmd;
  auto* c = app.add_subcommand("check-proof", "Check an NQGL or GL proof file");
  c->add_option("file", checkCmd.file)->required();
  c->add_flag("--no-cut", checkCmd.noCut, "Reject cut");
  c->add_flag("--atomic-axioms", checkCmd.atomic, "Allow only atomic identity axioms");
  c->add_option("--K", checkCmd.K, "Instance bound for omega certificates");
  c->add_option("--models", checkCmd.models, "Also test the end-sequent on N random models (seed: NQGL_SEED)");

  ProveCmd proveCmd;
  auto* pr = app.add_subcommand("prove", "Decide a propositional goal or search for an NQGL proof");
  pr->add_option("goal", proveCmd.text, "Formula or sequent")->required();
  pr->add_option("--emit", proveCmd.emitPath, "Write the proof or countermodel");
  pr->add_option("--oracle-check", proveCmd.oracleWorlds, "Cross-check with brute force up to N worlds");
  pr->add_flag("--search", proveCmd.search, "Use bounded NQGL search even for propositional goals");
  pr->add_option("--depth", proveCmd.depth, "Search depth (box and all-l steps)");
  pr->add_option("--max-nodes", proveCmd.maxNodes, "Search node budget");
  pr->add_option("--sat-depth", proveCmd.satDepth, "Consistency depth for the countermodel fallback");
  pr->add_option("--height", proveCmd.height, "Largest GL witness tried by the fallback");

  CountermodelCmd cmCmd;
  auto* cm = app.add_subcommand("countermodel", "Build a canonical countermodel by saturation");
  cm->add_option("sequent", cmCmd.text)->required();
  cm->add_option("--depth", cmCmd.depth, "Consistency search depth");
  cm->add_option("--height", cmCmd.height, "Largest GL witness tried");
  cm->add_option("--levels", cmCmd.levels, "Maximal depth of the successor tree");
  cm->add_option("--emit", cmCmd.emitPath, "Write the model file");
  cm->add_option("--trace", cmCmd.tracePath, "Write the saturation trace of every world");

  ModelCheckCmd mcCmd;
  auto* mc = app.add_subcommand("model-check", "Evaluate a formula on a model file");
  mc->add_option("model", mcCmd.file)->required();
  mc->add_option("formula", mcCmd.text)->required();
  mc->add_option("--world", mcCmd.world, "Check only this world");

  FrameCheckCmd fcCmd;
  auto* fc = app.add_subcommand("frame-check", "Classify the frame of a model file");
  fc->add_option("model", fcCmd.file)->required();

  SaturateCmd satCmd;
  auto* sa = app.add_subcommand("saturate", "Saturate the pair (antecedent, succedent) and stream the trace");
  sa->add_option("sequent", satCmd.text)->required();
  sa->add_option("--depth", satCmd.depth, "Consistency search depth");
  sa->add_option("--stages", satCmd.stages, "Stop after N stages");
  sa->add_option("--trace", satCmd.tracePath, "Write the trace file");

  GalleryCmd galCmd;
  auto* g = app.add_subcommand("gallery", "Write the proof gallery and check every entry");
  g->add_option("dir", galCmd.dir)->required();
  g->add_option("--loeb-max", galCmd.loebMax, "Largest n for the Loeb premises");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit({{"error", "usage"}, {"message", e.what()}});
    return kError;
  }

  try {
    if (*p) return parseCmd.run();
    if (*c) return checkCmd.run();
    if (*pr) return proveCmd.run();
    if (*cm) return cmCmd.run();
    if (*mc) return mcCmd.run();
    if (*fc) return fcCmd.run();
    if (*sa) return satCmd.run();
    if (*g) return galCmd.run();
  } catch (const InputError& e) {
    emit(e.report);
    return kError;
  } catch (const std::exception& e) {
    emit({{"error", "internal"}, {"message", e.what()}});
    return kError;
  }
  return kError;
}
