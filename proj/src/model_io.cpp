#include "nqgl/model_io.hpp"

#include <fstream>

namespace nqgl {

using nlohmann::json;

namespace {

std::string nameOf(const json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ModelFormatError(std::string(what) + " names must be strings or integers, got " + j.dump());
}

WorldId worldOf(const KripkeModel& m, const std::string& name) {
  auto w = m.findWorld(name);
  if (!w) throw ModelFormatError("unknown world '" + name + "'");
  return *w;
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ModelFormatError(std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace

KripkeModel modelFromJson(const json& j) {
  if (!j.is_object()) throw ModelFormatError("model must be a JSON object");
  KripkeModel m;
  const auto& worlds = field(j, "worlds");
  if (!worlds.is_array() || worlds.empty()) throw ModelFormatError("'worlds' must be a non-empty array");
  for (const auto& w : worlds) {
    try {
      m.addWorld(nameOf(w, "world"));
    } catch (const std::invalid_argument& e) {
      throw ModelFormatError(e.what());
    }
  }
  if (auto it = j.find("edges"); it != j.end()) {
    if (!it->is_array()) throw ModelFormatError("'edges' must be an array");
    for (const auto& e : *it) {
      if (!e.is_array() || e.size() != 2) throw ModelFormatError("edge must be a pair, got " + e.dump());
      m.frame.addEdge(worldOf(m, nameOf(e[0], "world")), worldOf(m, nameOf(e[1], "world")));
    }
  }
  if (auto it = j.find("domains"); it != j.end()) {
    if (!it->is_object()) throw ModelFormatError("'domains' must be an object keyed by world");
    for (const auto& [w, elems] : it->items()) {
      WorldId id = worldOf(m, w);
      if (!elems.is_array()) throw ModelFormatError("domain of '" + w + "' must be an array");
      for (const auto& d : elems) m.addToDomain(id, m.element(nameOf(d, "element")));
    }
  }
  if (auto it = j.find("interp"); it != j.end()) {
    if (!it->is_object()) throw ModelFormatError("'interp' must be an object keyed by world");
    for (const auto& [w, table] : it->items()) {
      WorldId id = worldOf(m, w);
      if (!table.is_object()) throw ModelFormatError("interpretation at '" + w + "' must be an object");
      for (const auto& [p, tuples] : table.items()) {
        if (!tuples.is_array()) throw ModelFormatError("extension of " + p + " must be an array of tuples");
        for (const auto& t : tuples) {
          if (!t.is_array()) throw ModelFormatError("tuple of " + p + " must be an array, got " + t.dump());
          Tuple tuple;
          for (const auto& d : t) tuple.push_back(m.element(nameOf(d, "element")));
          PredicateSymbol symbol{p, tuple.size()};
          m.setTrue(id, symbol, std::move(tuple));
        }
      }
    }
  }
  return m;
}

json modelToJson(const KripkeModel& m) {
  json worlds = json::array();
  json edges = json::array();
  json domains = json::object();
  json interp = json::object();
  for (WorldId w = 0; w < m.worldCount(); ++w) {
    const auto& name = m.worldName(w);
    worlds.push_back(name);
    for (WorldId v : m.frame.successors(w)) edges.push_back({name, m.worldName(v)});
    json dom = json::array();
    for (Element e : m.domain(w)) dom.push_back(m.elementName(e));
    domains[name] = dom;
    json table = json::object();
    for (const auto& [symbol, tuples] : m.interpretation(w)) {
      json ext = json::array();
      for (const auto& t : tuples) {
        json tuple = json::array();
        for (Element e : t) tuple.push_back(m.elementName(e));
        ext.push_back(tuple);
      }
      table[symbol.name] = ext;
    }
    interp[name] = table;
  }
  return json{{"worlds", worlds}, {"edges", edges}, {"domains", domains}, {"interp", interp}};
}

KripkeModel loadModel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelFormatError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ModelFormatError(path + ": " + e.what());
  }
  return modelFromJson(j);
}

}  // namespace nqgl
