#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "nqgl/kripke.hpp"

namespace nqgl {

class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model file format:
///   {"worlds": [w, ...], "edges": [[w, w'], ...],
///    "domains": {w: [d, ...]}, "interp": {w: {P: [[d, ...], ...]}}}
/// World and element names may be strings or integers. A 0-ary predicate is
/// true at w when its tuple list contains the empty tuple.
KripkeModel modelFromJson(const nlohmann::json& j);
nlohmann::json modelToJson(const KripkeModel& m);

KripkeModel loadModel(const std::string& path);

}  // namespace nqgl
