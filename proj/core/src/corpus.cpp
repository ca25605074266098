#include "psih/corpus.hpp"

#include <array>
#include <utility>

#include "psih/errors.hpp"

namespace psih {

namespace {

// Gluing tables: triangle sides in ccw order; (e, s) means side s of edge e.
// Documents are kept byte-identical to serialize_surface output.

const char kPuncturedTorus[] = R"json({
  "name": "punctured_torus",
  "num_edges": 3,
  "triangles": [
    { "id": 0, "sides": [ { "edge": 0, "side": 0 }, { "edge": 1, "side": 0 }, { "edge": 2, "side": 0 } ] },
    { "id": 1, "sides": [ { "edge": 0, "side": 1 }, { "edge": 1, "side": 1 }, { "edge": 2, "side": 1 } ] }
  ]
}
)json";

const char kSphere3[] = R"json({
  "name": "sphere_3",
  "num_edges": 3,
  "triangles": [
    { "id": 0, "sides": [ { "edge": 0, "side": 0 }, { "edge": 1, "side": 0 }, { "edge": 2, "side": 0 } ] },
    { "id": 1, "sides": [ { "edge": 0, "side": 1 }, { "edge": 2, "side": 1 }, { "edge": 1, "side": 1 } ] }
  ]
}
)json";

const char kSphere4[] = R"json({
  "name": "sphere_4",
  "num_edges": 6,
  "triangles": [
    { "id": 0, "sides": [ { "edge": 3, "side": 0 }, { "edge": 1, "side": 0 }, { "edge": 0, "side": 0 } ] },
    { "id": 1, "sides": [ { "edge": 5, "side": 0 }, { "edge": 2, "side": 0 }, { "edge": 1, "side": 1 } ] },
    { "id": 2, "sides": [ { "edge": 4, "side": 0 }, { "edge": 0, "side": 1 }, { "edge": 2, "side": 1 } ] },
    { "id": 3, "sides": [ { "edge": 5, "side": 1 }, { "edge": 3, "side": 1 }, { "edge": 4, "side": 1 } ] }
  ]
}
)json";

const char kGenus2[] = R"json({
  "name": "genus2_1",
  "num_edges": 9,
  "triangles": [
    { "id": 0, "sides": [ { "edge": 1, "side": 0 }, { "edge": 4, "side": 0 }, { "edge": 0, "side": 0 } ] },
    { "id": 1, "sides": [ { "edge": 0, "side": 1 }, { "edge": 5, "side": 0 }, { "edge": 4, "side": 1 } ] },
    { "id": 2, "sides": [ { "edge": 1, "side": 1 }, { "edge": 6, "side": 0 }, { "edge": 5, "side": 1 } ] },
    { "id": 3, "sides": [ { "edge": 2, "side": 0 }, { "edge": 7, "side": 0 }, { "edge": 6, "side": 1 } ] },
    { "id": 4, "sides": [ { "edge": 3, "side": 0 }, { "edge": 8, "side": 0 }, { "edge": 7, "side": 1 } ] },
    { "id": 5, "sides": [ { "edge": 2, "side": 1 }, { "edge": 3, "side": 1 }, { "edge": 8, "side": 1 } ] }
  ]
}
)json";

const std::array<std::pair<const char*, const char*>, 4> kBuiltins = {{
    {"punctured_torus", kPuncturedTorus},
    {"sphere_3", kSphere3},
    {"sphere_4", kSphere4},
    {"genus2_1", kGenus2},
}};

}  // namespace

const std::vector<std::string>& builtin_surface_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, text] : kBuiltins) out.emplace_back(name);
    return out;
  }();
  return names;
}

bool is_builtin_surface(const std::string& name) {
  for (const auto& [n, text] : kBuiltins) {
    if (name == n) return true;
  }
  return false;
}

const std::string& builtin_surface_document(const std::string& name) {
  static const std::array<std::string, 4> docs = [] {
    std::array<std::string, 4> out;
    for (std::size_t i = 0; i < kBuiltins.size(); ++i) out[i] = kBuiltins[i].second;
    return out;
  }();
  for (std::size_t i = 0; i < kBuiltins.size(); ++i) {
    if (name == kBuiltins[i].first) return docs[i];
  }
  Error::io("unknown_surface", "no builtin surface named '" + name + "'");
}

Triangulation builtin_surface(const std::string& name) {
  return parse_surface(builtin_surface_document(name));
}

}  // namespace psih
