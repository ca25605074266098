#include "psih/surface.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <utility>

#include <json.hpp>

namespace psih {
namespace {

using nlohmann::json;

// Distinct edges reachable from triangle t, each with the triangle on the
// other side (t itself across a self-glued edge), sorted by edge index.
std::vector<std::pair<int, int>> crossing_steps(const Triangulation& tri, int t) {
  std::vector<std::pair<int, int>> steps;
  for (int pos = 0; pos < 3; ++pos) {
    const EdgeSide side = tri.side_at({t, pos});
    bool seen = false;
    for (const auto& s : steps) seen = seen || s.first == side.edge;
    if (seen) continue;  // self-glued edge listed twice in this triangle
    const Slot other = tri.opposite_slot(side);
    steps.emplace_back(side.edge, other.tri);
  }
  std::sort(steps.begin(), steps.end());
  return steps;
}

// Flattened (e_1, t_1, ..., e_n, t_n) for a based loop (t_0,...,t_n = t_0).
std::vector<int> flatten_loop(const std::vector<int>& ts, const std::vector<int>& es) {
  const std::size_t n = es.size();
  std::vector<int> flat(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    flat[2 * i] = es[i];
    flat[2 * i + 1] = ts[i + 1];
  }
  return flat;
}

// Lexicographically smallest flattening over all rotations and the reversal.
std::vector<int> canonical_loop(const std::vector<int>& ts, const std::vector<int>& es) {
  const std::size_t n = es.size();
  std::vector<int> best = flatten_loop(ts, es);
  auto consider = [&](const std::vector<int>& flat) {
    std::vector<int> rotated(2 * n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t i = 0; i < 2 * n; ++i) rotated[i] = flat[(2 * r + i) % (2 * n)];
      if (rotated < best) best = rotated;
    }
  };
  consider(flatten_loop(ts, es));
  std::vector<int> ts_rev(ts.rbegin(), ts.rend());
  std::vector<int> es_rev(es.rbegin(), es.rend());
  consider(flatten_loop(ts_rev, es_rev));
  return best;
}

EdgePath loop_from_flat(const std::vector<int>& flat) {
  const std::size_t n = flat.size() / 2;
  EdgePath path;
  path.is_loop = true;
  path.edges.resize(n);
  path.triangles.resize(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    path.edges[i] = flat[2 * i];
    path.triangles[i + 1] = flat[2 * i + 1];
  }
  path.triangles[0] = path.triangles[n];
  return path;
}

struct EnumerationBudget {
  std::size_t cap;
  std::size_t visited = 0;
  void spend() {
    if (++visited > cap) {
      Error::domain("enumeration_cap_exceeded",
                    "edge path enumeration exceeded the cap of " + std::to_string(cap) +
                        " visited states");
    }
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Triangulation construction and validation

Triangulation::Triangulation(std::string name, int num_edges, std::vector<Triangle> triangles)
    : name_(std::move(name)), num_edges_(num_edges), triangles_(std::move(triangles)) {
  const int F = static_cast<int>(triangles_.size());
  if (num_edges_ < 1 || F < 1) {
    Error::domain("edge_count_mismatch", "a triangulation needs at least one edge and triangle");
  }
  if (3 * F != 2 * num_edges_) {
    Error::domain("edge_count_mismatch",
                  "3F = 2E violated: F = " + std::to_string(F) +
                      ", E = " + std::to_string(num_edges_));
  }
  slot_of_.assign(num_edges_, {Slot{-1, -1}, Slot{-1, -1}});
  for (int t = 0; t < F; ++t) {
    for (int pos = 0; pos < 3; ++pos) {
      const EdgeSide side = triangles_[t].sides[pos];
      if (side.edge < 0 || side.edge >= num_edges_ || (side.side != 0 && side.side != 1)) {
        Error::domain("invalid_side_reference",
                      "triangle " + std::to_string(t) + " references edge " +
                          std::to_string(side.edge) + " side " + std::to_string(side.side));
      }
      Slot& entry = slot_of_[side.edge][side.side];
      if (entry.tri >= 0) {
        Error::domain("duplicate_edge_side", "edge " + std::to_string(side.edge) + " side " +
                                                 std::to_string(side.side) +
                                                 " is referenced twice");
      }
      entry = Slot{t, pos};
    }
  }
  for (int e = 0; e < num_edges_; ++e) {
    for (int s = 0; s < 2; ++s) {
      if (slot_of_[e][s].tri < 0) {
        Error::domain("unreferenced_edge_side",
                      "edge " + std::to_string(e) + " side " + std::to_string(s) +
                          " is not referenced by any triangle");
      }
    }
  }
  // Connectivity across shared edges.
  std::vector<char> reached(F, 0);
  std::queue<int> queue;
  queue.push(0);
  reached[0] = 1;
  int count = 1;
  while (!queue.empty()) {
    const int t = queue.front();
    queue.pop();
    for (int pos = 0; pos < 3; ++pos) {
      const int t2 = opposite_slot(triangles_[t].sides[pos]).tri;
      if (!reached[t2]) {
        reached[t2] = 1;
        ++count;
        queue.push(t2);
      }
    }
  }
  if (count != F) {
    Error::domain("disconnected_surface", "triangulation is not connected");
  }
}

Slot Triangulation::slot(EdgeSide side) const {
  return slot_of_[side.edge][side.side];
}

Slot Triangulation::opposite_slot(EdgeSide side) const {
  return slot_of_[side.edge][1 - side.side];
}

// ---------------------------------------------------------------------------
// Documents

Triangulation parse_surface(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    Error::io("malformed_document", std::string("surface document is not valid JSON: ") + e.what());
  }
  try {
    const std::string name = doc.at("name").get<std::string>();
    const int num_edges = doc.at("num_edges").get<int>();
    const json& tris = doc.at("triangles");
    if (!tris.is_array() || tris.empty()) {
      Error::io("malformed_document", "\"triangles\" must be a non-empty array");
    }
    const int F = static_cast<int>(tris.size());
    std::vector<Triangle> triangles(F);
    std::vector<char> id_seen(F, 0);
    for (const json& item : tris) {
      const int id = item.at("id").get<int>();
      if (id < 0 || id >= F || id_seen[id]) {
        Error::io("malformed_document", "triangle ids must be exactly 0..F-1, each once");
      }
      id_seen[id] = 1;
      const json& sides = item.at("sides");
      if (!sides.is_array() || sides.size() != 3) {
        Error::io("malformed_document", "each triangle needs exactly 3 sides");
      }
      for (int k = 0; k < 3; ++k) {
        triangles[id].sides[k] =
            EdgeSide{sides[k].at("edge").get<int>(), sides[k].at("side").get<int>()};
      }
    }
    return Triangulation(name, num_edges, std::move(triangles));
  } catch (const json::exception& e) {
    Error::io("malformed_document", std::string("surface document has wrong shape: ") + e.what());
  }
}

std::string serialize_surface(const Triangulation& tri) {
  std::string out;
  out += "{\n";
  out += "  \"name\": \"" + tri.name() + "\",\n";
  out += "  \"num_edges\": " + std::to_string(tri.num_edges()) + ",\n";
  out += "  \"triangles\": [\n";
  for (int t = 0; t < tri.num_triangles(); ++t) {
    out += "    { \"id\": " + std::to_string(t) + ", \"sides\": [ ";
    for (int pos = 0; pos < 3; ++pos) {
      const EdgeSide s = tri.triangles()[t].sides[pos];
      out += "{ \"edge\": " + std::to_string(s.edge) + ", \"side\": " + std::to_string(s.side) +
             " }";
      if (pos < 2) out += ", ";
    }
    out += " ] }";
    if (t + 1 < tri.num_triangles()) out += ",";
    out += "\n";
  }
  out += "  ]\n";
  out += "}\n";
  return out;
}

// ---------------------------------------------------------------------------
// Vertices

std::vector<std::vector<Corner>> vertex_orbits(const Triangulation& tri) {
  const int F = tri.num_triangles();
  // Rotating around the vertex at corner (t, i): cross side i+1 (one of the
  // two sides meeting the corner); the glued slot (t', j') puts the shared
  // vertex at corner j'+1 of t' (glued sides are traversed oppositely).
  auto next_around = [&](Corner c) -> Corner {
    const Slot glued = tri.opposite_slot(tri.side_at({c.tri, (c.corner + 1) % 3}));
    return Corner{glued.tri, (glued.pos + 1) % 3};
  };
  std::vector<char> used(static_cast<std::size_t>(F) * 3, 0);
  std::vector<std::vector<Corner>> orbits;
  for (int t = 0; t < F; ++t) {
    for (int i = 0; i < 3; ++i) {
      if (used[static_cast<std::size_t>(t) * 3 + i]) continue;
      std::vector<Corner> orbit;
      Corner c{t, i};
      do {
        used[static_cast<std::size_t>(c.tri) * 3 + c.corner] = 1;
        orbit.push_back(c);
        c = next_around(c);
      } while (!(c == Corner{t, i}));
      orbits.push_back(std::move(orbit));
    }
  }
  return orbits;
}

// ---------------------------------------------------------------------------
// Edge paths and loops

void validate_path(const Triangulation& tri, const EdgePath& path) {
  const std::size_t n = path.edges.size();
  if (n < 1 || path.triangles.size() != n + 1) {
    Error::domain("invalid_path", "an edge path needs n >= 1 edges and n+1 triangles");
  }
  for (int t : path.triangles) {
    if (t < 0 || t >= tri.num_triangles()) {
      Error::domain("invalid_path", "triangle index out of range");
    }
  }
  std::vector<int> uses(tri.num_edges(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const int e = path.edges[i];
    if (e < 0 || e >= tri.num_edges()) {
      Error::domain("invalid_path", "edge index out of range");
    }
    ++uses[e];
    const Slot s0 = tri.slot({e, 0});
    const Slot s1 = tri.slot({e, 1});
    const int a = path.triangles[i];
    const int b = path.triangles[i + 1];
    const bool adjacent = (a == s0.tri && b == s1.tri) || (a == s1.tri && b == s0.tri);
    if (!adjacent) {
      Error::domain("invalid_path", "step " + std::to_string(i) + " does not cross edge " +
                                        std::to_string(e));
    }
    if (i + 1 < n && path.edges[i + 1] == e) {
      Error::domain("invalid_path", "consecutive edges must differ");
    }
  }
  if (path.is_loop) {
    if (path.triangles.front() != path.triangles.back()) {
      Error::domain("invalid_path", "a loop must end at its starting triangle");
    }
    if (n > 0 && path.edges.back() == path.edges.front()) {
      Error::domain("invalid_path", "a loop's last edge must differ from its first (cyclically)");
    }
    for (int e = 0; e < tri.num_edges(); ++e) {
      if (uses[e] > 2) {
        Error::domain("invalid_path", "a fundamental loop uses each edge at most twice");
      }
    }
  } else {
    for (int e = 0; e < tri.num_edges(); ++e) {
      if (uses[e] > 1) {
        Error::domain("invalid_path", "a fundamental path uses each edge at most once");
      }
    }
  }
}

std::vector<EdgePath> enumerate_fundamental_paths(const Triangulation& tri, bool dedup,
                                                  std::size_t cap) {
  const int F = tri.num_triangles();
  std::vector<std::vector<std::pair<int, int>>> steps(F);
  for (int t = 0; t < F; ++t) steps[t] = crossing_steps(tri, t);

  EnumerationBudget budget{cap};
  std::vector<EdgePath> out;
  std::vector<char> used(tri.num_edges(), 0);
  std::vector<int> ts, es;

  auto keep = [&]() {
    if (dedup) {
      // Keep only the direction whose flattening is not larger than its
      // reverse, so each undirected path appears once.
      const std::size_t n = es.size();
      for (std::size_t i = 0; i <= 2 * n; ++i) {
        const int fwd = (i % 2 == 0) ? ts[i / 2] : es[i / 2];
        const std::size_t ri = 2 * n - i;
        const int rev = (ri % 2 == 0) ? ts[ri / 2] : es[(ri - 1) / 2];
        if (fwd < rev) break;
        if (fwd > rev) return;
      }
    }
    out.push_back(EdgePath{ts, es, false});
  };

  auto dfs = [&](auto&& self, int t) -> void {
    for (const auto& [e, t2] : steps[t]) {
      if (used[e]) continue;
      budget.spend();
      used[e] = 1;
      ts.push_back(t2);
      es.push_back(e);
      keep();
      self(self, t2);
      es.pop_back();
      ts.pop_back();
      used[e] = 0;
    }
  };
  for (int t0 = 0; t0 < F; ++t0) {
    ts.assign(1, t0);
    es.clear();
    dfs(dfs, t0);
  }
  return out;
}

std::vector<EdgePath> enumerate_fundamental_loops(const Triangulation& tri, std::size_t cap) {
  const int F = tri.num_triangles();
  std::vector<std::vector<std::pair<int, int>>> steps(F);
  for (int t = 0; t < F; ++t) steps[t] = crossing_steps(tri, t);

  EnumerationBudget budget{cap};
  std::set<std::vector<int>> canonical;
  std::vector<int> uses(tri.num_edges(), 0);
  std::vector<int> ts, es;
  const std::size_t max_len = 2 * static_cast<std::size_t>(tri.num_edges());

  auto dfs = [&](auto&& self, int t0, int t) -> void {
    for (const auto& [e, t2] : steps[t]) {
      if (uses[e] >= 2) continue;
      if (!es.empty() && es.back() == e) continue;
      budget.spend();
      ++uses[e];
      ts.push_back(t2);
      es.push_back(e);
      if (t2 == t0 && es.front() != es.back()) {
        canonical.insert(canonical_loop(ts, es));
      }
      if (es.size() < max_len) self(self, t0, t2);
      es.pop_back();
      ts.pop_back();
      --uses[e];
    }
  };
  for (int t0 = 0; t0 < F; ++t0) {
    ts.assign(1, t0);
    es.clear();
    dfs(dfs, t0, t0);
  }
  std::vector<EdgePath> out;
  out.reserve(canonical.size());
  for (const auto& flat : canonical) out.push_back(loop_from_flat(flat));
  return out;
}

// ---------------------------------------------------------------------------
// Flips and isomorphism

Triangulation flip_combinatorial(const Triangulation& tri, int edge) {
  if (edge < 0 || edge >= tri.num_edges()) {
    Error::domain("invalid_side_reference", "flip edge index out of range");
  }
  const Slot s0 = tri.slot({edge, 0});
  const Slot s1 = tri.slot({edge, 1});
  if (s0.tri == s1.tri) {
    Error::domain("flip_inadmissible",
                  "edge " + std::to_string(edge) +
                      " is the interior edge of a self-folded triangle; no quadrilateral to flip");
  }
  // Quadrilateral around the diagonal, counterclockwise: P, Q from the side-0
  // triangle, U, V from the side-1 triangle. Opposite pairs are (P,U), (Q,V).
  const auto& t1 = tri.triangles()[s0.tri];
  const auto& t2 = tri.triangles()[s1.tri];
  const EdgeSide P = t1.sides[(s0.pos + 1) % 3];
  const EdgeSide Q = t1.sides[(s0.pos + 2) % 3];
  const EdgeSide U = t2.sides[(s1.pos + 1) % 3];
  const EdgeSide V = t2.sides[(s1.pos + 2) % 3];

  std::vector<Triangle> triangles = tri.triangles();
  triangles[s0.tri].sides = {EdgeSide{edge, 0}, Q, U};
  triangles[s1.tri].sides = {EdgeSide{edge, 1}, V, P};
  return Triangulation(tri.name(), tri.num_edges(), std::move(triangles));
}

std::optional<Isomorphism> find_isomorphism(const Triangulation& a, const Triangulation& b) {
  const int F = a.num_triangles();
  if (F != b.num_triangles() || a.num_edges() != b.num_edges()) return std::nullopt;

  for (int target0 = 0; target0 < F; ++target0) {
    for (int rot0 = 0; rot0 < 3; ++rot0) {
      std::vector<int> tri_map(F, -1), tri_rot(F, -1), edge_map(a.num_edges(), -1);
      std::vector<int> side_flip(a.num_edges(), -1);  // 0: side kept, 1: side swapped
      bool ok = true;
      std::queue<int> queue;
      tri_map[0] = target0;
      tri_rot[0] = rot0;
      queue.push(0);
      while (ok && !queue.empty()) {
        const int t = queue.front();
        queue.pop();
        for (int pos = 0; pos < 3 && ok; ++pos) {
          const EdgeSide sa = a.side_at({t, pos});
          const EdgeSide sb = b.side_at({tri_map[t], (pos + tri_rot[t]) % 3});
          const int flip = sa.side == sb.side ? 0 : 1;
          if (edge_map[sa.edge] == -1) {
            edge_map[sa.edge] = sb.edge;
            side_flip[sa.edge] = flip;
          } else if (edge_map[sa.edge] != sb.edge || side_flip[sa.edge] != flip) {
            ok = false;
            break;
          }
          const Slot na = a.opposite_slot(sa);
          const Slot nb = b.opposite_slot(sb);
          const int want_rot = (nb.pos - na.pos + 3) % 3;
          if (tri_map[na.tri] == -1) {
            tri_map[na.tri] = nb.tri;
            tri_rot[na.tri] = want_rot;
            queue.push(na.tri);
          } else if (tri_map[na.tri] != nb.tri || tri_rot[na.tri] != want_rot) {
            ok = false;
          }
        }
      }
      if (!ok) continue;
      std::vector<char> tri_hit(F, 0), edge_hit(a.num_edges(), 0);
      for (int t = 0; t < F && ok; ++t) {
        if (tri_map[t] < 0 || tri_hit[tri_map[t]]) ok = false;
        else tri_hit[tri_map[t]] = 1;
      }
      for (int e = 0; e < a.num_edges() && ok; ++e) {
        if (edge_map[e] < 0 || edge_hit[edge_map[e]]) ok = false;
        else edge_hit[edge_map[e]] = 1;
      }
      if (ok) return Isomorphism{std::move(tri_map), std::move(edge_map)};
    }
  }
  return std::nullopt;
}

bool isomorphic(const Triangulation& a, const Triangulation& b) {
  return find_isomorphism(a, b).has_value();
}

}  // namespace psih
