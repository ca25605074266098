#pragma once

// Combinatorics of ideal triangulations of punctured surfaces.
//
// A triangulation is a set of abstract oriented triangles glued along edges.
// Each of the E edges has two sides, (e, 0) and (e, 1), and every side is
// referenced by exactly one triangle-side slot; self-gluing (both sides of an
// edge on one triangle) is allowed. Triangles list their sides in
// counterclockwise cyclic order, and corner i is the corner opposite side i.
// Glued sides are traversed in opposite directions by the two incident
// triangles, so every valid document describes an oriented surface; the
// punctures are the vertex orbits recovered by rotating corners around the
// gluing.
//
// Beyond construction and validation this module provides: vertex orbits,
// exhaustive enumeration of fundamental edge paths and loops (the index sets
// for the image-polytope constraints), the combinatorial diagonal flip, and a
// structural isomorphism test used to compare triangulations up to relabeling.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "psih/errors.hpp"

namespace psih {

// One side of an edge: side is 0 or 1.
struct EdgeSide {
  int edge = 0;
  int side = 0;
  friend bool operator==(const EdgeSide&, const EdgeSide&) = default;
};

// A triangle's three sides in counterclockwise cyclic order. Side j runs from
// corner j+1 to corner j+2 (mod 3); corner j faces side j.
struct Triangle {
  std::array<EdgeSide, 3> sides{};
};

// Location of an edge side inside the triangulation: triangle index and the
// position (0..2) of the slot within that triangle.
struct Slot {
  int tri = 0;
  int pos = 0;
  friend bool operator==(const Slot&, const Slot&) = default;
};

// A corner of a triangle; corner i faces side i.
struct Corner {
  int tri = 0;
  int corner = 0;
  friend bool operator==(const Corner&, const Corner&) = default;
  friend auto operator<=>(const Corner&, const Corner&) = default;
};

class Triangulation {
 public:
  // Validates and builds the side-lookup tables. Errors (all domain):
  // "edge_count_mismatch" (3F != 2E), "invalid_side_reference",
  // "duplicate_edge_side", "unreferenced_edge_side", "disconnected_surface".
  Triangulation(std::string name, int num_edges, std::vector<Triangle> triangles);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] int num_edges() const noexcept { return num_edges_; }
  [[nodiscard]] int num_triangles() const noexcept { return static_cast<int>(triangles_.size()); }
  [[nodiscard]] const std::vector<Triangle>& triangles() const noexcept { return triangles_; }

  // Slot holding side (e, s).
  [[nodiscard]] Slot slot(EdgeSide side) const;
  // Slot holding the opposite side of the same edge.
  [[nodiscard]] Slot opposite_slot(EdgeSide side) const;
  [[nodiscard]] EdgeSide side_at(Slot s) const { return triangles_[s.tri].sides[s.pos]; }

 private:
  std::string name_;
  int num_edges_ = 0;
  std::vector<Triangle> triangles_;
  std::vector<std::array<Slot, 2>> slot_of_;  // indexed [edge][side]
};

// ---------------------------------------------------------------------------
// Documents

// Parses the surface document format:
//   { "name": str, "num_edges": int,
//     "triangles": [ { "id": int, "sides": [ {"edge": int, "side": 0|1} x3 ] } ] }
// Triangle ids must be exactly 0..F-1 (any listing order). Shape errors raise
// io Error("malformed_document"); semantic errors raise the constructor's
// domain errors.
[[nodiscard]] Triangulation parse_surface(const std::string& text);

// Serializes back to the document format (stable key order, deterministic).
[[nodiscard]] std::string serialize_surface(const Triangulation& tri);

// ---------------------------------------------------------------------------
// Vertices

// Orbits of corners under rotation around each vertex (one orbit per
// puncture). Deterministic: orbits sorted by smallest member, each orbit
// listed starting from its smallest corner, following the rotation.
[[nodiscard]] std::vector<std::vector<Corner>> vertex_orbits(const Triangulation& tri);

// ---------------------------------------------------------------------------
// Edge paths and loops

// An edge path (t_0, e_1, t_1, ..., e_n, t_n): consecutive triangles share the
// connecting edge, and consecutive edges differ. A fundamental path uses each
// edge at most once; a fundamental loop closes up (t_n = t_0), uses each edge
// at most twice, and has cyclically distinct consecutive edges (including the
// wrap-around e_n != e_1).
struct EdgePath {
  std::vector<int> triangles;  // n+1 entries; for loops, front() == back()
  std::vector<int> edges;      // n entries
  bool is_loop = false;
};

// Checks the EdgePath invariants against a triangulation; throws domain
// Error("invalid_path") with a description on the first violation.
void validate_path(const Triangulation& tri, const EdgePath& path);

inline constexpr std::size_t kDefaultEnumerationCap = 10'000'000;

// All fundamental edge paths, depth-first from every starting triangle.
// Direction-reversed duplicates are included unless dedup is set (a
// palindromic pair counts once). Deterministic order. Throws domain
// Error("enumeration_cap_exceeded") if the search visits more than cap states.
[[nodiscard]] std::vector<EdgePath> enumerate_fundamental_paths(
    const Triangulation& tri, bool dedup = false, std::size_t cap = kDefaultEnumerationCap);

// All fundamental edge loops, one representative per equivalence class under
// rotation and reversal: the lexicographically smallest flattened
// (e_1, t_1, ..., e_n, t_n) sequence. Deterministic (sorted) order.
[[nodiscard]] std::vector<EdgePath> enumerate_fundamental_loops(
    const Triangulation& tri, std::size_t cap = kDefaultEnumerationCap);

// ---------------------------------------------------------------------------
// Flips and isomorphism

// Replaces edge e (the diagonal of the quadrilateral formed by its two
// incident triangles) with the other diagonal. The new diagonal keeps index e.
// Errors: "flip_inadmissible" if both sides of e lie in one triangle (the
// interior edge of a self-folded triangle has no quadrilateral to flip).
[[nodiscard]] Triangulation flip_combinatorial(const Triangulation& tri, int edge);

// Orientation-preserving relabeling a -> b, if one exists: a bijection of
// triangles (with cyclic slot rotations) inducing a bijection of edges that
// maps the gluing of a onto the gluing of b.
struct Isomorphism {
  std::vector<int> tri_map;   // triangle index in a -> triangle index in b
  std::vector<int> edge_map;  // edge index in a -> edge index in b
};
[[nodiscard]] std::optional<Isomorphism> find_isomorphism(const Triangulation& a,
                                                          const Triangulation& b);
[[nodiscard]] bool isomorphic(const Triangulation& a, const Triangulation& b);

}  // namespace psih
