#pragma once

// Delaunay property and Ptolemy flips.
//
// A decorated metric (triangulation + lengths) is Delaunay when Psi_h is
// positive on every edge. The sign of Psi_h(e) equals the sign of the sum of
// the two x-invariants flanking e and is therefore the same for every h;
// delaunay_check reports the per-edge data at the h it was asked about.
//
// ptolemy_flip replaces the diagonal of the quadrilateral around an edge and
// updates its length by the Ptolemy relation on lambda-lengths
// (lambda = e^{l/2}):
//
//     lambda_e' = (lambda_a lambda_c + lambda_b lambda_d) / lambda_e,
//
// with (a, b, c, d) the quadrilateral's sides in cyclic order. flip_to_delaunay
// greedily flips the lowest-index edge with Psi_h <= 0 until the metric is
// Delaunay or the flip budget runs out.

#include <vector>

#include "psih/coordinates.hpp"
#include "psih/surface.hpp"

namespace psih {

struct EdgeDelaunay {
  int edge = 0;
  double x0 = 0.0;   // x-invariant on side 0
  double x1 = 0.0;   // x-invariant on side 1
  double psi = 0.0;  // Psi_h(edge)
  int sign = 0;      // sign of psi: -1, 0, +1
};

struct DelaunayVerdict {
  bool is_delaunay = false;  // all edges strictly positive
  std::vector<EdgeDelaunay> per_edge;
};

[[nodiscard]] DelaunayVerdict delaunay_check(const Triangulation& tri, double h,
                                             const LengthVector& l);

// One diagonal flip with the Ptolemy length update (performed in log space,
// so no lambda is ever materialized). Errors: "flip_inadmissible" from the
// combinatorial flip; "size_mismatch"/"nonfinite_input" on bad lengths.
struct FlipResult {
  Triangulation triangulation;
  LengthVector lengths;
  double new_length = 0.0;  // the flipped edge's updated length
};

[[nodiscard]] FlipResult ptolemy_flip(const Triangulation& tri, const LengthVector& l, int edge);

struct FlipStep {
  int edge = 0;
  double psi_before = 0.0;  // Psi_h on the edge that was flipped
  double new_length = 0.0;
};

struct FlipRecord {
  std::vector<FlipStep> flips;
  Triangulation final_triangulation;
  LengthVector final_lengths;
  bool completed = false;  // false when max_flips ran out first
  DelaunayVerdict final_verdict;
};

// Greedy flip-to-Delaunay. max_flips < 0 selects the default budget of
// 10 * E^2. Exhausting the budget is not an error: the partial record is
// returned with completed = false.
[[nodiscard]] FlipRecord flip_to_delaunay(const Triangulation& tri, double h,
                                          const LengthVector& l, int max_flips = -1);

}  // namespace psih
