#pragma once

// Per-edge coordinates on a decorated triangulation.
//
// Assigning a decorated length l(e) to every edge induces, in each incident
// triangle, corner angles and x-invariants (see triangle_geometry). The
// deformed simplicial coordinate of an edge sums the mu-images of its two
// flanking x-invariants:
//
//     Psi_h(e) = mu(h, x_{side 0}(e)) + mu(h, x_{side 1}(e)).
//
// At h = 0 this reduces to the undeformed half-excess formula
// (b + c - a)/2 + (b' + c' - a')/2 in the two adjacent triangles.
//
// The image of l -> Psi_h is an open convex polytope cut out by three families
// of linear constraints on z in R^E:
//   (a) per edge:              z(e) < 2 * mu_infinity(h)          [h < 0 only]
//   (b) per fundamental path:  sum z(e_i) > -2 * mu_infinity(h)   [h < 0 only]
//   (c) per fundamental loop:  sum z(e_i) > 0
// For h >= 0, mu_infinity diverges and only the loop family remains.
// polytope_membership evaluates these exactly as strict inequalities.
//
// phi is a second, simpler per-edge quantity theta^{h+1} + theta'^{h+1} built
// from the two angles facing the edge; it is defined for h != -1 and is
// provided for experimentation (probe-phi in the CLI).

#include <vector>

#include <Eigen/Core>

#include "psih/surface.hpp"

namespace psih {

using LengthVector = Eigen::VectorXd;  // one decorated length per edge
using PsiVector = Eigen::VectorXd;     // one coordinate per edge

// Angles per (triangle, corner) and x-invariants per (edge, side).
struct CornerTable {
  std::vector<std::array<double, 3>> theta;  // [triangle][corner], corner i faces side i
  std::vector<std::array<double, 2>> x;      // [edge][side]
};

// Errors: "size_mismatch" if l has the wrong dimension, "nonfinite_input",
// "overflow" propagated from the per-triangle computations.
[[nodiscard]] CornerTable corner_table(const Triangulation& tri, const LengthVector& l);

// Deformed simplicial coordinate, one value per edge. Summation order is
// fixed (side 0 + side 1), so results are bitwise deterministic.
[[nodiscard]] PsiVector psi(const Triangulation& tri, double h, const LengthVector& l);

// phi_h(e) = theta^{h+1} + theta'^{h+1} over the two angles facing e.
// Errors: "phi_h_minus_one" when h = -1 (exponent degenerates).
[[nodiscard]] PsiVector phi(const Triangulation& tri, double h, const LengthVector& l);

// ---------------------------------------------------------------------------
// Image polytope membership

enum class ConstraintKind { edge_bound, path_bound, loop_positivity };

struct Violation {
  ConstraintKind kind;
  EdgePath witness;  // the edge (as a one-step path), path, or loop involved
  double lhs = 0.0;  // attained value: z(e) or the path/loop sum
  double rhs = 0.0;  // bound it must stay below (edge) or above (path/loop)
};

struct PolytopeReport {
  double h = 0.0;
  bool member = false;
  double bound = 0.0;  // 2*mu_infinity(h); +inf when h >= 0
  std::vector<Violation> violations;
};

// The enumerated constraint index sets for one triangulation. Building this
// is the expensive step (exhaustive DFS); callers doing many membership
// queries against the same triangulation should build it once and reuse it.
struct ConstraintSet {
  std::vector<EdgePath> paths;  // deduplicated directions
  std::vector<EdgePath> loops;
};

[[nodiscard]] ConstraintSet build_constraint_set(const Triangulation& tri,
                                                 std::size_t cap = kDefaultEnumerationCap);

// Strict membership test of z in the image polytope. A positive slack
// tightens every constraint: each must hold with margin > slack. The report
// lists every violated constraint with its witness.
// Errors: "size_mismatch", "nonfinite_input", "enumeration_cap_exceeded".
[[nodiscard]] PolytopeReport polytope_membership(const Triangulation& tri, double h,
                                                 const Eigen::VectorXd& z, double slack = 0.0);
[[nodiscard]] PolytopeReport polytope_membership(const Triangulation& tri, double h,
                                                 const Eigen::VectorXd& z,
                                                 const ConstraintSet& constraints,
                                                 double slack = 0.0);

// ---------------------------------------------------------------------------
// Boundary probe

// Psi evaluated along l0 + scale * direction for scale = 0, step, 2*step, ...
// (steps+1 samples). min_slack is the margin of the tightest membership
// constraint at that sample (positive iff inside the polytope).
struct ProbeSample {
  double scale = 0.0;
  PsiVector z;
  double min_slack = 0.0;
};

[[nodiscard]] std::vector<ProbeSample> boundary_probe(const Triangulation& tri, double h,
                                                      const LengthVector& l0,
                                                      const LengthVector& direction, int steps,
                                                      double step = 0.5);

}  // namespace psih
