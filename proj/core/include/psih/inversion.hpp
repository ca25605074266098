#pragma once

// Inversion of the deformed simplicial coordinate.
//
// In the variables u(e) = u_of_l(h, l(e)), the map u -> Psi_h is the gradient
// of a strictly concave potential (a sum of per-triangle terms), with
// negative definite Jacobian assembled from the per-triangle Hessians. Given
// a target z in the image polytope, invert_psi runs a damped Newton ascent:
//
//     solve  A s = -(Psi_h(l(u)) - z),   A = assemble_hessian,
//
// globalized by a line search on the potential's directional slope. Along the
// Newton direction s the slope m(t) = s . (Psi_h(u + t s) - z) is strictly
// decreasing in t (concavity), positive at t = 0, and zero at the
// one-dimensional maximum of the potential. A trial step is accepted once
// |m(t)| <= slope_fraction * m(0) -- the full step qualifies in the quadratic
// convergence regime -- and is otherwise located by bisection. Searching on
// the slope rather than on ||Psi_h - z|| matters near the image boundary,
// where the residual norm is a badly scaled merit and damped steps stall.
// For h > 0 the u-variables live in (u_min(h), inf)^E and steps obey a
// fraction-to-the-boundary rule: each u stays above
// u_min + 0.01 * (u_prev - u_min).

#include <vector>

#include <Eigen/Core>

#include "psih/coordinates.hpp"
#include "psih/surface.hpp"

namespace psih {

struct SolveOptions {
  double tol = 1e-10;             // sup-norm residual target on Psi_h - z
  int max_iter = 200;
  double slope_fraction = 0.1;    // line search accepts once |slope| falls to this fraction
  LengthVector initial_l;         // empty = start from l == 0
  bool check_membership = true;   // reject targets outside the image polytope

  // Optional precomputed constraints for the membership check; useful when
  // solving many targets on one triangulation. Not owned.
  const ConstraintSet* membership_constraints = nullptr;
};

struct IterationRecord {
  double residual_sup = 0.0;  // ||Psi_h - z||_inf after the iteration
  double residual_l2 = 0.0;   // ||Psi_h - z||_2 after the iteration
  double step = 0.0;          // accepted step length in [0, 1]
};

struct SolveResult {
  LengthVector l;             // best iterate (the solution when converged)
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;      // final sup-norm residual
  std::vector<IterationRecord> trace;
};

// Negative definite E x E Jacobian d(Psi_h)/d(u) at l: per-triangle Hessians
// scattered by edge index (a triangle with a self-glued edge contributes all
// four of its slot pairs to that diagonal entry).
// Errors: "size_mismatch", "nonfinite_input", "overflow".
[[nodiscard]] Eigen::MatrixXd assemble_hessian(const Triangulation& tri, double h,
                                               const LengthVector& l);

// Solves Psi_h(l) = z. Errors: "not_in_polytope" (when check_membership is
// set and z fails the strict membership test), "linear_solve_failure".
// Exhausting max_iter is not an error: the best iterate is returned with
// converged = false.
[[nodiscard]] SolveResult invert_psi(const Triangulation& tri, double h, const PsiVector& z,
                                     const SolveOptions& options = {});

}  // namespace psih
