#pragma once

// Internal adaptive quadrature wrapper.
//
// Definite integrals in the library go through this one entry point: an
// adaptive Gauss-Kronrod (G7/K15) rule with depth-limited bisection.
//
// Tolerance and depth are chosen together. The Kronrod-minus-Gauss error
// estimate bottoms out near 1e-15 relative in double precision; asking for
// less makes every panel "fail" and the recursion expand a full binary tree
// (2^depth panels) even on smooth integrands. 1e-12 stays above that floor
// (the rule itself typically delivers ~1e-15 on the analytic kernels used
// here), and depth 12 caps the worst case at 4096 panels so no input can turn
// an integral into a multi-second stall. Callers keep integrands finite and
// split intervals of large dynamic range (overflow guards and segmentation
// live at the call sites, where the integrand's growth is understood).

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <utility>

namespace psih::detail {

inline constexpr double kQuadRelTol = 1e-12;
inline constexpr int kQuadMaxDepth = 12;

template <typename F>
double integrate(F&& f, double a, double b) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      std::forward<F>(f), a, b, kQuadMaxDepth, kQuadRelTol);
}

}  // namespace psih::detail
