#pragma once

// Scalar building blocks for a single decorated ideal triangle.
//
// A decorated ideal triangle with edge lengths (l1, l2, l3) carries a
// generalized angle at each corner,
//
//     theta_i = exp((l_i - l_j - l_k) / 2),
//
// indexed so that corner i faces edge i. Each edge gets an x-invariant
//
//     x_i = (theta_j + theta_k - theta_i) / 2,
//
// the half-excess of the two adjacent angles over the opposite one. A real
// deformation parameter h enters through two kernels,
//
//     mu(h, x) = int_0^x exp(h t^2) dt        (edge coordinate kernel),
//     u(h, l)  = int_0^l exp(-h e^{-t}) dt    (length reparameterization),
//
// chosen so that the per-triangle map l -> (mu(x_1), mu(x_2), mu(x_3)) becomes
// the gradient of a concave potential in the u-variables; triangle_hessian
// returns its (negative definite) Jacobian. h = 0 recovers the undeformed
// case: mu and u are both the identity.
//
// All functions are pure and thread-safe. Inputs are validated; out-of-range
// values that would overflow double precision raise Error("overflow") rather
// than returning inf (saturate-and-error policy).

#include <array>

#include "psih/errors.hpp"

namespace psih {

using TriangleLengths = std::array<double, 3>;  // decorated edge lengths
using TriangleAngles = std::array<double, 3>;   // theta_i at the corner facing edge i
using XInvariants = std::array<double, 3>;      // x_i attached to edge i

// Per-triangle Hessian d(mu(x_i)) / d(u_j) together with its factorization
// H = c * D * M * D: a positive scalar c, a positive diagonal D, and the
// symmetric core M with diagonal -(x1+x2+x3) and off-diagonal M_ij = x_k.
// H is negative definite for every finite (h, l).
struct TriangleHessian {
  std::array<std::array<double, 3>, 3> H;
  double c = 0.0;
  std::array<double, 3> D{};
  std::array<std::array<double, 3>, 3> M;
};

// ---------------------------------------------------------------------------
// Angles and x-invariants

// Generalized corner angles theta_i = exp((l_i - l_j - l_k)/2).
// Errors: "overflow" if an exponent leaves the representable range,
// "nonfinite_input" for non-finite lengths.
[[nodiscard]] TriangleAngles corner_angles(const TriangleLengths& l);

// x_i = (theta_j + theta_k - theta_i)/2. Satisfies x_i + x_j = theta_k.
[[nodiscard]] XInvariants x_invariants(const TriangleAngles& theta);

// ---------------------------------------------------------------------------
// Deformation kernels

// mu(h, x) = int_0^x exp(h t^2) dt. Odd in x; strictly increasing; exactly x
// when h = 0. For h < 0, x = +/-inf is accepted and yields +/-mu_infinity(h).
// Errors: "overflow" when h > 0 and h*x^2 overflows; "nonfinite_input" for
// non-finite x with h >= 0.
[[nodiscard]] double mu(double h, double x);

// Derivative of mu: mu_prime(h, x) = exp(h x^2) (the integrand).
[[nodiscard]] double mu_prime(double h, double x);

// int_a^b exp(h t^2) dt, evaluated without cancellation: the interval is
// reflected/split into half-line pieces that are integrated directly, so the
// result keeps its true sign and magnitude even deep in the h < 0 tail where
// mu(h,b) - mu(h,a) would round to zero.
[[nodiscard]] double mu_interval(double h, double a, double b);

// mu(h, +inf) for h < 0; +inf for h >= 0. Computed by quadrature up to a
// cutoff T where the tail bound exp(h T^2)/(-2 h T) drops below 1e-16.
[[nodiscard]] double mu_infinity(double h);

// ---------------------------------------------------------------------------
// Length reparameterization

// u(h, l) = int_0^l exp(-h e^{-t}) dt. Strictly increasing in l; exactly l
// when h = 0. Range: all of R for h <= 0; (u_min(h), +inf) for h > 0.
// Errors: "overflow" when h < 0 and -h*e^{-l} overflows.
[[nodiscard]] double u_of_l(double h, double l);

// Derivative of u: u_prime(h, l) = exp(-h e^{-l}) (the integrand).
[[nodiscard]] double u_prime(double h, double l);

// Infimum of the u-range: -int_{-inf}^0 exp(-h e^{-t}) dt for h > 0
// (a finite negative number), -inf for h <= 0.
[[nodiscard]] double u_min(double h);

// Inverse of u_of_l in l. Bracketed bisection with secant polish; the
// optional initial guess warm-starts the bracket (Newton-style callers pass
// the previous l). Errors: "u_out_of_domain" when h > 0 and u <= u_min(h);
// "overflow" when the root lies beyond the representable range of u_of_l.
[[nodiscard]] double l_of_u(double h, double u, double initial_guess = 0.0);

// ---------------------------------------------------------------------------
// Per-triangle coordinate map and Hessian

// (mu(h, x_1), mu(h, x_2), mu(h, x_3)) for the triangle with lengths l.
[[nodiscard]] std::array<double, 3> triangle_gradient(double h, const TriangleLengths& l);

// Jacobian d(mu(x_i))/d(u_j) of triangle_gradient with respect to the
// u-variables u_j = u_of_l(h, l_j), returned with its c*D*M*D factorization.
// Symmetric and negative definite. Errors: "overflow" for extreme h*theta^2
// products.
[[nodiscard]] TriangleHessian triangle_hessian(double h, const TriangleLengths& l);

}  // namespace psih
