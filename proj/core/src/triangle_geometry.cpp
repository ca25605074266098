#include "psih/triangle_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/expint.hpp>

#include "quadrature.hpp"

namespace psih {
namespace {

constexpr double kMaxExp = 700.0;  // exp() saturation threshold with headroom
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    Error::domain("nonfinite_input", std::string(what) + " must be finite");
  }
}

double checked_exp(double arg, const char* what) {
  if (arg > kMaxExp) {
    Error::domain("overflow", std::string(what) + " overflows double range (exponent " +
                                  std::to_string(arg) + ")");
  }
  return std::exp(arg);
}

// Truncation point T for int_0^inf exp(h t^2) dt, h < 0: beyond T the tail is
// bounded by exp(h T^2)/(-2 h T) < 1e-16.
double tail_cutoff(double h) {
  const double t0 = std::sqrt(40.0 / -h);
  const double ln_term = std::log(std::max(-2.0 * h * t0, 1e-300));
  return std::sqrt((40.0 + std::max(0.0, -ln_term)) / -h);
}

// int_p^q exp(h t^2) dt for 0 <= p < q, kept positive (no cancellation).
double gauss_kernel_segment(double h, double p, double q) {
  const auto f = [h](double t) { return std::exp(h * t * t); };
  if (h > 0.0) {
    if (h * q * q > kMaxExp) {
      Error::domain("overflow", "mu integrand overflows for h > 0 at |x| = " + std::to_string(q));
    }
    // The integrand explodes toward q; hand the adaptive rule pieces spanning
    // at most e^30 in value so each converges in a few bisections. Summed in
    // increasing order; all terms positive.
    constexpr double kSegmentSpan = 30.0;
    double total = 0.0;
    double t0 = p;
    double e0 = h * p * p;
    const double e1 = h * q * q;
    while (e0 + kSegmentSpan < e1) {
      e0 += kSegmentSpan;
      const double t1 = std::sqrt(e0 / h);
      total += detail::integrate(f, t0, t1);
      t0 = t1;
    }
    return total + detail::integrate(f, t0, q);
  }
  if (h < 0.0) {
    // Truncate where the remaining tail is below 1e-26 of the segment's scale.
    q = std::min(q, std::sqrt(p * p + 60.0 / -h));
  }
  return detail::integrate(f, p, q);
}

}  // namespace

// ---------------------------------------------------------------------------
// Angles and x-invariants

TriangleAngles corner_angles(const TriangleLengths& l) {
  for (double v : l) require_finite(v, "edge length");
  TriangleAngles theta{};
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    const double arg = 0.5 * (l[i] - l[j] - l[k]);
    if (std::abs(arg) > kMaxExp) {
      Error::domain("overflow", "corner angle exponent " + std::to_string(arg) +
                                    " out of range; lengths too extreme");
    }
    theta[i] = std::exp(arg);
  }
  return theta;
}

XInvariants x_invariants(const TriangleAngles& theta) {
  for (double v : theta) {
    require_finite(v, "corner angle");
    if (v <= 0.0) Error::domain("nonfinite_input", "corner angles must be positive");
  }
  XInvariants x{};
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    x[i] = 0.5 * (theta[j] + theta[k] - theta[i]);
  }
  return x;
}

// ---------------------------------------------------------------------------
// Deformation kernels

double mu(double h, double x) {
  require_finite(h, "h");
  if (std::isnan(x)) Error::domain("nonfinite_input", "mu argument is NaN");
  if (std::isinf(x)) {
    if (h < 0.0) return x > 0.0 ? mu_infinity(h) : -mu_infinity(h);
    Error::domain("nonfinite_input", "mu requires finite x for h >= 0");
  }
  if (h == 0.0) return x;  // exact identity in the undeformed case
  if (x == 0.0) return 0.0;
  const double ax = std::abs(x);
  const double upper = h < 0.0 ? std::min(ax, tail_cutoff(h)) : ax;
  const double value = gauss_kernel_segment(h, 0.0, upper);
  return x > 0.0 ? value : -value;
}

double mu_prime(double h, double x) {
  require_finite(h, "h");
  require_finite(x, "x");
  return checked_exp(h * x * x, "mu_prime");
}

double mu_interval(double h, double a, double b) {
  require_finite(h, "h");
  require_finite(a, "interval endpoint");
  require_finite(b, "interval endpoint");
  if (a == b) return 0.0;
  if (a > b) return -mu_interval(h, b, a);
  if (h == 0.0) return b - a;
  if (b <= 0.0) return gauss_kernel_segment(h, -b, -a);  // reflect to t >= 0
  if (a < 0.0) return gauss_kernel_segment(h, 0.0, -a) + gauss_kernel_segment(h, 0.0, b);
  return gauss_kernel_segment(h, a, b);
}

double mu_infinity(double h) {
  require_finite(h, "h");
  if (h >= 0.0) return kInf;
  return gauss_kernel_segment(h, 0.0, tail_cutoff(h));
}

// ---------------------------------------------------------------------------
// Length reparameterization

double u_of_l(double h, double l) {
  require_finite(h, "h");
  require_finite(l, "l");
  if (h == 0.0) return l;  // exact identity in the undeformed case
  if (l == 0.0) return 0.0;
  // Substituting s = e^{-t} turns int_0^l exp(-h e^{-t}) dt into exponential-
  // integral form, valid on both sides of h = 0:
  //     u(l) = Ei(-h) - Ei(-h e^{-l}).
  // The largest argument magnitude is -h e^{-min(l,0)}; past kMaxExp the value
  // itself is unrepresentable.
  const double worst = -h * std::exp(-std::min(l, 0.0));
  if (worst > kMaxExp) {
    Error::domain("overflow", "u overflows at l = " + std::to_string(l));
  }
  const double arg = -h * std::exp(-l);
  double tail;
  if (arg == 0.0) {
    // e^{-l} underflowed; use Ei(eps) = euler_gamma + ln|eps| + O(eps).
    tail = boost::math::constants::euler<double>() + std::log(std::abs(h)) - l;
  } else {
    tail = boost::math::expint(arg);
  }
  return boost::math::expint(-h) - tail;
}

double u_prime(double h, double l) {
  require_finite(h, "h");
  require_finite(l, "l");
  return checked_exp(-h * std::exp(-l), "u_prime");
}

double u_min(double h) {
  require_finite(h, "h");
  if (h <= 0.0) return -kInf;
  return boost::math::expint(-h);  // the l -> -inf limit of u_of_l, i.e. -E1(h)
}

double l_of_u(double h, double u, double initial_guess) {
  require_finite(h, "h");
  require_finite(u, "u");
  require_finite(initial_guess, "initial guess");
  if (h == 0.0) return u;
  if (h > 0.0) {
    const double um = u_min(h);
    if (!(u > um)) {
      Error::domain("u_out_of_domain",
                    "u = " + std::to_string(u) + " is outside (u_min, inf), u_min = " +
                        std::to_string(um));
    }
  }

  // For h < 0 the integrand blows up double-exponentially as l -> -inf; stay
  // on the representable side when expanding the bracket downward.
  const double lo_floor = h < 0.0 ? -std::log(kMaxExp / -h) : -kInf;
  auto f = [&](double l) { return u_of_l(h, l) - u; };

  double lo = std::max(initial_guess - 1.0, lo_floor);
  double hi = std::max(initial_guess + 1.0, lo + 1.0);
  double flo = f(lo);
  double fhi = f(hi);
  double width = 2.0;
  for (int i = 0; flo > 0.0 && i < 300; ++i) {
    hi = lo;
    fhi = flo;
    lo -= width;
    width *= 2.0;
    if (lo <= lo_floor) {
      lo = lo_floor;
      flo = f(lo);
      if (flo > 0.0) {
        Error::domain("overflow", "l_of_u target below the representable range of u_of_l");
      }
      break;
    }
    flo = f(lo);
  }
  width = 2.0;
  for (int i = 0; fhi < 0.0 && i < 300; ++i) {
    lo = hi;
    flo = fhi;
    hi += width;
    width *= 2.0;
    fhi = f(hi);
  }
  if (flo > 0.0 || fhi < 0.0) {
    Error::domain("overflow", "l_of_u failed to bracket a root for u = " + std::to_string(u));
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;

  // Bisection with secant polish: a secant candidate is used when it falls
  // strictly inside the bracket; every other step bisects, so the bracket
  // halves at a guaranteed rate while secant supplies the fast local finish.
  double x_prev = lo, f_prev = flo;
  double x_cur = hi, f_cur = fhi;
  for (int iter = 0; iter < 160; ++iter) {
    const double scale = 1.0 + std::max(std::abs(lo), std::abs(hi));
    if (hi - lo <= 1e-13 * scale) break;
    double cand;
    const bool odd = (iter % 2) != 0;
    const double df = f_cur - f_prev;
    if (!odd && df != 0.0) {
      cand = x_cur - f_cur * (x_cur - x_prev) / df;
      if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
    } else {
      cand = 0.5 * (lo + hi);
    }
    const double fc = f(cand);
    x_prev = x_cur;
    f_prev = f_cur;
    x_cur = cand;
    f_cur = fc;
    if (fc == 0.0) return cand;
    if (fc < 0.0) {
      lo = cand;
      flo = fc;
    } else {
      hi = cand;
      fhi = fc;
    }
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Per-triangle coordinate map and Hessian

std::array<double, 3> triangle_gradient(double h, const TriangleLengths& l) {
  const XInvariants x = x_invariants(corner_angles(l));
  return {mu(h, x[0]), mu(h, x[1]), mu(h, x[2])};
}

TriangleHessian triangle_hessian(double h, const TriangleLengths& l) {
  require_finite(h, "h");
  const TriangleAngles theta = corner_angles(l);
  const XInvariants x = x_invariants(theta);

  // Pairwise products theta_j * theta_k enter scaled by h; reject inputs whose
  // exponents cannot be represented.
  const double ah = std::abs(h);
  std::array<double, 3> pair{};  // pair[i] = theta_j * theta_k, {j,k} = {0,1,2} \ {i}
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    pair[i] = theta[j] * theta[k];
    if (ah * pair[i] > kMaxExp || ah * theta[i] * theta[i] > kMaxExp) {
      Error::domain("overflow", "h * theta^2 product out of range in triangle_hessian");
    }
  }
  const double Q = theta[0] * theta[0] + theta[1] * theta[1] + theta[2] * theta[2];
  const double sigma = pair[0] + pair[1] + pair[2];
  const double xsum = x[0] + x[1] + x[2];

  TriangleHessian out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        out.M[i][j] = -xsum;
      } else {
        out.M[i][j] = x[3 - i - j];
      }
    }
  }
  const double ec = h * (0.25 * Q - 0.5 * sigma);
  std::array<double, 3> ed{};
  for (int i = 0; i < 3; ++i) ed[i] = h * pair[i];
  out.c = 0.5 * std::exp(ec);
  for (int i = 0; i < 3; ++i) out.D[i] = std::exp(ed[i]);

  // H = c * D * M * D evaluated with combined exponents, so the entries stay
  // representable even when c or D saturate individually.
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const double m = out.M[i][j];
      double entry = 0.0;
      if (m != 0.0) {
        const double e_sum = ec + ed[i] + ed[j];
        if (std::abs(e_sum) <= 680.0) {
          entry = 0.5 * std::exp(e_sum) * m;  // common case, full precision
        } else {
          const double log_mag = e_sum + std::log(std::abs(m));
          if (log_mag > kMaxExp) {
            Error::domain("overflow", "Hessian entry overflows double range");
          }
          entry = 0.5 * std::copysign(std::exp(log_mag), m);
        }
      }
      out.H[i][j] = entry;
      out.H[j][i] = entry;
    }
  }
  return out;
}

}  // namespace psih
