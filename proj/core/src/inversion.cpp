#include "psih/inversion.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "psih/triangle_geometry.hpp"

namespace psih {
namespace {

constexpr double kBoundaryFraction = 0.01;  // fraction-to-the-boundary rule for h > 0
constexpr int kMaxLineEvals = 60;           // slope evaluations per line search

void require_sized(const Triangulation& tri, const Eigen::VectorXd& v, const char* what) {
  if (v.size() != tri.num_edges()) {
    Error::domain("size_mismatch", std::string(what) + " has " + std::to_string(v.size()) +
                                       " entries, expected " + std::to_string(tri.num_edges()));
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      Error::domain("nonfinite_input", std::string(what) + " entry " + std::to_string(i) +
                                           " is not finite");
    }
  }
}

}  // namespace

Eigen::MatrixXd assemble_hessian(const Triangulation& tri, double h, const LengthVector& l) {
  require_sized(tri, l, "length vector");
  const int E = tri.num_edges();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(E, E);
  for (const Triangle& triangle : tri.triangles()) {
    const TriangleLengths tl = {l[triangle.sides[0].edge], l[triangle.sides[1].edge],
                                l[triangle.sides[2].edge]};
    const TriangleHessian local = triangle_hessian(h, tl);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        A(triangle.sides[i].edge, triangle.sides[j].edge) += local.H[i][j];
      }
    }
  }
  return A;
}

SolveResult invert_psi(const Triangulation& tri, double h, const PsiVector& z,
                       const SolveOptions& options) {
  require_sized(tri, z, "target vector");
  const int E = tri.num_edges();

  if (options.check_membership) {
    const PolytopeReport report =
        options.membership_constraints
            ? polytope_membership(tri, h, z, *options.membership_constraints)
            : polytope_membership(tri, h, z);
    if (!report.member) {
      Error::domain("not_in_polytope",
                    "target fails " + std::to_string(report.violations.size()) +
                        " image-polytope constraint(s); first kind: " +
                        std::to_string(static_cast<int>(report.violations.front().kind)));
    }
  }

  LengthVector l = options.initial_l.size() == 0 ? LengthVector::Zero(E) : options.initial_l;
  require_sized(tri, l, "initial point");
  Eigen::VectorXd u(E);
  for (int e = 0; e < E; ++e) u[e] = u_of_l(h, l[e]);
  const double floor = u_min(h);  // -inf for h <= 0

  auto lengths_from = [&](const Eigen::VectorXd& u_next, const LengthVector& warm) {
    LengthVector out(E);
    for (int e = 0; e < E; ++e) out[e] = l_of_u(h, u_next[e], warm[e]);
    return out;
  };

  SolveResult result;
  Eigen::VectorXd g = psi(tri, h, l) - z;
  double sup = g.lpNorm<Eigen::Infinity>();
  double l2 = g.norm();
  result.trace.push_back(IterationRecord{sup, l2, 0.0});

  for (int iter = 0; iter < options.max_iter && sup > options.tol; ++iter) {
    // A is negative definite, so -A admits a Cholesky factorization, and
    // A s = -g becomes (-A) s = g.
    const Eigen::MatrixXd A = assemble_hessian(tri, h, l);
    Eigen::LLT<Eigen::MatrixXd> llt(-A);
    if (llt.info() != Eigen::Success) {
      Error::domain("linear_solve_failure", "Hessian factorization failed");
    }
    const Eigen::VectorXd s = llt.solve(g);
    if (!s.allFinite()) {
      Error::domain("linear_solve_failure", "Newton step is not finite");
    }

    // Fraction-to-the-boundary: keep every u(e) above u_min by at least 1% of
    // its current distance (only binding for h > 0, where u_min is finite).
    double t = 1.0;
    if (std::isfinite(floor)) {
      for (int e = 0; e < E; ++e) {
        if (s[e] < 0.0) {
          const double limit = (1.0 - kBoundaryFraction) * (u[e] - floor) / -s[e];
          t = std::min(t, limit);
        }
      }
    }

    // Line search on the slope of the concave potential along s:
    // m(t) = s . (Psi_h(u + t s) - z) decreases strictly in t, is positive at
    // t = 0 (s is an ascent direction), and vanishes at the one-dimensional
    // maximum. Accept once |m| has fallen to slope_fraction * m(0); when the
    // capped step overshoots, locate such a point by bisection. Trial points
    // beyond the representable range count as overshoots.
    const double m0 = s.dot(g);
    if (!(m0 > 0.0)) break;  // numerically stationary: no ascent left

    struct Trial {
      bool ok = false;
      LengthVector l;
      Eigen::VectorXd g;
      double m = 0.0;
    };
    const auto try_step = [&](double step) {
      Trial trial;
      try {
        trial.l = lengths_from(u + step * s, l);
        trial.g = psi(tri, h, trial.l) - z;
        trial.m = s.dot(trial.g);
        trial.ok = true;
      } catch (const Error&) {
        trial.ok = false;
      }
      return trial;
    };

    const double eta = options.slope_fraction;
    Trial cur = try_step(t);
    bool accepted = cur.ok && cur.m >= -eta * m0;
    if (!accepted) {
      double lo = 0.0;
      double hi = t;
      Trial best;  // last strictly ascending trial, kept as a fallback
      double t_best = 0.0;
      for (int k = 0; k < kMaxLineEvals; ++k) {
        t = 0.5 * (lo + hi);
        cur = try_step(t);
        if (!cur.ok) {
          hi = t;
          continue;
        }
        if (std::abs(cur.m) <= eta * m0) {
          accepted = true;
          break;
        }
        if (cur.m > 0.0) {
          lo = t;
          best = cur;
          t_best = t;
        } else {
          hi = t;
        }
      }
      if (!accepted) {
        if (t_best == 0.0) break;  // no representable ascent: stall
        cur = best;
        t = t_best;
        accepted = true;
      }
    }

    u += t * s;
    l = cur.l;
    g = cur.g;
    l2 = g.norm();
    sup = g.lpNorm<Eigen::Infinity>();
    result.iterations = iter + 1;
    result.trace.push_back(IterationRecord{sup, l2, t});
  }

  result.l = l;
  result.residual = sup;
  result.converged = sup <= options.tol;
  return result;
}

}  // namespace psih
