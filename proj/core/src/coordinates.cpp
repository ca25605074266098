#include "psih/coordinates.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "psih/triangle_geometry.hpp"

namespace psih {
namespace {

void require_lengths(const Triangulation& tri, const LengthVector& l, const char* what) {
  if (l.size() != tri.num_edges()) {
    Error::domain("size_mismatch", std::string(what) + " has " + std::to_string(l.size()) +
                                       " entries, expected " + std::to_string(tri.num_edges()));
  }
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    if (!std::isfinite(l[i])) {
      Error::domain("nonfinite_input", std::string(what) + " entry " + std::to_string(i) +
                                           " is not finite");
    }
  }
}

TriangleLengths lengths_of(const Triangulation& tri, const LengthVector& l, int t) {
  const Triangle& triangle = tri.triangles()[t];
  return {l[triangle.sides[0].edge], l[triangle.sides[1].edge], l[triangle.sides[2].edge]};
}

// Sum of z over a path's edges, in listed order (deterministic).
double path_sum(const Eigen::VectorXd& z, const EdgePath& path) {
  double sum = 0.0;
  for (int e : path.edges) sum += z[e];
  return sum;
}

EdgePath edge_witness(const Triangulation& tri, int e) {
  return EdgePath{{tri.slot({e, 0}).tri, tri.slot({e, 1}).tri}, {e}, false};
}

}  // namespace

CornerTable corner_table(const Triangulation& tri, const LengthVector& l) {
  require_lengths(tri, l, "length vector");
  CornerTable table;
  table.theta.resize(tri.num_triangles());
  table.x.assign(tri.num_edges(), {0.0, 0.0});
  for (int t = 0; t < tri.num_triangles(); ++t) {
    const TriangleAngles theta = corner_angles(lengths_of(tri, l, t));
    const XInvariants x = x_invariants(theta);
    table.theta[t] = theta;
    for (int pos = 0; pos < 3; ++pos) {
      const EdgeSide side = tri.triangles()[t].sides[pos];
      table.x[side.edge][side.side] = x[pos];
    }
  }
  return table;
}

PsiVector psi(const Triangulation& tri, double h, const LengthVector& l) {
  const CornerTable table = corner_table(tri, l);
  PsiVector z(tri.num_edges());
  for (int e = 0; e < tri.num_edges(); ++e) {
    z[e] = mu(h, table.x[e][0]) + mu(h, table.x[e][1]);
  }
  return z;
}

PsiVector phi(const Triangulation& tri, double h, const LengthVector& l) {
  if (h == -1.0) {
    Error::domain("phi_h_minus_one", "phi is undefined at h = -1 (exponent h+1 vanishes)");
  }
  const CornerTable table = corner_table(tri, l);
  PsiVector out(tri.num_edges());
  for (int e = 0; e < tri.num_edges(); ++e) {
    const Slot s0 = tri.slot({e, 0});
    const Slot s1 = tri.slot({e, 1});
    const double a = std::pow(table.theta[s0.tri][s0.pos], h + 1.0);
    const double b = std::pow(table.theta[s1.tri][s1.pos], h + 1.0);
    if (!std::isfinite(a) || !std::isfinite(b)) {
      Error::domain("overflow", "phi overflows at edge " + std::to_string(e));
    }
    out[e] = a + b;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Image polytope membership

ConstraintSet build_constraint_set(const Triangulation& tri, std::size_t cap) {
  return ConstraintSet{enumerate_fundamental_paths(tri, /*dedup=*/true, cap),
                       enumerate_fundamental_loops(tri, cap)};
}

PolytopeReport polytope_membership(const Triangulation& tri, double h, const Eigen::VectorXd& z,
                                   double slack) {
  return polytope_membership(tri, h, z, build_constraint_set(tri), slack);
}

PolytopeReport polytope_membership(const Triangulation& tri, double h, const Eigen::VectorXd& z,
                                   const ConstraintSet& constraints, double slack) {
  require_lengths(tri, z, "coordinate vector");
  if (!std::isfinite(h)) Error::domain("nonfinite_input", "h must be finite");
  PolytopeReport report;
  report.h = h;
  report.bound = 2.0 * mu_infinity(h);
  if (h < 0.0) {
    for (int e = 0; e < tri.num_edges(); ++e) {
      if (!(z[e] < report.bound - slack)) {
        report.violations.push_back(
            Violation{ConstraintKind::edge_bound, edge_witness(tri, e), z[e], report.bound});
      }
    }
    for (const EdgePath& path : constraints.paths) {
      const double sum = path_sum(z, path);
      if (!(sum > -report.bound + slack)) {
        report.violations.push_back(Violation{ConstraintKind::path_bound, path, sum, -report.bound});
      }
    }
  }
  for (const EdgePath& loop : constraints.loops) {
    const double sum = path_sum(z, loop);
    if (!(sum > slack)) {
      report.violations.push_back(Violation{ConstraintKind::loop_positivity, loop, sum, 0.0});
    }
  }
  report.member = report.violations.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Boundary probe

std::vector<ProbeSample> boundary_probe(const Triangulation& tri, double h,
                                        const LengthVector& l0, const LengthVector& direction,
                                        int steps, double step) {
  require_lengths(tri, l0, "base point");
  require_lengths(tri, direction, "direction");
  if (steps < 0 || !std::isfinite(step)) {
    Error::domain("nonfinite_input", "probe needs steps >= 0 and a finite step size");
  }
  const ConstraintSet constraints = build_constraint_set(tri);
  std::vector<ProbeSample> samples;
  samples.reserve(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) {
    const double scale = k * step;
    const PsiVector z = psi(tri, h, l0 + scale * direction);
    double min_slack = std::numeric_limits<double>::infinity();
    if (h < 0.0) {
      const double bound = 2.0 * mu_infinity(h);
      for (int e = 0; e < tri.num_edges(); ++e) min_slack = std::min(min_slack, bound - z[e]);
      for (const EdgePath& path : constraints.paths) {
        min_slack = std::min(min_slack, path_sum(z, path) + bound);
      }
    }
    for (const EdgePath& loop : constraints.loops) {
      min_slack = std::min(min_slack, path_sum(z, loop));
    }
    samples.push_back(ProbeSample{scale, z, min_slack});
  }
  return samples;
}

}  // namespace psih
