#include "psih/delaunay.hpp"

#include <cmath>
#include <utility>

#include "psih/triangle_geometry.hpp"

namespace psih {
namespace {

// log(e^a + e^b) without overflow.
double log_add_exp(double a, double b) {
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

}  // namespace

DelaunayVerdict delaunay_check(const Triangulation& tri, double h, const LengthVector& l) {
  const CornerTable table = corner_table(tri, l);
  DelaunayVerdict verdict;
  verdict.is_delaunay = true;
  verdict.per_edge.reserve(static_cast<std::size_t>(tri.num_edges()));
  for (int e = 0; e < tri.num_edges(); ++e) {
    EdgeDelaunay entry;
    entry.edge = e;
    entry.x0 = table.x[e][0];
    entry.x1 = table.x[e][1];
    entry.psi = mu(h, entry.x0) + mu(h, entry.x1);
    entry.sign = entry.psi > 0.0 ? 1 : (entry.psi < 0.0 ? -1 : 0);
    verdict.is_delaunay = verdict.is_delaunay && entry.sign > 0;
    verdict.per_edge.push_back(entry);
  }
  return verdict;
}

FlipResult ptolemy_flip(const Triangulation& tri, const LengthVector& l, int edge) {
  if (l.size() != tri.num_edges()) {
    Error::domain("size_mismatch", "length vector size does not match the triangulation");
  }
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    if (!std::isfinite(l[i])) Error::domain("nonfinite_input", "lengths must be finite");
  }
  // Quadrilateral sides in cyclic order (P, Q, U, V) exactly as
  // flip_combinatorial sees them; opposite pairs are (P,U) and (Q,V).
  const Slot s0 = tri.slot({edge, 0});
  const Slot s1 = tri.slot({edge, 1});
  Triangulation flipped = flip_combinatorial(tri, edge);  // validates admissibility
  const auto& t1 = tri.triangles()[s0.tri];
  const auto& t2 = tri.triangles()[s1.tri];
  const int P = t1.sides[(s0.pos + 1) % 3].edge;
  const int Q = t1.sides[(s0.pos + 2) % 3].edge;
  const int U = t2.sides[(s1.pos + 1) % 3].edge;
  const int V = t2.sides[(s1.pos + 2) % 3].edge;

  // Ptolemy in log space: l' = 2 log(e^{(l_P+l_U)/2} + e^{(l_Q+l_V)/2}) - l_e.
  const double new_length =
      2.0 * log_add_exp(0.5 * (l[P] + l[U]), 0.5 * (l[Q] + l[V])) - l[edge];
  LengthVector lengths = l;
  lengths[edge] = new_length;
  return FlipResult{std::move(flipped), std::move(lengths), new_length};
}

FlipRecord flip_to_delaunay(const Triangulation& tri, double h, const LengthVector& l,
                            int max_flips) {
  const int E = tri.num_edges();
  if (max_flips < 0) max_flips = 10 * E * E;

  Triangulation current = tri;
  LengthVector lengths = l;
  std::vector<FlipStep> flips;
  for (;;) {
    const DelaunayVerdict verdict = delaunay_check(current, h, lengths);
    int worst = -1;
    for (const EdgeDelaunay& entry : verdict.per_edge) {
      if (entry.sign <= 0) {
        worst = entry.edge;  // lowest index, per_edge is in edge order
        break;
      }
    }
    if (worst < 0) {
      return FlipRecord{std::move(flips), std::move(current), std::move(lengths), true, verdict};
    }
    if (static_cast<int>(flips.size()) >= max_flips) {
      return FlipRecord{std::move(flips), std::move(current), std::move(lengths), false, verdict};
    }
    FlipResult result = ptolemy_flip(current, lengths, worst);
    flips.push_back(FlipStep{worst, verdict.per_edge[worst].psi, result.new_length});
    current = std::move(result.triangulation);
    lengths = std::move(result.lengths);
  }
}

}  // namespace psih
