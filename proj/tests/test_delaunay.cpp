#include <doctest.h>

#include <cmath>
#include <string>

#include "psih/coordinates.hpp"
#include "psih/corpus.hpp"
#include "psih/delaunay.hpp"
#include "psih/errors.hpp"
#include "psih/rng.hpp"
#include "psih/surface.hpp"

using namespace psih;

namespace {

LengthVector random_lengths(Rng& rng, int n, double box) {
  LengthVector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(-box, box);
  return v;
}

Triangle make_triangle(EdgeSide a, EdgeSide b, EdgeSide c) {
  Triangle t;
  t.sides = {a, b, c};
  return t;
}

Triangulation self_folded() {
  return Triangulation(
      "self_folded", 3,
      {make_triangle({0, 0}, {0, 1}, {1, 0}), make_triangle({1, 1}, {2, 0}, {2, 1})});
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

// ---------------------------------------------------------------------------
// delaunay_check

TEST_CASE("the verdict is consistent with psi and the flanking x-invariants") {
  Rng rng(103);
  const Triangulation tri = builtin_surface("sphere_4");
  for (int trial = 0; trial < 20; ++trial) {
    const double h = rng.uniform(-2.0, 2.0);
    const LengthVector l = random_lengths(rng, 6, 2.0);
    const DelaunayVerdict verdict = delaunay_check(tri, h, l);
    const PsiVector z = psi(tri, h, l);
    const CornerTable ct = corner_table(tri, l);
    REQUIRE(verdict.per_edge.size() == 6);
    bool all_positive = true;
    for (int e = 0; e < 6; ++e) {
      const EdgeDelaunay& ed = verdict.per_edge[e];
      CHECK(ed.edge == e);
      CHECK(ed.x0 == ct.x[e][0]);
      CHECK(ed.x1 == ct.x[e][1]);
      CHECK(ed.psi == z[e]);
      CHECK(ed.sign == sign_of(ed.psi));
      CHECK(ed.sign == sign_of(ed.x0 + ed.x1));
      all_positive = all_positive && ed.sign > 0;
    }
    CHECK(verdict.is_delaunay == all_positive);
  }
}

TEST_CASE("the verdict does not depend on h") {
  Rng rng(107);
  const Triangulation tri = builtin_surface("genus2_1");
  for (int trial = 0; trial < 25; ++trial) {
    const LengthVector l = random_lengths(rng, 9, 2.5);
    const DelaunayVerdict base = delaunay_check(tri, -2.0, l);
    for (double h : {-1.0, 0.0, 1.0, 2.0}) {
      const DelaunayVerdict other = delaunay_check(tri, h, l);
      CHECK(other.is_delaunay == base.is_delaunay);
      for (int e = 0; e < 9; ++e) {
        CHECK(other.per_edge[e].sign == base.per_edge[e].sign);
      }
    }
  }
}

TEST_CASE("the zero metric is Delaunay on every builtin") {
  for (const std::string& name : builtin_surface_names()) {
    const Triangulation tri = builtin_surface(name);
    const LengthVector zero = LengthVector::Zero(tri.num_edges());
    for (double h : {-1.0, 0.0, 1.0}) {
      CHECK(delaunay_check(tri, h, zero).is_delaunay);
    }
  }
}

TEST_CASE("the interior edge of a self-folded triangle is always Delaunay") {
  // Its two x-invariants sum to the apex angle, which is positive for any
  // lengths, so no metric can make that edge non-Delaunay.
  Rng rng(109);
  const Triangulation tri = self_folded();
  for (int trial = 0; trial < 30; ++trial) {
    const LengthVector l = random_lengths(rng, 3, 3.0);
    const DelaunayVerdict verdict = delaunay_check(tri, 0.0, l);
    CHECK(verdict.per_edge[0].sign == 1);
    const double apex = std::exp((l[1] - 2.0 * l[0]) / 2.0);
    CHECK(verdict.per_edge[0].x0 + verdict.per_edge[0].x1 ==
          doctest::Approx(apex).epsilon(1e-12));
  }
}

// ---------------------------------------------------------------------------
// ptolemy_flip

TEST_CASE("the log-space Ptolemy update matches the direct lambda-length formula") {
  Rng rng(113);
  const Triangulation tri = builtin_surface("sphere_4");
  for (int trial = 0; trial < 30; ++trial) {
    const LengthVector l = random_lengths(rng, 6, 2.0);
    const int edge = rng.uniform_int(0, 5);
    const FlipResult flip = ptolemy_flip(tri, l, edge);

    // Quadrilateral sides around the diagonal, in the combinatorial
    // convention: P, Q follow the side-0 slot; U, V follow the side-1 slot.
    const Slot s0 = tri.slot({edge, 0});
    const Slot s1 = tri.slot({edge, 1});
    const auto lam = [&](const Slot& s, int offset) {
      const EdgeSide side = tri.triangles()[s.tri].sides[(s.pos + offset) % 3];
      return std::exp(l[side.edge] / 2.0);
    };
    const double lam_new =
        (lam(s0, 1) * lam(s1, 1) + lam(s0, 2) * lam(s1, 2)) / std::exp(l[edge] / 2.0);
    CHECK(flip.new_length == doctest::Approx(2.0 * std::log(lam_new)).epsilon(1e-12));
    CHECK(flip.lengths[edge] == flip.new_length);
    for (int e = 0; e < 6; ++e) {
      if (e != edge) CHECK(flip.lengths[e] == l[e]);  // untouched entries are bitwise equal
    }
    // The combinatorial part is exactly the combinatorial flip.
    CHECK(serialize_surface(flip.triangulation) ==
          serialize_surface(flip_combinatorial(tri, edge)));
  }
}

TEST_CASE("the Ptolemy update survives extreme length scales") {
  // Opposite products e^{500} and e^{-500}: the direct lambda formula
  // overflows, the log-space form must not.
  const Triangulation tri = builtin_surface("punctured_torus");
  const LengthVector l = (LengthVector(3) << 0.0, 500.0, -500.0).finished();
  const FlipResult flip = ptolemy_flip(tri, l, 0);
  CHECK(std::isfinite(flip.new_length));
  // l' = 2 log(e^{500} + e^{-500}) - 0 = 1000 up to underflow.
  CHECK(flip.new_length == doctest::Approx(1000.0).epsilon(1e-13));
}

TEST_CASE("flipping the same edge twice restores the metric") {
  Rng rng(127);
  for (const char* name : {"punctured_torus", "sphere_4", "genus2_1"}) {
    const Triangulation tri = builtin_surface(name);
    const LengthVector l = random_lengths(rng, tri.num_edges(), 1.5);
    for (int edge = 0; edge < tri.num_edges(); ++edge) {
      const FlipResult once = ptolemy_flip(tri, l, edge);
      const FlipResult twice = ptolemy_flip(once.triangulation, once.lengths, edge);
      CHECK(isomorphic(tri, twice.triangulation));
      CHECK((twice.lengths - l).lpNorm<Eigen::Infinity>() < 1e-12);
    }
  }
}

TEST_CASE("ptolemy_flip validates its inputs") {
  const Triangulation tri = self_folded();
  const LengthVector l = LengthVector::Zero(3);
  try {
    (void)ptolemy_flip(tri, l, 0);
    FAIL("expected flip_inadmissible");
  } catch (const Error& e) {
    CHECK(e.code() == "flip_inadmissible");
  }
  try {
    (void)ptolemy_flip(builtin_surface("punctured_torus"), LengthVector::Zero(2), 0);
    FAIL("expected size_mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == "size_mismatch");
  }
}

// ---------------------------------------------------------------------------
// flip_to_delaunay

TEST_CASE("flip_to_delaunay reaches a Delaunay metric and logs each step") {
  Rng rng(131);
  for (const char* name : {"sphere_4", "genus2_1"}) {
    const Triangulation tri = builtin_surface(name);
    const int E = tri.num_edges();
    for (int trial = 0; trial < 10; ++trial) {
      const double h = rng.uniform(-2.0, 2.0);
      const LengthVector l = random_lengths(rng, E, 2.5);
      const FlipRecord record = flip_to_delaunay(tri, h, l);
      CHECK(record.completed);
      CHECK(record.final_verdict.is_delaunay);
      CHECK(static_cast<int>(record.flips.size()) <= 10 * E * E);
      CHECK(delaunay_check(record.final_triangulation, h, record.final_lengths).is_delaunay);
      for (const FlipStep& step : record.flips) {
        CHECK(step.psi_before <= 0.0);
      }
    }
  }
}

TEST_CASE("the greedy strategy flips the lowest-index non-Delaunay edge first") {
  Rng rng(137);
  const Triangulation tri = builtin_surface("genus2_1");
  for (int trial = 0; trial < 20; ++trial) {
    const LengthVector l = random_lengths(rng, 9, 2.5);
    const DelaunayVerdict verdict = delaunay_check(tri, -1.0, l);
    if (verdict.is_delaunay) continue;
    int lowest = -1;
    for (const EdgeDelaunay& ed : verdict.per_edge) {
      if (ed.sign <= 0) {
        lowest = ed.edge;
        break;
      }
    }
    const FlipRecord record = flip_to_delaunay(tri, -1.0, l);
    REQUIRE(!record.flips.empty());
    CHECK(record.flips.front().edge == lowest);
    CHECK(record.flips.front().psi_before ==
          doctest::Approx(verdict.per_edge[lowest].psi).epsilon(1e-14));
  }
}

TEST_CASE("a zero flip budget returns the input unchanged when not Delaunay") {
  Rng rng(139);
  const Triangulation tri = builtin_surface("sphere_4");
  for (int trial = 0; trial < 50; ++trial) {
    const LengthVector l = random_lengths(rng, 6, 2.5);
    if (delaunay_check(tri, 0.0, l).is_delaunay) continue;
    const FlipRecord record = flip_to_delaunay(tri, 0.0, l, 0);
    CHECK_FALSE(record.completed);
    CHECK(record.flips.empty());
    CHECK((record.final_lengths - l).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK(serialize_surface(record.final_triangulation) == serialize_surface(tri));
    return;  // one non-Delaunay sample is enough
  }
  FAIL("no non-Delaunay sample found");
}

TEST_CASE("an already-Delaunay metric needs no flips") {
  const Triangulation tri = builtin_surface("punctured_torus");
  const FlipRecord record = flip_to_delaunay(tri, -1.0, LengthVector::Zero(3));
  CHECK(record.completed);
  CHECK(record.flips.empty());
  CHECK(record.final_verdict.is_delaunay);
}
