// Microbenchmarks for the kernel functions, the coordinate map, Newton
// inversion, enumeration, membership, and greedy flips.
//
//   cmake --build build && ./build/benchmarks/psih_bench

#include <benchmark/benchmark.h>

#include "psih/coordinates.hpp"
#include "psih/corpus.hpp"
#include "psih/delaunay.hpp"
#include "psih/inversion.hpp"
#include "psih/rng.hpp"
#include "psih/surface.hpp"
#include "psih/triangle_geometry.hpp"

namespace {

using namespace psih;

LengthVector random_lengths(Rng& rng, int n, double box) {
  LengthVector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(-box, box);
  return v;
}

// ---------------------------------------------------------------------------
// Kernels

void bm_mu_negative(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mu(-1.0, 1.0));
}
BENCHMARK(bm_mu_negative);

void bm_mu_positive_far(benchmark::State& state) {
  // h > 0 far from zero exercises the segmented integration path.
  for (auto _ : state) benchmark::DoNotOptimize(mu(2.0, 18.0));
}
BENCHMARK(bm_mu_positive_far);

void bm_mu_infinity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mu_infinity(-1.0));
}
BENCHMARK(bm_mu_infinity);

void bm_u_of_l(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(u_of_l(-1.0, 1.0));
}
BENCHMARK(bm_u_of_l);

void bm_l_of_u_cold(benchmark::State& state) {
  const double u = u_of_l(-1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(l_of_u(-1.0, u));
}
BENCHMARK(bm_l_of_u_cold);

void bm_l_of_u_warm(benchmark::State& state) {
  const double u = u_of_l(-1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(l_of_u(-1.0, u, 0.999));
}
BENCHMARK(bm_l_of_u_warm);

void bm_corner_angles(benchmark::State& state) {
  const TriangleLengths l{0.3, -0.2, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(corner_angles(l));
}
BENCHMARK(bm_corner_angles);

void bm_triangle_hessian(benchmark::State& state) {
  const TriangleLengths l{0.3, -0.2, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(triangle_hessian(-1.0, l));
}
BENCHMARK(bm_triangle_hessian);

// ---------------------------------------------------------------------------
// Coordinate map and inversion (argument 0..3 selects the builtin surface)

void bm_psi(benchmark::State& state) {
  const Triangulation tri = builtin_surface(builtin_surface_names()[state.range(0)]);
  Rng rng(11);
  const LengthVector l = random_lengths(rng, tri.num_edges(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(psi(tri, -1.0, l));
}
BENCHMARK(bm_psi)->DenseRange(0, 3);

void bm_assemble_hessian(benchmark::State& state) {
  const Triangulation tri = builtin_surface("genus2_1");
  Rng rng(12);
  const LengthVector l = random_lengths(rng, tri.num_edges(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_hessian(tri, -1.0, l));
}
BENCHMARK(bm_assemble_hessian);

void bm_invert_psi(benchmark::State& state) {
  const Triangulation tri = builtin_surface(builtin_surface_names()[state.range(0)]);
  Rng rng(13);
  const LengthVector l = random_lengths(rng, tri.num_edges(), 1.0);
  const PsiVector z = psi(tri, -1.0, l);
  SolveOptions opts;
  opts.check_membership = false;
  for (auto _ : state) benchmark::DoNotOptimize(invert_psi(tri, -1.0, z, opts));
}
BENCHMARK(bm_invert_psi)->DenseRange(0, 3);

// ---------------------------------------------------------------------------
// Enumeration, membership, flips

void bm_enumerate_loops(benchmark::State& state) {
  const Triangulation tri = builtin_surface(builtin_surface_names()[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_fundamental_loops(tri));
}
BENCHMARK(bm_enumerate_loops)->DenseRange(0, 3);

void bm_membership_cached(benchmark::State& state) {
  const Triangulation tri = builtin_surface("genus2_1");
  const ConstraintSet cs = build_constraint_set(tri);
  Rng rng(14);
  const PsiVector z = psi(tri, -1.0, random_lengths(rng, tri.num_edges(), 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(polytope_membership(tri, -1.0, z, cs));
}
BENCHMARK(bm_membership_cached);

void bm_membership_enumerating(benchmark::State& state) {
  // Without a precomputed constraint set every call re-enumerates.
  const Triangulation tri = builtin_surface("sphere_4");
  Rng rng(15);
  const PsiVector z = psi(tri, -1.0, random_lengths(rng, tri.num_edges(), 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(polytope_membership(tri, -1.0, z));
}
BENCHMARK(bm_membership_enumerating);

void bm_flip_to_delaunay(benchmark::State& state) {
  const Triangulation tri = builtin_surface("genus2_1");
  Rng rng(16);
  const LengthVector l = random_lengths(rng, tri.num_edges(), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(flip_to_delaunay(tri, -1.0, l));
}
BENCHMARK(bm_flip_to_delaunay);

}  // namespace

BENCHMARK_MAIN();
