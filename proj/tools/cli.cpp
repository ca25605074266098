#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Cholesky>
#include <json.hpp>

#include "psih/coordinates.hpp"
#include "psih/corpus.hpp"
#include "psih/delaunay.hpp"
#include "psih/errors.hpp"
#include "psih/inversion.hpp"
#include "psih/io.hpp"
#include "psih/rng.hpp"
#include "psih/surface.hpp"
#include "psih/triangle_geometry.hpp"

namespace psih {
namespace {

// ---------------------------------------------------------------------------
// Input resolution

// --surface accepts a builtin name or a path to a surface document.
Triangulation resolve_surface(const std::string& spec) {
  if (is_builtin_surface(spec)) return builtin_surface(spec);
  return parse_surface(read_file(spec));
}

bool parse_inline_list(const std::string& s, std::vector<double>& out) {
  out.clear();
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    const std::string field = s.substr(pos, comma - pos);
    if (field.empty()) return false;
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size()) return false;
    out.push_back(v);
    pos = comma + 1;
    if (comma == s.size()) break;
  }
  return !out.empty();
}

// Vector-valued flags accept an inline comma-separated list ("0.5,-1,2") or a
// path to a JSON file holding either a bare array or a metric document with a
// "lengths" field.
Eigen::VectorXd resolve_vector(const std::string& spec, int expected, const char* what) {
  std::vector<double> values;
  if (!parse_inline_list(spec, values)) {
    const std::string text = read_file(spec);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      Error::io("malformed_document", std::string(what) + ": " + e.what());
    }
    if (doc.is_object()) {
      const MetricDocument metric = parse_metric(text);
      values = metric.lengths;
    } else if (doc.is_array()) {
      for (const auto& v : doc) {
        if (!v.is_number()) Error::io("malformed_document", std::string(what) + ": array entries must be numbers");
        values.push_back(v.get<double>());
      }
    } else {
      Error::io("malformed_document", std::string(what) + ": expected an array or metric document");
    }
  }
  if (static_cast<int>(values.size()) != expected) {
    Error::domain("size_mismatch", std::string(what) + ": got " + std::to_string(values.size()) +
                                       " entries, surface has " + std::to_string(expected) +
                                       " edges");
  }
  Eigen::VectorXd out(expected);
  for (int i = 0; i < expected; ++i) {
    if (!std::isfinite(values[static_cast<std::size_t>(i)])) {
      Error::domain("nonfinite_input", std::string(what) + ": entries must be finite");
    }
    out[i] = values[static_cast<std::size_t>(i)];
  }
  return out;
}

void require_finite_h(double h) {
  if (!std::isfinite(h)) Error::domain("nonfinite_input", "--h must be finite");
}

void deliver(const std::string& out_path, const JsonWriter& w) {
  const std::string text = w.str();
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    write_file(out_path, text);
  }
}

// ---------------------------------------------------------------------------
// Shared option plumbing

struct CommonOpts {
  std::string surface;
  double h = 0.0;
  std::string out;
};

void add_surface_opt(CLI::App* sub, CommonOpts& c) {
  sub->add_option("--surface", c.surface, "builtin surface name or path to a surface document")
      ->required();
}

void add_h_opt(CLI::App* sub, CommonOpts& c) {
  sub->add_option("--h", c.h, "deformation parameter (default 0)");
}

void add_out_opt(CLI::App* sub, CommonOpts& c) {
  sub->add_option("--out", c.out, "write the report to this file instead of stdout");
}

void emit_header(JsonWriter& w, const char* command, const Triangulation& tri) {
  w.key("command").value(command);
  w.key("surface").value(std::string_view(tri.name()));
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_psi(const CommonOpts& c, const std::string& lengths) {
  require_finite_h(c.h);
  const Triangulation tri = resolve_surface(c.surface);
  const Eigen::VectorXd l = resolve_vector(lengths, tri.num_edges(), "--lengths");
  const PsiVector z = psi(tri, c.h, l);
  JsonWriter w;
  w.begin_object();
  emit_header(w, "psi", tri);
  w.key("h").value(c.h);
  w.key("lengths");
  emit_vector(w, l);
  w.key("psi");
  emit_vector(w, z);
  w.end_object();
  deliver(c.out, w);
  return 0;
}

int cmd_invert(const CommonOpts& c, const std::string& target, double tol, int max_iter,
               bool no_membership_check) {
  require_finite_h(c.h);
  const Triangulation tri = resolve_surface(c.surface);
  const Eigen::VectorXd z = resolve_vector(target, tri.num_edges(), "--target");
  SolveOptions opt;
  opt.tol = tol;
  opt.max_iter = max_iter;
  opt.check_membership = !no_membership_check;
  const SolveResult result = invert_psi(tri, c.h, z, opt);
  JsonWriter w;
  w.begin_object();
  emit_header(w, "invert", tri);
  w.key("h").value(c.h);
  w.key("target");
  emit_vector(w, z);
  w.key("result");
  emit_solve_result(w, result);
  w.end_object();
  deliver(c.out, w);
  return result.converged ? 0 : 1;
}

int cmd_polytope(const CommonOpts& c, const std::string& z_spec, double slack) {
  require_finite_h(c.h);
  const Triangulation tri = resolve_surface(c.surface);
  const Eigen::VectorXd z = resolve_vector(z_spec, tri.num_edges(), "--z");
  const PolytopeReport report = polytope_membership(tri, c.h, z, slack);
  JsonWriter w;
  w.begin_object();
  emit_header(w, "polytope", tri);
  w.key("z");
  emit_vector(w, z);
  w.key("slack").value(slack);
  w.key("report");
  emit_polytope_report(w, report);
  w.end_object();
  deliver(c.out, w);
  return report.member ? 0 : 1;
}

int cmd_loops(const CommonOpts& c) {
  const Triangulation tri = resolve_surface(c.surface);
  const std::vector<EdgePath> loops = enumerate_fundamental_loops(tri);
  JsonWriter w;
  w.begin_object();
  emit_header(w, "loops", tri);
  w.key("count").value(loops.size());
  w.key("loops").begin_array_block();
  for (const EdgePath& p : loops) emit_edge_path(w, p);
  w.end_array();
  w.end_object();
  deliver(c.out, w);
  return 0;
}

int cmd_paths(const CommonOpts& c, bool dedup) {
  const Triangulation tri = resolve_surface(c.surface);
  const std::vector<EdgePath> paths = enumerate_fundamental_paths(tri, dedup);
  JsonWriter w;
  w.begin_object();
  emit_header(w, "paths", tri);
  w.key("dedup").value(dedup);
  w.key("count").value(paths.size());
  w.key("paths").begin_array_block();
  for (const EdgePath& p : paths) emit_edge_path(w, p);
  w.end_array();
  w.end_object();
  deliver(c.out, w);
  return 0;
}

int cmd_delaunay(const CommonOpts& c, const std::string& lengths) {
  require_finite_h(c.h);
  const Triangulation tri = resolve_surface(c.surface);
  const Eigen::VectorXd l = resolve_vector(lengths, tri.num_edges(), "--lengths");
  const DelaunayVerdict verdict = delaunay_check(tri, c.h, l);
  JsonWriter w;
  w.begin_object();
  emit_header(w, "delaunay", tri);
  w.key("h").value(c.h);
  w.key("lengths");
  emit_vector(w, l);
  w.key("verdict");
  emit_delaunay_verdict(w, verdict);
  w.end_object();
  deliver(c.out, w);
  return 0;
}

int cmd_flip(const CommonOpts& c, const std::string& lengths, int edge, int max_flips) {
  require_finite_h(c.h);
  const Triangulation tri = resolve_surface(c.surface);
  const Eigen::VectorXd l = resolve_vector(lengths, tri.num_edges(), "--lengths");
  JsonWriter w;
  w.begin_object();
  if (edge >= 0) {
    // Single Ptolemy flip of the named edge.
    const FlipResult fr = ptolemy_flip(tri, l, edge);
    emit_header(w, "flip", tri);
    w.key("h").value(c.h);
    w.key("edge").value(edge);
    w.key("new_length").value(fr.new_length);
    w.key("lengths");
    emit_vector(w, fr.lengths);
    w.key("surface_after");
    emit_surface(w, fr.triangulation);
    w.end_object();
    deliver(c.out, w);
    return 0;
  }
  const FlipRecord rec = flip_to_delaunay(tri, c.h, l, max_flips);
  emit_header(w, "flip", tri);
  w.key("h").value(c.h);
  w.key("lengths");
  emit_vector(w, l);
  w.key("flips").begin_array_block();
  for (const FlipStep& step : rec.flips) {
    w.begin_object();
    w.key("edge").value(step.edge);
    w.key("psi_before").value(step.psi_before);
    w.key("new_length").value(step.new_length);
    w.end_object();
  }
  w.end_array();
  w.key("completed").value(rec.completed);
  w.key("final_lengths");
  emit_vector(w, rec.final_lengths);
  w.key("final_verdict");
  emit_delaunay_verdict(w, rec.final_verdict);
  w.key("final_surface");
  emit_surface(w, rec.final_triangulation);
  w.end_object();
  deliver(c.out, w);
  return rec.completed ? 0 : 1;
}

int cmd_probe_boundary(const CommonOpts& c, const std::string& lengths,
                       const std::string& direction, int steps, double step) {
  require_finite_h(c.h);
  if (steps < 0) Error::domain("invalid_argument", "--steps must be >= 0");
  if (!std::isfinite(step)) Error::domain("nonfinite_input", "--step must be finite");
  const Triangulation tri = resolve_surface(c.surface);
  const Eigen::VectorXd l0 = resolve_vector(lengths, tri.num_edges(), "--lengths");
  const Eigen::VectorXd dir = resolve_vector(direction, tri.num_edges(), "--direction");
  const std::vector<ProbeSample> samples = boundary_probe(tri, c.h, l0, dir, steps, step);
  JsonWriter w;
  w.begin_object();
  emit_header(w, "probe-boundary", tri);
  w.key("h").value(c.h);
  w.key("lengths");
  emit_vector(w, l0);
  w.key("direction");
  emit_vector(w, dir);
  w.key("step").value(step);
  w.key("samples").begin_array_block();
  for (const ProbeSample& s : samples) {
    w.begin_object();
    w.key("scale").value(s.scale);
    w.key("min_slack").value(s.min_slack);
    w.key("z");
    emit_vector(w, s.z);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  deliver(c.out, w);
  return 0;
}

int cmd_probe_phi(const CommonOpts& c, int samples, std::uint64_t seed) {
  require_finite_h(c.h);
  if (samples < 2) Error::domain("invalid_argument", "--samples must be >= 2");
  const Triangulation tri = resolve_surface(c.surface);
  const int E = tri.num_edges();
  const double box = 2.0;          // lengths drawn uniformly from [-box, box]^E
  const double min_l_dist = 1e-3;  // pairs closer than this in length space are skipped
  Rng rng(seed);
  std::vector<Eigen::VectorXd> ls(static_cast<std::size_t>(samples));
  std::vector<Eigen::VectorXd> phis(static_cast<std::size_t>(samples));
  for (int n = 0; n < samples; ++n) {
    Eigen::VectorXd l(E);
    for (int e = 0; e < E; ++e) l[e] = rng.uniform(-box, box);
    ls[static_cast<std::size_t>(n)] = l;
    phis[static_cast<std::size_t>(n)] = phi(tri, c.h, l);
  }
  double best = std::numeric_limits<double>::infinity();
  double best_l_dist = 0.0;
  int bi = -1, bj = -1;
  for (int i = 0; i < samples; ++i) {
    for (int j = i + 1; j < samples; ++j) {
      const double dl = (ls[static_cast<std::size_t>(i)] - ls[static_cast<std::size_t>(j)])
                            .lpNorm<Eigen::Infinity>();
      if (dl < min_l_dist) continue;
      const double dphi = (phis[static_cast<std::size_t>(i)] - phis[static_cast<std::size_t>(j)])
                              .lpNorm<Eigen::Infinity>();
      if (dphi < best) {
        best = dphi;
        best_l_dist = dl;
        bi = i;
        bj = j;
      }
    }
  }
  JsonWriter w;
  w.begin_object();
  emit_header(w, "probe-phi", tri);
  w.key("h").value(c.h);
  w.key("samples").value(samples);
  w.key("seed").value(static_cast<std::int64_t>(seed));
  w.key("box").value(box);
  w.key("min_length_distance").value(min_l_dist);
  w.key("min_phi_distance").value(best);
  w.key("closest_pair");
  if (bi >= 0) {
    w.begin_object();
    w.key("lengths_a");
    emit_vector(w, ls[static_cast<std::size_t>(bi)]);
    w.key("lengths_b");
    emit_vector(w, ls[static_cast<std::size_t>(bj)]);
    w.key("length_distance").value(best_l_dist);
    w.key("phi_distance").value(best);
    w.end_object();
  } else {
    w.null();
  }
  w.key("collision_candidate").value(bi >= 0 && best < 1e-8);
  w.key("note").value(
      "sampling evidence only: reports the closest pair of images observed, "
      "makes no claim about injectivity");
  w.end_object();
  deliver(c.out, w);
  return 0;
}

// ---------------------------------------------------------------------------
// selftest: a fast battery of internal invariants

int cmd_selftest(const std::string& out_path) {
  std::vector<std::pair<std::string, bool>> checks;
  auto add = [&](const std::string& name, bool ok) { checks.emplace_back(name, ok); };
  auto near = [](double a, double b, double tol) { return std::abs(a - b) <= tol; };

  // Builtin documents survive a parse/serialize round trip byte-for-byte.
  {
    bool ok = true;
    for (const std::string& name : builtin_surface_names()) {
      const std::string& doc = builtin_surface_document(name);
      ok = ok && serialize_surface(parse_surface(doc)) == doc;
    }
    add("corpus_round_trip", ok);
  }

  const Triangulation torus = builtin_surface("punctured_torus");

  // The punctured torus has a single vertex orbit of all six corners.
  {
    const auto orbits = vertex_orbits(torus);
    add("torus_vertex_orbit", orbits.size() == 1 && orbits[0].size() == 6);
  }

  // Frozen enumeration counts.
  {
    const auto loops_torus = enumerate_fundamental_loops(torus);
    const auto loops_s3 = enumerate_fundamental_loops(builtin_surface("sphere_3"));
    add("loop_counts", loops_torus.size() == 13 && loops_s3.size() == 13);
  }

  // At the symmetric point all angles are 1, every x-invariant is 1/2, and
  // the undeformed coordinate of every edge is 1. Also pin one quadrature
  // value against its frozen reference.
  {
    const Eigen::VectorXd l0 = Eigen::VectorXd::Zero(3);
    const PsiVector z = psi(torus, 0.0, l0);
    bool ok = true;
    for (int e = 0; e < 3; ++e) ok = ok && near(z[e], 1.0, 1e-14);
    ok = ok && near(mu(-1.0, 1.0), 0.7468241328124270, 1e-13);
    add("psi_symmetric_point", ok);
  }

  // Forward map then inverse map returns the starting lengths.
  {
    Eigen::VectorXd l(3);
    l << 0.4, -0.3, 0.1;
    const PsiVector z = psi(torus, -1.0, l);
    const SolveResult r = invert_psi(torus, -1.0, z, {});
    add("invert_round_trip",
        r.converged && (r.l - l).lpNorm<Eigen::Infinity>() <= 1e-8);
  }

  // Flipping the same edge twice restores the triangulation up to relabeling
  // and restores the lengths exactly up to round-off.
  {
    const Triangulation s4 = builtin_surface("sphere_4");
    Eigen::VectorXd l(6);
    l << 0.2, -0.5, 0.9, 0.0, -1.1, 0.6;
    const FlipResult f1 = ptolemy_flip(s4, l, 1);
    const FlipResult f2 = ptolemy_flip(f1.triangulation, f1.lengths, 1);
    add("flip_involution", isomorphic(s4, f2.triangulation) &&
                               (f2.lengths - l).lpNorm<Eigen::Infinity>() <= 1e-12);
  }

  // The greedy flip search terminates at a triangulation that is Delaunay.
  {
    const Triangulation g2 = builtin_surface("genus2_1");
    Eigen::VectorXd l(9);
    l << 0.9, -1.1, 0.4, 1.3, -0.2, 0.7, -0.8, 1.0, 0.1;
    const FlipRecord rec = flip_to_delaunay(g2, -2.0, l);
    add("flip_to_delaunay", rec.completed && rec.final_verdict.is_delaunay);
  }

  // Points of the image satisfy every polytope constraint.
  {
    Eigen::VectorXd l(3);
    l << 0.4, -0.3, 0.1;
    const PolytopeReport rep = polytope_membership(torus, -1.0, psi(torus, -1.0, l));
    add("image_in_polytope", rep.member);
  }

  // The assembled derivative matrix is symmetric and negative definite.
  {
    const Triangulation s4 = builtin_surface("sphere_4");
    Eigen::VectorXd l(6);
    l << 0.2, -0.5, 0.9, 0.0, -1.1, 0.6;
    const Eigen::MatrixXd A = assemble_hessian(s4, -0.7, l);
    const bool sym = (A - A.transpose()).lpNorm<Eigen::Infinity>() == 0.0;
    const Eigen::LLT<Eigen::MatrixXd> llt((-A).eval());
    add("hessian_negative_definite", sym && llt.info() == Eigen::Success);
  }

  // u(l) and its inverse round-trip on both sides of h = 0.
  {
    const double a = l_of_u(-1.0, u_of_l(-1.0, 1.25));
    const double b = l_of_u(0.5, u_of_l(0.5, -0.5));
    add("length_u_round_trip", near(a, 1.25, 1e-10) && near(b, -0.5, 1e-10));
  }

  bool all = true;
  for (const auto& [name, ok] : checks) all = all && ok;

  JsonWriter w;
  w.begin_object();
  w.key("command").value("selftest");
  w.key("passed").value(all);
  w.key("checks").begin_array_block();
  for (const auto& [name, ok] : checks) {
    w.begin_object();
    w.key("name").value(std::string_view(name));
    w.key("pass").value(ok);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  deliver(out_path, w);
  return all ? 0 : 1;
}

}  // namespace

// ---------------------------------------------------------------------------

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"deformed simplicial coordinates on decorated triangulated surfaces"};
  // --h is a domain flag (the deformation parameter), so help is --help only.
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  int code = 0;
  const auto add_sub = [&app](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->set_help_flag("--help", "print this help and exit");
    return sub;
  };

  // psi
  CommonOpts psi_c;
  std::string psi_lengths;
  auto* sub_psi = add_sub("psi", "evaluate the coordinate at given edge lengths");
  add_surface_opt(sub_psi, psi_c);
  add_h_opt(sub_psi, psi_c);
  add_out_opt(sub_psi, psi_c);
  sub_psi->add_option("--lengths", psi_lengths, "edge lengths (inline list or file)")->required();
  sub_psi->callback([&] { code = cmd_psi(psi_c, psi_lengths); });

  // invert
  CommonOpts inv_c;
  std::string inv_target;
  double inv_tol = 1e-10;
  int inv_max_iter = 200;
  bool inv_no_check = false;
  auto* sub_inv = add_sub("invert", "solve for the lengths mapping to a target");
  add_surface_opt(sub_inv, inv_c);
  add_h_opt(sub_inv, inv_c);
  add_out_opt(sub_inv, inv_c);
  sub_inv->add_option("--target", inv_target, "target coordinates (inline list or file)")
      ->required();
  sub_inv->add_option("--tol", inv_tol, "sup-norm residual tolerance (default 1e-10)");
  sub_inv->add_option("--max-iter", inv_max_iter, "Newton iteration budget (default 200)");
  sub_inv->add_flag("--no-membership-check", inv_no_check,
                    "skip the polytope membership pre-check");
  sub_inv->callback(
      [&] { code = cmd_invert(inv_c, inv_target, inv_tol, inv_max_iter, inv_no_check); });

  // polytope
  CommonOpts pol_c;
  std::string pol_z;
  double pol_slack = 0.0;
  auto* sub_pol = add_sub("polytope", "test membership in the image polytope");
  add_surface_opt(sub_pol, pol_c);
  add_h_opt(sub_pol, pol_c);
  add_out_opt(sub_pol, pol_c);
  sub_pol->add_option("--z", pol_z, "candidate coordinates (inline list or file)")->required();
  sub_pol->add_option("--slack", pol_slack, "require every constraint to hold with this margin");
  sub_pol->callback([&] { code = cmd_polytope(pol_c, pol_z, pol_slack); });

  // loops
  CommonOpts loops_c;
  auto* sub_loops = add_sub("loops", "enumerate fundamental edge loops");
  add_surface_opt(sub_loops, loops_c);
  add_out_opt(sub_loops, loops_c);
  sub_loops->callback([&] { code = cmd_loops(loops_c); });

  // paths
  CommonOpts paths_c;
  bool paths_dedup = false;
  auto* sub_paths = add_sub("paths", "enumerate fundamental edge paths");
  add_surface_opt(sub_paths, paths_c);
  add_out_opt(sub_paths, paths_c);
  sub_paths->add_flag("--dedup", paths_dedup, "collapse orientation-reversed duplicates");
  sub_paths->callback([&] { code = cmd_paths(paths_c, paths_dedup); });

  // delaunay
  CommonOpts del_c;
  std::string del_lengths;
  auto* sub_del = add_sub("delaunay", "per-edge Delaunay verdict");
  add_surface_opt(sub_del, del_c);
  add_h_opt(sub_del, del_c);
  add_out_opt(sub_del, del_c);
  sub_del->add_option("--lengths", del_lengths, "edge lengths (inline list or file)")->required();
  sub_del->callback([&] { code = cmd_delaunay(del_c, del_lengths); });

  // flip
  CommonOpts flip_c;
  std::string flip_lengths;
  int flip_edge = -1;
  int flip_max = -1;
  auto* sub_flip =
      add_sub("flip", "flip one edge, or flip greedily until Delaunay");
  add_surface_opt(sub_flip, flip_c);
  add_h_opt(sub_flip, flip_c);
  add_out_opt(sub_flip, flip_c);
  sub_flip->add_option("--lengths", flip_lengths, "edge lengths (inline list or file)")
      ->required();
  sub_flip->add_option("edge", flip_edge, "edge to flip once (omit to flip until Delaunay)");
  sub_flip->add_option("--max-flips", flip_max, "flip budget (default 10*E^2)");
  sub_flip->callback([&] { code = cmd_flip(flip_c, flip_lengths, flip_edge, flip_max); });

  // probe-boundary
  CommonOpts pb_c;
  std::string pb_lengths, pb_dir;
  int pb_steps = 8;
  double pb_step = 0.5;
  auto* sub_pb = add_sub("probe-boundary",
                                    "walk a ray in length space and report constraint margins");
  add_surface_opt(sub_pb, pb_c);
  add_h_opt(sub_pb, pb_c);
  add_out_opt(sub_pb, pb_c);
  sub_pb->add_option("--lengths", pb_lengths, "base point (inline list or file)")->required();
  sub_pb->add_option("--direction", pb_dir, "ray direction (inline list or file)")->required();
  sub_pb->add_option("--steps", pb_steps, "number of steps beyond the base point (default 8)");
  sub_pb->add_option("--step", pb_step, "step size along the ray (default 0.5)");
  sub_pb->callback([&] { code = cmd_probe_boundary(pb_c, pb_lengths, pb_dir, pb_steps, pb_step); });

  // probe-phi
  CommonOpts pp_c;
  int pp_samples = 200;
  std::uint64_t pp_seed = 1;
  auto* sub_pp = add_sub(
      "probe-phi", "sample the angle-power coordinate and report the closest image pair");
  add_surface_opt(sub_pp, pp_c);
  add_h_opt(sub_pp, pp_c);
  add_out_opt(sub_pp, pp_c);
  sub_pp->add_option("--samples", pp_samples, "number of random length vectors (default 200)");
  sub_pp->add_option("--seed", pp_seed, "random seed (default 1)");
  sub_pp->callback([&] { code = cmd_probe_phi(pp_c, pp_samples, pp_seed); });

  // selftest
  std::string st_out;
  auto* sub_st = add_sub("selftest", "run the built-in invariant battery");
  sub_st->add_option("--out", st_out, "write the report to this file instead of stdout");
  sub_st->callback([&] { code = cmd_selftest(st_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    JsonWriter w;
    w.begin_object();
    w.key("error").begin_object();
    w.key("kind").value(e.kind() == ErrorKind::io ? "io" : "domain");
    w.key("code").value(std::string_view(e.code()));
    w.key("message").value(std::string_view(e.what()));
    w.end_object();
    w.end_object();
    const std::string text = w.str();
    std::fwrite(text.data(), 1, text.size(), stdout);
    return e.kind() == ErrorKind::io ? 2 : 1;
  }
  return code;
}

}  // namespace psih
