#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

const char* binary() {
  const char* bin = std::getenv("PSIH_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "PSIH_BIN must point at the CLI binary");
  return bin;
}

// Runs the CLI with the given argument string, capturing stdout.
RunResult run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd =
      std::string(binary()) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

nlohmann::json run_json(const std::string& args, int expected_exit) {
  const RunResult r = run(args);
  CHECK(r.exit_code == expected_exit);
  return nlohmann::json::parse(r.out);
}

void write_text(const std::string& path, const std::string& text) {
  FILE* f = std::fopen(path.c_str(), "w");
  REQUIRE(f != nullptr);
  std::fwrite(text.data(), 1, text.size(), f);
  std::fclose(f);
}

std::string slurp(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "r");
  REQUIRE(f != nullptr);
  std::string text;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, n);
  std::fclose(f);
  return text;
}

}  // namespace

// ---------------------------------------------------------------------------
// The documented examples

TEST_CASE("psi at the symmetric point prints the all-ones vector") {
  const auto doc = run_json("psi --surface punctured_torus --h 0 --lengths 0,0,0", 0);
  CHECK(doc["command"] == "psi");
  CHECK(doc["surface"] == "punctured_torus");
  CHECK(doc["h"] == 0.0);
  REQUIRE(doc["psi"].size() == 3);
  for (const auto& v : doc["psi"]) CHECK(v == 1.0);
}

TEST_CASE("invert recovers the zero metric from the all-ones target") {
  const auto doc = run_json("invert --surface punctured_torus --h 0 --target 1,1,1", 0);
  CHECK(doc["result"]["converged"] == true);
  REQUIRE(doc["result"]["lengths"].size() == 3);
  for (const auto& v : doc["result"]["lengths"]) CHECK(std::abs(v.get<double>()) < 1e-10);
}

TEST_CASE("polytope rejects the origin with one witness per loop") {
  const RunResult r = run("polytope --surface punctured_torus --h -1 --z 0,0,0");
  CHECK(r.exit_code == 1);  // not a member
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["report"]["member"] == false);
  CHECK(doc["report"]["violations"].size() == 13);
  for (const auto& v : doc["report"]["violations"]) CHECK(v["kind"] == "loop_positivity");
}

// ---------------------------------------------------------------------------
// Errors and exit codes

TEST_CASE("an unknown surface is an io error with exit code 2") {
  const RunResult r = run("psi --surface klein_bottle --lengths 0,0,0");
  CHECK(r.exit_code == 2);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["error"]["kind"] == "io");
  // Names that are not builtin are treated as file paths, so the failure
  // surfaces as a file lookup error.
  CHECK(doc["error"]["code"] == "file_error");
}

TEST_CASE("a wrong-sized vector is a domain error with exit code 1") {
  const RunResult r = run("psi --surface punctured_torus --lengths 0,0");
  CHECK(r.exit_code == 1);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["error"]["kind"] == "domain");
  CHECK(doc["error"]["code"] == "size_mismatch");
}

TEST_CASE("missing subcommands and unknown flags exit with code 2") {
  CHECK(run("", true).exit_code == 2);
  CHECK(run("psi --surface punctured_torus --lengths 0,0,0 --frobnicate", true).exit_code == 2);
  CHECK(run("--help", true).exit_code == 0);
  CHECK(run("psi --help", true).exit_code == 0);
}

TEST_CASE("a missing surface file is reported, not crashed on") {
  const RunResult r = run("psi --surface ./no_such_surface_file.json --lengths 0,0,0");
  CHECK(r.exit_code == 2);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["error"]["kind"] == "io");
}

// ---------------------------------------------------------------------------
// Determinism and --out

TEST_CASE("identical invocations produce byte-identical output") {
  const std::string args = "psi --surface genus2_1 --h -1.25 --lengths 0.4,-0.3,0.1,0.9,-1.1,0.2,0.5,-0.7,0.3";
  const RunResult a = run(args);
  const RunResult b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("--out writes exactly what stdout would have carried") {
  const std::string path = "cli_out_test_tmp.json";
  const RunResult direct = run("delaunay --surface sphere_4 --h -1 --lengths 0,0,0,0,0,0");
  const RunResult redirected =
      run("delaunay --surface sphere_4 --h -1 --lengths 0,0,0,0,0,0 --out " + path);
  CHECK(redirected.out.empty());
  CHECK(slurp(path) == direct.out);
  std::remove(path.c_str());
}

// ---------------------------------------------------------------------------
// Vector and surface resolution

TEST_CASE("length vectors load from metric documents and bare arrays") {
  const std::string metric_path = "cli_metric_test_tmp.json";
  write_text(metric_path,
             R"({"surface": "punctured_torus", "lengths": [0.0, 0.0, 0.0]})");
  const auto from_metric =
      run_json("psi --surface punctured_torus --h 0 --lengths " + metric_path, 0);
  for (const auto& v : from_metric["psi"]) CHECK(v == 1.0);
  std::remove(metric_path.c_str());

  const std::string array_path = "cli_array_test_tmp.json";
  write_text(array_path, "[0.0, 0.0, 0.0]");
  const auto from_array =
      run_json("psi --surface punctured_torus --h 0 --lengths " + array_path, 0);
  for (const auto& v : from_array["psi"]) CHECK(v == 1.0);
  std::remove(array_path.c_str());
}

TEST_CASE("surfaces load from files as well as builtin names") {
  const std::string path = "cli_surface_test_tmp.json";
  write_text(path, R"({
    "name": "self_folded",
    "num_edges": 3,
    "triangles": [
      { "id": 0, "sides": [ { "edge": 0, "side": 0 }, { "edge": 0, "side": 1 }, { "edge": 1, "side": 0 } ] },
      { "id": 1, "sides": [ { "edge": 1, "side": 1 }, { "edge": 2, "side": 0 }, { "edge": 2, "side": 1 } ] }
    ]
  })");
  const auto doc = run_json("psi --surface " + path + " --h 0 --lengths 0,0,0", 0);
  CHECK(doc["surface"] == "self_folded");
  REQUIRE(doc["psi"].size() == 3);

  // The interior edge of the self-folded triangle cannot be flipped.
  const RunResult flip = run("flip --surface " + path + " --lengths 0,0,0 0");
  CHECK(flip.exit_code == 1);
  const auto flip_doc = nlohmann::json::parse(flip.out);
  CHECK(flip_doc["error"]["code"] == "flip_inadmissible");
  std::remove(path.c_str());
}

// ---------------------------------------------------------------------------
// The remaining subcommands

TEST_CASE("loops and paths report the frozen counts for the torus") {
  const auto loops = run_json("loops --surface punctured_torus", 0);
  CHECK(loops["count"] == 13);
  CHECK(loops["loops"].size() == 13);
  const auto paths = run_json("paths --surface punctured_torus", 0);
  CHECK(paths["count"] == 30);
  const auto deduped = run_json("paths --surface punctured_torus --dedup", 0);
  CHECK(deduped["count"] == 15);
}

TEST_CASE("delaunay reports per-edge signs") {
  const auto doc = run_json("delaunay --surface punctured_torus --h -1 --lengths 0,0,0", 0);
  CHECK(doc["verdict"]["is_delaunay"] == true);
  REQUIRE(doc["verdict"]["edges"].size() == 3);
  for (const auto& e : doc["verdict"]["edges"]) CHECK(e["sign"] == 1);
}

TEST_CASE("flip on an edge produces the updated metric") {
  const auto doc = run_json("flip --surface punctured_torus --lengths 0.2,-0.1,0.4 1", 0);
  CHECK(doc["edge"] == 1);
  CHECK(doc["new_length"].is_number());
  CHECK(doc["lengths"].size() == 3);
  CHECK(doc["surface_after"]["num_edges"] == 3);
}

TEST_CASE("flip without an edge runs the greedy Delaunay loop") {
  const auto doc = run_json(
      "flip --surface genus2_1 --h -2 --lengths 0.9,-1.1,0.4,1.3,-0.2,0.7,-0.8,1.0,0.1", 0);
  CHECK(doc["completed"] == true);
  CHECK(doc["final_verdict"]["is_delaunay"] == true);
  CHECK(doc["flips"].is_array());
}

TEST_CASE("probe-boundary walks the requested ray") {
  const auto doc = run_json(
      "probe-boundary --surface punctured_torus --h -1 --lengths 0,0,0 "
      "--direction 1,0,0 --steps 3 --step 0.25",
      0);
  REQUIRE(doc["samples"].size() == 4);
  CHECK(doc["samples"][0]["scale"] == 0.0);
  CHECK(doc["samples"][3]["scale"] == 0.75);
  for (const auto& s : doc["samples"]) CHECK(s["min_slack"].is_number());
}

TEST_CASE("probe-phi samples deterministically under a fixed seed") {
  const std::string args =
      "probe-phi --surface punctured_torus --h 0.5 --samples 25 --seed 7";
  const RunResult a = run(args);
  const RunResult b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  const auto doc = nlohmann::json::parse(a.out);
  CHECK(doc["samples"] == 25);
  CHECK(doc.contains("collision_candidate"));
  CHECK(doc["closest_pair"]["phi_distance"].is_number());
}

TEST_CASE("selftest passes") {
  const RunResult r = run("selftest", true);
  CHECK(r.exit_code == 0);
}
