#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <string>

#include "psih/corpus.hpp"
#include "psih/errors.hpp"
#include "psih/io.hpp"

using namespace psih;

// ---------------------------------------------------------------------------
// JsonWriter

TEST_CASE("JsonWriter emits objects with 2-space indentation and stable order") {
  JsonWriter w;
  w.begin_object();
  w.key("command").value("demo");
  w.key("count").value(3);
  w.key("ok").value(true);
  w.key("missing").null();
  w.end_object();
  CHECK(w.str() ==
        "{\n"
        "  \"command\": \"demo\",\n"
        "  \"count\": 3,\n"
        "  \"ok\": true,\n"
        "  \"missing\": null\n"
        "}\n");
}

TEST_CASE("scalar arrays are inline, block arrays put elements on their own lines") {
  JsonWriter w;
  w.begin_object();
  w.key("flat").begin_array().value(1).value(2).value(3).end_array();
  w.key("rows").begin_array_block();
  w.begin_object().key("a").value(1).end_object();
  w.begin_object().key("a").value(2).end_object();
  w.end_array();
  w.key("empty").begin_array().end_array();
  w.end_object();
  CHECK(w.str() ==
        "{\n"
        "  \"flat\": [1, 2, 3],\n"
        "  \"rows\": [\n"
        "    {\n"
        "      \"a\": 1\n"
        "    },\n"
        "    {\n"
        "      \"a\": 2\n"
        "    }\n"
        "  ],\n"
        "  \"empty\": []\n"
        "}\n");
}

TEST_CASE("strings are escaped as JSON requires") {
  JsonWriter w;
  w.begin_object();
  w.key("text").value("a \"quote\"\nand\ttabs\\");
  w.end_object();
  const std::string doc = w.str();
  CHECK(doc.find("a \\\"quote\\\"\\nand\\ttabs\\\\") != std::string::npos);
  const auto parsed = nlohmann::json::parse(doc);  // throws (= fails) if invalid
  CHECK(parsed["text"] == "a \"quote\"\nand\ttabs\\");
}

TEST_CASE("doubles print with 17 significant digits and round-trip") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-0.5) == "-0.5");
  CHECK(std::stod(format_double(0.30000000000000004)) == 0.30000000000000004);
  JsonWriter w;
  w.begin_object();
  w.key("v").value(0.1);
  w.end_object();
  CHECK(w.str() == "{\n  \"v\": 0.10000000000000001\n}\n");
}

TEST_CASE("non-finite doubles are rejected rather than emitted") {
  JsonWriter w;
  w.begin_object().key("v");
  try {
    w.value(std::numeric_limits<double>::infinity());
    FAIL("expected nonfinite_output");
  } catch (const Error& e) {
    CHECK(e.code() == "nonfinite_output");
  }
}

// ---------------------------------------------------------------------------
// Metric documents

TEST_CASE("metric documents round-trip") {
  MetricDocument doc;
  doc.surface = "punctured_torus";
  doc.lengths = {0.25, -1.5, 3.0};
  const std::string text = serialize_metric(doc);
  const MetricDocument back = parse_metric(text);
  CHECK(back.surface == doc.surface);
  CHECK(back.lengths == doc.lengths);
  CHECK(serialize_metric(back) == text);
}

TEST_CASE("parse_metric rejects malformed documents") {
  const char* bad[] = {
      "nope",
      "{}",
      R"({"surface": "t"})",
      R"({"surface": "t", "lengths": "no"})",
      R"({"surface": 3, "lengths": [1]})",
      R"({"surface": "t", "lengths": [1, "x"]})",
  };
  for (const char* text : bad) {
    try {
      (void)parse_metric(text);
      FAIL("expected malformed_document for: ", text);
    } catch (const Error& e) {
      CHECK(e.code() == "malformed_document");
      CHECK(e.kind() == ErrorKind::io);
    }
  }
}

TEST_CASE("read_file and write_file round-trip and report missing files") {
  const std::string path = "psih_io_test_tmp.json";
  write_file(path, "hello\n");
  CHECK(read_file(path) == "hello\n");
  std::remove(path.c_str());
  try {
    (void)read_file("definitely/not/a/real/path.json");
    FAIL("expected file_error");
  } catch (const Error& e) {
    CHECK(e.code() == "file_error");
    CHECK(e.kind() == ErrorKind::io);
  }
}

// ---------------------------------------------------------------------------
// Report fragments

TEST_CASE("constraint kinds have stable names") {
  CHECK(constraint_kind_name(ConstraintKind::edge_bound) == "edge_bound");
  CHECK(constraint_kind_name(ConstraintKind::path_bound) == "path_bound");
  CHECK(constraint_kind_name(ConstraintKind::loop_positivity) == "loop_positivity");
}

TEST_CASE("emitted report fragments parse back as JSON with the declared fields") {
  const Triangulation tri = builtin_surface("punctured_torus");

  JsonWriter w;
  emit_surface(w, tri);
  const auto surface = nlohmann::json::parse(w.str());
  CHECK(surface["name"] == "punctured_torus");
  CHECK(surface["num_edges"] == 3);
  CHECK(surface["triangles"].size() == 2);
  CHECK(surface["triangles"][0]["sides"][0]["edge"] == 0);

  const PolytopeReport report = polytope_membership(tri, -1.0, Eigen::VectorXd::Zero(3));
  JsonWriter w2;
  emit_polytope_report(w2, report);
  const auto rep = nlohmann::json::parse(w2.str());
  CHECK(rep["h"] == -1.0);
  CHECK(rep["member"] == false);
  CHECK(rep["violations"].size() == 13);
  CHECK(rep["violations"][0]["kind"] == "loop_positivity");
  CHECK(rep["violations"][0]["witness"]["is_loop"] == true);

  // For h >= 0 the edge bound is infinite and must be emitted as null.
  const PolytopeReport open_report = polytope_membership(tri, 0.5, Eigen::VectorXd::Ones(3));
  JsonWriter w3;
  emit_polytope_report(w3, open_report);
  const auto open_rep = nlohmann::json::parse(w3.str());
  CHECK(open_rep["edge_bound"].is_null());
  CHECK(open_rep["member"] == true);
}

TEST_CASE("emitted surfaces parse back into the same triangulation") {
  for (const std::string& name : builtin_surface_names()) {
    const Triangulation tri = builtin_surface(name);
    JsonWriter w;
    emit_surface(w, tri);
    const Triangulation back = parse_surface(w.str());
    CHECK(serialize_surface(back) == serialize_surface(tri));
  }
}
