#pragma once

// Documents and reports.
//
// Inputs (surface and metric documents) are parsed with a tolerant JSON
// parser; outputs go through JsonWriter, a small deterministic emitter with a
// stable key order (insertion order) and floats printed to 17 significant
// digits, so identical inputs produce byte-identical reports.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "psih/coordinates.hpp"
#include "psih/delaunay.hpp"
#include "psih/inversion.hpp"
#include "psih/surface.hpp"

namespace psih {

// ---------------------------------------------------------------------------
// Deterministic JSON emitter

class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  // Arrays are emitted inline by default; begin_array_block puts each element
  // on its own line (for arrays of objects).
  JsonWriter& begin_array();
  JsonWriter& begin_array_block();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(double v);  // requires finite; use null() otherwise
  JsonWriter& value(int v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(std::size_t v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& null();

  // Finished document (with trailing newline). Valid once all scopes closed.
  [[nodiscard]] std::string str() const;

 private:
  struct Frame {
    char kind;  // '{' or '['
    bool block;
    int count = 0;
  };
  void before_value();
  void newline_indent();
  void write_quoted(std::string_view v);
  std::string out_;
  std::vector<Frame> stack_;
  bool after_key_ = false;
};

// Number formatting used everywhere reports mention floats (%.17g in the C
// locale: 17 significant digits, enough to round-trip a double exactly).
[[nodiscard]] std::string format_double(double v);

// ---------------------------------------------------------------------------
// Files and metric documents

// Errors: io "file_error" when the file cannot be read/written.
[[nodiscard]] std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Metric document: { "surface": str, "lengths": [real x E] }.
struct MetricDocument {
  std::string surface;
  std::vector<double> lengths;
};

[[nodiscard]] MetricDocument parse_metric(const std::string& text);
[[nodiscard]] std::string serialize_metric(const MetricDocument& doc);

// ---------------------------------------------------------------------------
// Report fragments shared by the CLI and tests

[[nodiscard]] std::string_view constraint_kind_name(ConstraintKind kind);

void emit_vector(JsonWriter& w, const Eigen::VectorXd& v);
void emit_surface(JsonWriter& w, const Triangulation& tri);
void emit_edge_path(JsonWriter& w, const EdgePath& path);
void emit_polytope_report(JsonWriter& w, const PolytopeReport& report);
void emit_delaunay_verdict(JsonWriter& w, const DelaunayVerdict& verdict);
void emit_solve_result(JsonWriter& w, const SolveResult& result);

}  // namespace psih
