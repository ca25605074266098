#include "psih/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "psih/errors.hpp"

namespace psih {

// ---------------------------------------------------------------------------
// JsonWriter

void JsonWriter::newline_indent() {
  out_.push_back('\n');
  out_.append(2 * stack_.size(), ' ');
}

void JsonWriter::before_value() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (stack_.empty()) return;
  Frame& f = stack_.back();
  if (f.kind == '[') {
    if (f.count > 0) out_.push_back(',');
    if (f.block) {
      newline_indent();
    } else if (f.count > 0) {
      out_.push_back(' ');
    }
    ++f.count;
  }
}

JsonWriter& JsonWriter::begin_object() {
  before_value();
  out_.push_back('{');
  stack_.push_back({'{', true, 0});
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  Frame f = stack_.back();
  stack_.pop_back();
  if (f.count > 0) newline_indent();
  out_.push_back('}');
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  before_value();
  out_.push_back('[');
  stack_.push_back({'[', false, 0});
  return *this;
}

JsonWriter& JsonWriter::begin_array_block() {
  before_value();
  out_.push_back('[');
  stack_.push_back({'[', true, 0});
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  Frame f = stack_.back();
  stack_.pop_back();
  if (f.block && f.count > 0) newline_indent();
  out_.push_back(']');
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
  Frame& f = stack_.back();
  if (f.count > 0) out_.push_back(',');
  ++f.count;
  newline_indent();
  write_quoted(k);
  out_.append(": ");
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  if (!std::isfinite(v)) {
    Error::domain("nonfinite_output", "attempted to write a non-finite number");
  }
  before_value();
  out_.append(format_double(v));
  return *this;
}

JsonWriter& JsonWriter::value(int v) { return value(static_cast<std::int64_t>(v)); }

JsonWriter& JsonWriter::value(std::size_t v) {
  return value(static_cast<std::int64_t>(v));
}

JsonWriter& JsonWriter::value(std::int64_t v) {
  before_value();
  out_.append(std::to_string(v));
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  before_value();
  out_.append(v ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  before_value();
  write_quoted(v);
  return *this;
}

void JsonWriter::write_quoted(std::string_view v) {
  out_.push_back('"');
  for (char c : v) {
    switch (c) {
      case '"': out_.append("\\\""); break;
      case '\\': out_.append("\\\\"); break;
      case '\n': out_.append("\\n"); break;
      case '\t': out_.append("\\t"); break;
      case '\r': out_.append("\\r"); break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out_.append(buf);
        } else {
          out_.push_back(c);
        }
    }
  }
  out_.push_back('"');
}

JsonWriter& JsonWriter::null() {
  before_value();
  out_.append("null");
  return *this;
}

std::string JsonWriter::str() const { return out_ + "\n"; }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Files

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Error::io("file_error", "cannot open file for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) Error::io("file_error", "error while reading: " + path);
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Error::io("file_error", "cannot open file for writing: " + path);
  out << content;
  out.flush();
  if (!out) Error::io("file_error", "error while writing: " + path);
}

// ---------------------------------------------------------------------------
// Metric documents

MetricDocument parse_metric(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    Error::io("malformed_document", std::string("metric document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("surface") || !doc.contains("lengths") ||
      !doc["surface"].is_string() || !doc["lengths"].is_array()) {
    Error::io("malformed_document",
              "metric document must be {\"surface\": str, \"lengths\": [..]}");
  }
  MetricDocument out;
  out.surface = doc["surface"].get<std::string>();
  for (const auto& v : doc["lengths"]) {
    if (!v.is_number()) {
      Error::io("malformed_document", "metric lengths must be numbers");
    }
    double d = v.get<double>();
    if (!std::isfinite(d)) {
      Error::io("malformed_document", "metric lengths must be finite");
    }
    out.lengths.push_back(d);
  }
  return out;
}

std::string serialize_metric(const MetricDocument& doc) {
  JsonWriter w;
  w.begin_object();
  w.key("surface").value(std::string_view(doc.surface));
  w.key("lengths").begin_array();
  for (double v : doc.lengths) w.value(v);
  w.end_array();
  w.end_object();
  return w.str();
}

// ---------------------------------------------------------------------------
// Report fragments

std::string_view constraint_kind_name(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::edge_bound: return "edge_bound";
    case ConstraintKind::path_bound: return "path_bound";
    case ConstraintKind::loop_positivity: return "loop_positivity";
  }
  return "unknown";
}

void emit_vector(JsonWriter& w, const Eigen::VectorXd& v) {
  w.begin_array();
  for (Eigen::Index i = 0; i < v.size(); ++i) w.value(v[i]);
  w.end_array();
}

void emit_surface(JsonWriter& w, const Triangulation& tri) {
  w.begin_object();
  w.key("name").value(std::string_view(tri.name()));
  w.key("num_edges").value(tri.num_edges());
  w.key("triangles").begin_array_block();
  for (int t = 0; t < tri.num_triangles(); ++t) {
    w.begin_object();
    w.key("id").value(t);
    w.key("sides").begin_array_block();
    for (int pos = 0; pos < 3; ++pos) {
      const EdgeSide s = tri.triangles()[t].sides[pos];
      w.begin_object();
      w.key("edge").value(s.edge);
      w.key("side").value(s.side);
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();
}

void emit_edge_path(JsonWriter& w, const EdgePath& path) {
  w.begin_object();
  w.key("triangles").begin_array();
  for (int t : path.triangles) w.value(t);
  w.end_array();
  w.key("edges").begin_array();
  for (int e : path.edges) w.value(e);
  w.end_array();
  w.key("is_loop").value(path.is_loop);
  w.end_object();
}

void emit_polytope_report(JsonWriter& w, const PolytopeReport& report) {
  w.begin_object();
  w.key("h").value(report.h);
  w.key("member").value(report.member);
  w.key("edge_bound");
  if (std::isfinite(report.bound)) {
    w.value(report.bound);
  } else {
    w.null();
  }
  w.key("violations").begin_array_block();
  for (const Violation& v : report.violations) {
    w.begin_object();
    w.key("kind").value(constraint_kind_name(v.kind));
    w.key("lhs").value(v.lhs);
    w.key("rhs").value(v.rhs);
    w.key("witness");
    emit_edge_path(w, v.witness);
    w.end_object();
  }
  w.end_array();
  w.end_object();
}

void emit_delaunay_verdict(JsonWriter& w, const DelaunayVerdict& verdict) {
  w.begin_object();
  w.key("is_delaunay").value(verdict.is_delaunay);
  w.key("edges").begin_array_block();
  for (const EdgeDelaunay& e : verdict.per_edge) {
    w.begin_object();
    w.key("edge").value(e.edge);
    w.key("x0").value(e.x0);
    w.key("x1").value(e.x1);
    w.key("psi").value(e.psi);
    w.key("sign").value(e.sign);
    w.end_object();
  }
  w.end_array();
  w.end_object();
}

void emit_solve_result(JsonWriter& w, const SolveResult& result) {
  w.begin_object();
  w.key("converged").value(result.converged);
  w.key("iterations").value(result.iterations);
  w.key("residual").value(result.residual);
  w.key("lengths");
  emit_vector(w, result.l);
  w.key("trace").begin_array_block();
  for (const IterationRecord& r : result.trace) {
    w.begin_object();
    w.key("residual_sup").value(r.residual_sup);
    w.key("residual_l2").value(r.residual_l2);
    w.key("step").value(r.step);
    w.end_object();
  }
  w.end_array();
  w.end_object();
}

}  // namespace psih
