#include "rig/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "rig/errors.hpp"

namespace rig {

const char* ref_name(Ref r) {
  switch (r) {
    case Ref::kClosedForm:
      return "closed_form";
    case Ref::kDerived:
      return "derived";
    case Ref::kReference:
      return "reference";
  }
  return "derived";
}

bool MeasuredValue::passes() const {
  switch (kind) {
    case kInfo:
      return true;
    case kLe:
      return value <= tolerance;
    case kTarget:
      return std::fabs(value - target) <= tolerance;
  }
  return false;
}

Witness witness_vector(const std::string& label, const Vector& v) {
  Witness w;
  w.label = label;
  w.rows = static_cast<int>(v.size());
  w.cols = 1;
  w.data.assign(v.data(), v.data() + v.size());
  return w;
}

Witness witness_matrix(const std::string& label, const Matrix& m) {
  Witness w;
  w.label = label;
  w.rows = static_cast<int>(m.rows());
  w.cols = static_cast<int>(m.cols());
  w.data.reserve(static_cast<std::size_t>(m.size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) w.data.push_back(m(i, j));
  return w;
}

void VerificationReport::add_info(const std::string& name, double v, Ref r) {
  measured.push_back({name, MeasuredValue::kInfo, v, 0.0, 0.0, r});
}

void VerificationReport::add_le(const std::string& name, double v, double tol, Ref r) {
  measured.push_back({name, MeasuredValue::kLe, v, 0.0, tol, r});
  pass = pass && measured.back().passes();
}

void VerificationReport::add_target(const std::string& name, double v, double target,
                                    double tol, Ref r) {
  measured.push_back({name, MeasuredValue::kTarget, v, target, tol, r});
  pass = pass && measured.back().passes();
}

void VerificationReport::fail(const std::string& why) {
  pass = false;
  if (!detail.empty()) detail += "; ";
  detail += why;
}

bool VerificationReport::recompute_pass() {
  for (const auto& m : measured) pass = pass && m.passes();
  return pass;
}

bool SuiteResult::all_pass() const {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void json_escape(const std::string& s, std::string& out) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

// Non-finite doubles are not representable as JSON numbers; quote them.
void json_number(double v, std::string& out) {
  if (std::isfinite(v)) {
    out += format_double(v);
  } else {
    out += '"';
    out += format_double(v);
    out += '"';
  }
}

const char* kind_name(MeasuredValue::Kind k) {
  switch (k) {
    case MeasuredValue::kInfo:
      return "info";
    case MeasuredValue::kLe:
      return "le";
    case MeasuredValue::kTarget:
      return "target";
  }
  return "info";
}

}  // namespace

std::string to_json(const SuiteResult& suite) {
  std::string o;
  o.reserve(4096);
  o += "{\"config_digest\":";
  json_escape(suite.config_digest, o);
  o += ",\"version\":";
  json_escape(suite.version, o);
  o += ",\"master_seed\":" + std::to_string(suite.master_seed);
  o += ",\"all_pass\":";
  o += suite.all_pass() ? "true" : "false";
  o += ",\"reports\":[";
  bool first_r = true;
  for (const auto& r : suite.reports) {
    if (!first_r) o += ',';
    first_r = false;
    o += "{\"check\":";
    json_escape(r.check, o);
    o += ",\"params_digest\":";
    json_escape(r.params_digest, o);
    o += ",\"rng_seed\":" + std::to_string(r.rng_seed);
    o += ",\"tolerance\":";
    json_number(r.tolerance, o);
    o += ",\"pass\":";
    o += r.pass ? "true" : "false";
    o += ",\"detail\":";
    json_escape(r.detail, o);
    o += ",\"measured\":[";
    bool first_m = true;
    for (const auto& m : r.measured) {
      if (!first_m) o += ',';
      first_m = false;
      o += "{\"name\":";
      json_escape(m.name, o);
      o += ",\"kind\":\"";
      o += kind_name(m.kind);
      o += "\",\"value\":";
      json_number(m.value, o);
      if (m.kind == MeasuredValue::kTarget) {
        o += ",\"target\":";
        json_number(m.target, o);
      }
      if (m.kind != MeasuredValue::kInfo) {
        o += ",\"tolerance\":";
        json_number(m.tolerance, o);
        o += ",\"pass\":";
        o += m.passes() ? "true" : "false";
      }
      o += ",\"provenance\":\"";
      o += ref_name(m.ref);
      o += "\"}";
    }
    o += "],\"witnesses\":[";
    bool first_w = true;
    for (const auto& w : r.witnesses) {
      if (!first_w) o += ',';
      first_w = false;
      o += "{\"label\":";
      json_escape(w.label, o);
      o += ",\"rows\":" + std::to_string(w.rows);
      o += ",\"cols\":" + std::to_string(w.cols);
      o += ",\"data\":[";
      for (std::size_t i = 0; i < w.data.size(); ++i) {
        if (i) o += ',';
        json_number(w.data[i], o);
      }
      o += "]}";
    }
    o += "]}";
  }
  o += "]}";
  return o;
}

std::string to_csv(const SuiteResult& suite) {
  std::string o = "check,name,value,tolerance,pass,provenance\n";
  for (const auto& r : suite.reports) {
    for (const auto& m : r.measured) {
      o += r.check;
      o += ',';
      o += m.name;
      o += ',';
      o += format_double(m.value);
      o += ',';
      if (m.kind != MeasuredValue::kInfo) o += format_double(m.tolerance);
      o += ',';
      o += (m.kind == MeasuredValue::kInfo) ? "na" : (m.passes() ? "pass" : "fail");
      o += ',';
      o += ref_name(m.ref);
      o += '\n';
    }
  }
  return o;
}

void emit(const SuiteResult& suite, const std::string& format, const std::string& path) {
  std::string body;
  if (format == "json")
    body = to_json(suite);
  else if (format == "csv")
    body = to_csv(suite);
  else
    throw ConfigError("format: must be json or csv");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("emit: cannot open " + path);
  out << body;
  if (format == "json") out << '\n';
  out.close();
  if (!out) throw IoError("emit: write failed for " + path);
}

}  // namespace rig
