#pragma once

// Structured experiment results and their JSON / CSV serialization.
// JSON keys keep insertion order and every floating-point number is printed
// with 17 significant digits, so identical runs give identical bytes.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace leray {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

/// A pass/fail assertion with its tolerance spelled out.
struct Check {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string relation;  // ">=", "<=", "within", "true"
  bool pass = false;
};

inline Check check_at_least(std::string name, double value, double bound, double tol = 0.0) {
  return {std::move(name), value, bound, tol, ">=", value >= bound - tol};
}
inline Check check_at_most(std::string name, double value, double bound, double tol = 0.0) {
  return {std::move(name), value, bound, tol, "<=", value <= bound + tol};
}
inline Check check_within(std::string name, double value, double target, double tol) {
  return {std::move(name), value, target, tol, "within", std::abs(value - target) <= tol};
}
inline Check check_true(std::string name, bool ok) { return {std::move(name), ok ? 1.0 : 0.0, 1.0, 0.0, "true", ok}; }

/// Compact number for labels.
inline std::string format_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct PowerFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};

struct ExperimentReport {
  std::string id;
  Json params = Json::object();
  std::vector<std::string> columns;
  std::vector<Json> rows;
  std::optional<PowerFit> fit;
  Json summary = Json::object();
  std::vector<Check> checks;
  std::vector<ExperimentReport> parts;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    for (const auto& p : parts)
      if (!p.pass()) return false;
    return true;
  }

  Json to_json() const;
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void dump(const Json& j, std::ostringstream& os, int indent, int level) {
  const std::string pad(static_cast<std::size_t>(indent * (level + 1)), ' ');
  const std::string pad_end(static_cast<std::size_t>(indent * level), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        dump(it.value(), os, indent, level + 1);
      }
      os << "\n" << pad_end << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) os << ",\n";
        first = false;
        os << pad;
        dump(e, os, indent, level + 1);
      }
      os << "\n" << pad_end << "]";
      return;
    }
    case Json::value_t::number_float: os << format_double(j.get<double>()); return;
    default: os << j.dump(); return;
  }
}

inline std::string csv_cell(const Json& v) {
  switch (v.type()) {
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      return std::isfinite(d) ? format_double(d) : std::string();
    }
    case Json::value_t::string: {
      const auto s = v.get<std::string>();
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    }
    case Json::value_t::null: return "";
    default: return v.dump();
  }
}

}  // namespace detail

inline std::string to_json_string(const Json& j) {
  std::ostringstream os;
  detail::dump(j, os, 2, 0);
  os << "\n";
  return os.str();
}

inline Json ExperimentReport::to_json() const {
  Json j;
  j["experiment"] = id;
  j["params"] = params;
  for (auto it = summary.begin(); it != summary.end(); ++it) j[it.key()] = it.value();
  if (fit) j["fit"] = Json{{"slope", fit->slope}, {"intercept", fit->intercept}, {"residual", fit->residual}};
  if (!columns.empty() || !rows.empty()) {
    j["columns"] = columns;
    j["rows"] = rows;
  }
  Json cs = Json::array();
  for (const auto& c : checks)
    cs.push_back(Json{{"name", c.name},
                      {"value", c.value},
                      {"relation", c.relation},
                      {"target", c.target},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  j["checks"] = cs;
  if (!parts.empty()) {
    Json ps = Json::array();
    for (const auto& p : parts) ps.push_back(p.to_json());
    j["parts"] = ps;
  }
  j["pass"] = pass();
  j["provenance"] = Json{{"version", kVersion},
                         {"config_hash", [&] {
                            char buf[20];
                            std::snprintf(buf, sizeof buf, "%016llx",
                                          static_cast<unsigned long long>(detail::fnv1a(to_json_string(params))));
                            return std::string(buf);
                          }()}};
  return j;
}

inline std::string to_csv(const ExperimentReport& r) {
  std::ostringstream os;
  if (!r.columns.empty()) {
    for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
    os << "\n";
    for (const auto& row : r.rows) {
      for (std::size_t i = 0; i < r.columns.size(); ++i) {
        const auto it = row.find(r.columns[i]);
        os << (i ? "," : "") << (it == row.end() ? std::string() : detail::csv_cell(*it));
      }
      os << "\n";
    }
  }
  for (const auto& p : r.parts) {
    if (os.tellp() > 0) os << "\n";
    os << "# " << p.id << "\n" << to_csv(p);
  }
  return os.str();
}

enum class Format { Json, Csv };

inline std::string render(const ExperimentReport& r, Format f) {
  return f == Format::Json ? to_json_string(r.to_json()) : to_csv(r);
}

/// Writes the rendered report to `path` through a temporary file and a rename,
/// so a failed write never leaves a partial report behind.
inline void emit_report(const ExperimentReport& r, Format f, const std::filesystem::path& path) {
  const std::string text = render(r, f);
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  if (!std::filesystem::is_directory(dir)) throw std::runtime_error("output directory does not exist: " + dir.string());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move report into place: " + path.string());
  }
}

}  // namespace leray
