#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

namespace c0lat {

using Json = nlohmann::json;

struct Violation {
  std::size_t trial = 0;
  std::string kind;
  double residual = 0.0;
  Json witness = Json::object();
};

/// Outcome of a seeded verification run.
struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<Violation> violations;
  double max_residual = 0.0;
  bool passed = true;
  /// Largest residual per named check.
  Json metrics = Json::object();
  Json config = Json::object();

  void add_violation(Violation v) {
    note_residual(v.residual);
    violations.push_back(std::move(v));
    passed = false;
  }

  void note_residual(double r) {
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    max_residual = std::max(max_residual, r);
  }

  /// Tracks r under metrics[name] and the overall maximum.
  void note_metric(const std::string& name, double r) {
    note_residual(r);
    const double prev = metrics.contains(name) ? metrics[name].get<double>() : 0.0;
    metrics[name] = std::max(prev, r);
  }

  /// Tracks the smallest value seen; names carry a "min_" prefix.
  void note_min_metric(const std::string& name, double v) {
    const double prev = metrics.contains(name) ? metrics[name].get<double>() : std::numeric_limits<double>::infinity();
    metrics[name] = std::min(prev, v);
  }

  double metric(const std::string& name) const {
    return metrics.contains(name) ? metrics.at(name).get<double>() : 0.0;
  }

  /// Appends another report's findings, shifting its trial indices.
  void merge(const VerificationReport& other, std::size_t trial_offset = 0) {
    for (auto v : other.violations) {
      v.trial += trial_offset;
      add_violation(std::move(v));
    }
    note_residual(other.max_residual);
    for (const auto& [k, v] : other.metrics.items()) {
      if (k.rfind("min_", 0) == 0) {
        note_min_metric(k, v.get<double>());
      } else {
        note_metric(k, v.get<double>());
      }
    }
  }
};

namespace detail {

inline std::string format_json_double(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) return "0";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline void emit_stable(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map keeps keys sorted
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        emit_stable(it.value(), out, indent, depth + 1);
      }
      out += nl;
      out += close;
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += indent > 0 ? ", " : ",";
        first = false;
        emit_stable(v, out, indent, depth + 1);
      }
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_json_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace detail

/// Deterministic JSON text: sorted keys, doubles with 17 significant digits.
inline std::string stable_dump(const Json& j, int indent = 2) {
  std::string out;
  detail::emit_stable(j, out, indent, 0);
  return out;
}

inline Json report_to_json(const VerificationReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"trial", v.trial}, {"kind", v.kind}, {"residual", v.residual}, {"witness", v.witness}});
  }
  return {{"suite", r.suite},
          {"seed", r.seed},
          {"trials", r.trials},
          {"violations", violations},
          {"max_residual", r.max_residual},
          {"passed", r.passed},
          {"metrics", r.metrics},
          {"config", r.config}};
}

enum class RenderMode { text, json };

inline std::string report_render(const VerificationReport& r, RenderMode mode) {
  if (mode == RenderMode::json) return stable_dump(report_to_json(r)) + "\n";
  const std::string res = detail::format_json_double(r.max_residual);
  std::string out;
  if (r.passed) {
    out = "PASSED (" + std::to_string(r.trials) + " trials, max residual " + res + ")\n";
  } else {
    out = "FAILED (" + std::to_string(r.violations.size()) + " violations in " + std::to_string(r.trials) +
          " trials, max residual " + res + ")\n";
    for (const auto& v : r.violations) {
      out += "  trial " + std::to_string(v.trial) + ": " + v.kind + " residual " +
             detail::format_json_double(v.residual) + " witness " + stable_dump(v.witness, 0) + "\n";
    }
  }
  for (const auto& [k, v] : r.metrics.items()) out += "  " + k + " = " + detail::format_json_double(v.get<double>()) + "\n";
  return out;
}

}  // namespace c0lat
