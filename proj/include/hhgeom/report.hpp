#pragma once

#include "hhgeom/common.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace hhgeom {

enum class Verdict { pass, fail, equality };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::equality: return "equality";
  }
  return "unknown";
}

/// Outcome of checking lhs <= rhs for one instance.
///
/// `equality` means |rhs - lhs| <= tolerance; otherwise `pass` means
/// lhs <= rhs + tolerance. Both count as the inequality holding.
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double slack = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::fail;
  std::string lhs_method;
  std::string rhs_method;
  double lhs_std_error = 0.0;
  double rhs_std_error = 0.0;
  std::uint64_t seed = 0;
  nlohmann::json instance = nlohmann::json::object();
  std::map<std::string, double> details;

  bool holds() const { return verdict != Verdict::fail; }
};

inline Verdict decide(double lhs, double rhs, double tolerance) {
  if (std::abs(rhs - lhs) <= tolerance) return Verdict::equality;
  return lhs <= rhs + tolerance ? Verdict::pass : Verdict::fail;
}

/// Fills ratio, slack and verdict from lhs, rhs and tolerance.
inline InequalityReport& finalize(InequalityReport& r) {
  r.slack = r.rhs - r.lhs;
  r.ratio = r.rhs != 0.0 ? r.lhs / r.rhs : (r.lhs == 0.0 ? 1.0 : INFINITY);
  r.verdict = decide(r.lhs, r.rhs, r.tolerance);
  return r;
}

/// Relative tolerance used for exact (triangulation / quadrature) paths.
inline double exact_tolerance(double lhs, double rhs) {
  return kGeomEps * std::max({1e-300, std::abs(lhs), std::abs(rhs)});
}

/// Tolerance for Monte Carlo paths: three standard errors plus kNumEps.
inline double mc_tolerance(double std_error) { return 3.0 * std_error + kNumEps; }

inline nlohmann::json report_to_json(const InequalityReport& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["ratio"] = r.ratio;
  j["slack"] = r.slack;
  j["tolerance"] = r.tolerance;
  j["verdict"] = std::string(to_string(r.verdict));
  j["lhs_method"] = r.lhs_method;
  j["rhs_method"] = r.rhs_method;
  j["lhs_std_error"] = r.lhs_std_error;
  j["rhs_std_error"] = r.rhs_std_error;
  j["seed"] = r.seed;
  j["details"] = r.details;
  j["instance"] = r.instance;
  return j;
}

}  // namespace hhgeom
