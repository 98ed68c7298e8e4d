#pragma once

// JSON formats for bodies, subspaces and body families; CSV for profiles.

#include "hhgeom/bodies.hpp"
#include "hhgeom/marginals.hpp"
#include "hhgeom/symmetrize.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hhgeom {

using json = nlohmann::json;

inline json vector_to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index j = 0; j < v.size(); ++j) a.push_back(v[j]);
  return a;
}

inline Vector vector_from_json(const json& j) {
  require(j.is_array(), "expected a JSON array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    require(j[k].is_number(), "expected a number");
    v[static_cast<Eigen::Index>(k)] = j[k].get<double>();
  }
  return v;
}

/// {"dim": n, "vertices": [[...], ...]}
inline json body_to_json(const Polytope& p) {
  json j;
  j["dim"] = p.dim();
  j["vertices"] = json::array();
  for (const auto& v : p.vertices()) j["vertices"].push_back(vector_to_json(v));
  return j;
}

/// Accepts the V-form {"dim", "vertices"} or the H-form {"dim", "halfspaces": [{"a", "b"}]}.
inline Polytope body_from_json(const json& j) {
  require(j.is_object() && j.contains("dim"), "body JSON needs a \"dim\" field");
  const int n = j.at("dim").get<int>();
  require(n >= 1 && n <= kMaxDim, "body JSON: dim out of range");
  if (j.contains("vertices")) {
    PointList pts;
    for (const auto& v : j.at("vertices")) {
      pts.push_back(vector_from_json(v));
      require(pts.back().size() == n, "body JSON: vertex dimension does not match dim");
    }
    return hull(pts);
  }
  require(j.contains("halfspaces"), "body JSON needs \"vertices\" or \"halfspaces\"");
  std::vector<Halfspace> hs;
  for (const auto& h : j.at("halfspaces")) {
    Halfspace s{vector_from_json(h.at("a")), h.at("b").get<double>()};
    require(s.normal.size() == n, "body JSON: halfspace normal does not match dim");
    hs.push_back(std::move(s));
  }
  return from_halfspaces(n, hs);
}

/// {"ambient": n, "basis": [[...], ...]}, orthonormalized on load.
inline json subspace_to_json(const Subspace& h) {
  json j;
  j["ambient"] = h.ambient();
  j["basis"] = json::array();
  for (int c = 0; c < h.dim(); ++c) j["basis"].push_back(vector_to_json(h.basis().col(c)));
  return j;
}

inline Subspace subspace_from_json(const json& j) {
  require(j.is_object() && j.contains("ambient") && j.contains("basis"),
          "subspace JSON needs \"ambient\" and \"basis\"");
  PointList vs;
  for (const auto& v : j.at("basis")) vs.push_back(vector_from_json(v));
  return Subspace::span(j.at("ambient").get<int>(), vs);
}

inline json family_to_json(const BodyFamily& f) {
  json j;
  j["family"] = std::string(to_string(f.tag));
  j["n"] = f.n;
  j["i"] = f.i;
  j["m"] = f.m;
  j["half_width"] = f.half_width;
  if (f.base) j["base"] = body_to_json(*f.base);
  if (f.c1) j["c1"] = body_to_json(*f.c1);
  if (f.apex.size()) j["apex"] = vector_to_json(f.apex);
  if (f.x0.size()) j["x0"] = vector_to_json(f.x0);
  j["seed"] = f.seed;
  j["count"] = f.count;
  j["symmetric"] = f.symmetric;
  return j;
}

inline BodyFamily family_from_json(const json& j) {
  require(j.is_object() && j.contains("family"), "family JSON needs a \"family\" field");
  BodyFamily f;
  f.tag = body_tag_from_string(j.at("family").get<std::string>());
  f.n = j.value("n", f.n);
  f.i = j.value("i", f.i);
  f.m = j.value("m", f.m);
  f.half_width = j.value("half_width", f.half_width);
  if (j.contains("base")) f.base = body_from_json(j.at("base"));
  if (j.contains("c0")) f.base = body_from_json(j.at("c0"));
  if (j.contains("c1")) f.c1 = body_from_json(j.at("c1"));
  if (j.contains("apex")) f.apex = vector_from_json(j.at("apex"));
  if (j.contains("x0")) f.x0 = vector_from_json(j.at("x0"));
  f.seed = j.value("seed", std::uint64_t{0});
  f.count = j.value("count", 0);
  f.symmetric = j.value("symmetric", false);
  return f;
}

/// Rows "t,r_t" with a header line.
inline std::string profile_to_csv(const SchwarzProfile& p) {
  std::string out = "t,r_t\n";
  char buf[64];
  for (std::size_t j = 0; j < p.t.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.t[j], p.r[j]);
    out += buf;
  }
  return out;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("malformed JSON in '" + path + "': " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), "cannot write '" + path + "'");
  out << text;
}

}  // namespace hhgeom
