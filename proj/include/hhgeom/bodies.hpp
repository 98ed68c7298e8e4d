#pragma once

#include "hhgeom/polytope.hpp"
#include "hhgeom/random.hpp"

#include <algorithm>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

namespace hhgeom {

enum class BodyTag {
  cube,
  cross_polytope,
  regular_mgon_prism,
  cone_over_base,
  generalized_cylinder,
  scaled_slab_body,
  random_hull,
};

inline std::string_view to_string(BodyTag tag) {
  switch (tag) {
    case BodyTag::cube: return "cube";
    case BodyTag::cross_polytope: return "cross_polytope";
    case BodyTag::regular_mgon_prism: return "regular_mgon_prism";
    case BodyTag::cone_over_base: return "cone_over_base";
    case BodyTag::generalized_cylinder: return "generalized_cylinder";
    case BodyTag::scaled_slab_body: return "scaled_slab_body";
    case BodyTag::random_hull: return "random_hull";
  }
  return "unknown";
}

/// Accepts the canonical names, hyphenated spellings and the short forms
/// scaled_slab, cylinder, cone, cross, mgon_prism and random.
inline BodyTag body_tag_from_string(std::string_view s) {
  std::string key(s);
  std::replace(key.begin(), key.end(), '-', '_');
  for (auto t : {BodyTag::cube, BodyTag::cross_polytope, BodyTag::regular_mgon_prism,
                 BodyTag::cone_over_base, BodyTag::generalized_cylinder,
                 BodyTag::scaled_slab_body, BodyTag::random_hull})
    if (to_string(t) == key) return t;
  static const std::pair<std::string_view, BodyTag> aliases[] = {
      {"scaled_slab", BodyTag::scaled_slab_body}, {"cylinder", BodyTag::generalized_cylinder},
      {"cone", BodyTag::cone_over_base},          {"cross", BodyTag::cross_polytope},
      {"mgon_prism", BodyTag::regular_mgon_prism}, {"random", BodyTag::random_hull}};
  for (const auto& [name, tag] : aliases)
    if (name == key) return tag;
  throw Error("unknown body family '" + std::string(s) + "'");
}

/// Parameters of a constructible body. Fields not used by a family are ignored.
struct BodyFamily {
  BodyTag tag = BodyTag::cube;
  int n = 3;          // ambient dimension
  int i = 1;          // scaled_slab_body: dimension of the slab subspace
  int m = 8;          // regular_mgon_prism: polygon vertex count
  double half_width = 1.0;
  std::optional<Polytope> base;  // cone_over_base base; C0 of cylinder and slab bodies
  std::optional<Polytope> c1;    // scaled_slab_body C1
  Vector apex;
  Vector x0;
  std::uint64_t seed = 0;
  int count = 0;  // random_hull point count
  bool symmetric = false;
};

/// [-w, w]^n.
inline Polytope cube(int n, double half_width = 1.0) {
  PointList pts;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Vector v(n);
    for (int j = 0; j < n; ++j) v[j] = (mask >> j) & 1u ? half_width : -half_width;
    pts.push_back(std::move(v));
  }
  return hull(pts);
}

/// [lo, hi]^n.
inline Polytope box(int n, double lo, double hi) {
  PointList pts;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Vector v(n);
    for (int j = 0; j < n; ++j) v[j] = (mask >> j) & 1u ? hi : lo;
    pts.push_back(std::move(v));
  }
  return hull(pts);
}

inline Polytope cross_polytope(int n) {
  PointList pts;
  for (int j = 0; j < n; ++j) {
    pts.push_back(unit_vector(n, j));
    pts.push_back(-unit_vector(n, j));
  }
  return hull(pts);
}

/// Regular m-gon inscribed in the unit circle of the first two coordinates,
/// times [-1, 1]^{n-2}. For n = 2 it is the polygon itself.
inline Polytope regular_mgon_prism(int m, int n = 2) {
  require(m >= 3, "regular_mgon_prism: need m >= 3");
  require(n >= 2, "regular_mgon_prism: need n >= 2");
  PointList pts;
  for (int k = 0; k < m; ++k) {
    const double a = 2.0 * std::numbers::pi * k / m;
    for (unsigned mask = 0; mask < (1u << (n - 2)); ++mask) {
      Vector v(n);
      v[0] = std::cos(a);
      v[1] = std::sin(a);
      for (int j = 2; j < n; ++j) v[j] = (mask >> (j - 2)) & 1u ? 1.0 : -1.0;
      pts.push_back(std::move(v));
    }
  }
  return hull(pts);
}

/// conv(base x {0} u {apex}) for a base living in R^{n-1}.
inline Polytope cone_over_base(const Polytope& base, const Vector& apex) {
  const int n = base.dim() + 1;
  require(apex.size() == n, "cone_over_base: apex must have dimension base.dim() + 1");
  require(!base.empty(), "cone_over_base: empty base");
  PointList pts;
  for (const auto& b : base.vertices()) {
    Vector v = Vector::Zero(n);
    v.head(n - 1) = b;
    pts.push_back(std::move(v));
  }
  pts.push_back(apex);
  return hull(pts);
}

/// [-x0, x0] + ({0} x C0) for a 0-symmetric C0 in R^{n-1}.
inline Polytope generalized_cylinder(const Vector& x0, const Polytope& c0) {
  const int n = static_cast<int>(x0.size());
  require(c0.dim() == n - 1, "generalized_cylinder: C0 must live in R^{n-1}");
  require(x0[0] > 0, "generalized_cylinder: need (x0)_1 > 0");
  require(is_origin_symmetric(c0), "generalized_cylinder: C0 must be 0-symmetric");
  PointList pts;
  for (const auto& c : c0.vertices())
    for (double sign : {-1.0, 1.0}) {
      Vector v = sign * x0;
      v.tail(n - 1) += c;
      pts.push_back(std::move(v));
    }
  return hull(pts);
}

/// {(t, y, z) : t in [-1, 1], y in C0, z in (1 + t) C1} with C0 a 0-symmetric
/// body in R^{i-1} (absent when i = 1) and C1 a body in R^{n-i}.
inline Polytope scaled_slab_body(int n, int i, const std::optional<Polytope>& c0,
                                 const Polytope& c1) {
  require(i >= 1 && i < n, "scaled_slab_body: need 1 <= i < n");
  require(c1.dim() == n - i, "scaled_slab_body: C1 must live in R^{n-i}");
  require(!c1.empty(), "scaled_slab_body: empty C1");
  PointList c0_points;
  if (i == 1) {
    c0_points.push_back(Vector::Zero(0));
  } else {
    require(c0.has_value() && c0->dim() == i - 1, "scaled_slab_body: C0 must live in R^{i-1}");
    require(is_origin_symmetric(*c0), "scaled_slab_body: C0 must be 0-symmetric");
    c0_points = c0->vertices();
  }
  PointList pts;
  for (const auto& y : c0_points)
    for (const auto& z : c1.vertices())
      for (double t : {-1.0, 1.0}) {
        Vector v(n);
        v[0] = t;
        v.segment(1, i - 1) = y;
        v.tail(n - i) = (1.0 + t) * z;
        pts.push_back(std::move(v));
      }
  return hull(pts);
}

/// Hull of `count` uniform points of [-1, 1]^n; with `symmetric` the point set
/// is closed under x -> -x first.
inline Polytope random_hull(int n, int count, Rng& rng, bool symmetric = false) {
  require(count >= 1, "random_hull: need at least one point");
  PointList pts;
  for (int k = 0; k < count; ++k) {
    Vector v = rng.uniform_cube(n);
    if (symmetric) pts.push_back(-v);
    pts.push_back(std::move(v));
  }
  return hull(pts);
}

/// Random hull whose projection onto the first coordinate is exactly [-1, 1].
inline Polytope random_slab_normalized(int n, int count, Rng& rng) {
  require(count >= 2, "random_slab_normalized: need at least two points");
  PointList pts;
  for (int k = 0; k < count; ++k) {
    Vector v = rng.uniform_cube(n);
    if (k == 0) v[0] = -1.0;
    if (k == 1) v[0] = 1.0;
    pts.push_back(std::move(v));
  }
  return hull(pts);
}

/// Random hull whose projection onto lin{e_1..e_i} is 0-symmetric: each point
/// is paired with one whose first i coordinates are negated and whose
/// remaining coordinates are fresh.
inline Polytope random_projection_symmetric(int n, int i, int count, Rng& rng) {
  PointList pts;
  for (int k = 0; k < count; ++k) {
    Vector v = rng.uniform_cube(n);
    Vector w = rng.uniform_cube(n);
    w.head(i) = -v.head(i);
    pts.push_back(std::move(v));
    pts.push_back(std::move(w));
  }
  return hull(pts);
}

inline Polytope make_body(const BodyFamily& family) {
  switch (family.tag) {
    case BodyTag::cube:
      return cube(family.n, family.half_width);
    case BodyTag::cross_polytope:
      return cross_polytope(family.n);
    case BodyTag::regular_mgon_prism:
      return regular_mgon_prism(family.m, family.n);
    case BodyTag::cone_over_base:
      require(family.base.has_value(), "cone_over_base: base required");
      return cone_over_base(*family.base,
                            family.apex.size() ? family.apex : unit_vector(family.base->dim() + 1,
                                                                       family.base->dim()));
    case BodyTag::generalized_cylinder:
      require(family.base.has_value(), "generalized_cylinder: C0 required");
      return generalized_cylinder(family.x0.size() ? family.x0 : unit_vector(family.base->dim() + 1, 0),
                                  *family.base);
    case BodyTag::scaled_slab_body: {
      const Polytope c1 = family.c1 ? *family.c1 : box(family.n - family.i, 0.0, 1.0);
      std::optional<Polytope> c0 = family.base;
      if (!c0 && family.i > 1) c0 = cube(family.i - 1);
      return scaled_slab_body(family.n, family.i, c0, c1);
    }
    case BodyTag::random_hull: {
      Rng rng(family.seed);
      return random_hull(family.n, family.count > 0 ? family.count : 2 * family.n + 2, rng,
                         family.symmetric);
    }
  }
  throw Error("make_body: unknown family");
}

}  // namespace hhgeom
