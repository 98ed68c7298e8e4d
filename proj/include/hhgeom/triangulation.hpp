#pragma once

#include "hhgeom/polytope.hpp"

#include <map>
#include <set>

namespace hhgeom {

/// A k-simplex with k + 1 affinely independent vertices in R^n (k <= n).
struct Simplex {
  PointList vertices;

  int order() const { return static_cast<int>(vertices.size()) - 1; }

  /// k-dimensional volume from the Gram determinant of the edge vectors.
  double volume() const {
    const int k = order();
    if (k <= 0) return 0.0;
    Matrix E(vertices[0].size(), k);
    for (int j = 0; j < k; ++j) E.col(j) = vertices[static_cast<std::size_t>(j) + 1] - vertices[0];
    const double gram = (E.transpose() * E).determinant();
    return std::sqrt(std::max(0.0, gram)) / std::tgamma(k + 1.0);
  }

  Vector centroid() const {
    Vector c = Vector::Zero(vertices[0].size());
    for (const auto& v : vertices) c += v;
    return c / static_cast<double>(vertices.size());
  }
};

namespace detail {

/// Simplices of P in affine-hull coordinates, as columns of a k x (k+1) matrix.
/// Fan over the facets from the vertex average, recursing through faces found
/// as intersections of vertex-facet incidences.
inline std::vector<Matrix> local_simplices(const PolytopeData& d) {
  std::vector<Matrix> out;
  const int k = d.affine;
  if (k <= 0) return out;
  const auto& pts = d.local_vertices;

  std::vector<Vector> anchors;
  auto emit = [&](const Incidence& face) {
    Matrix s(k, k + 1);
    int col = 0;
    for (const auto& a : anchors) s.col(col++) = a;
    for (auto j = face.find_first(); j != Incidence::npos; j = face.find_next(j))
      s.col(col++) = pts[j];
    out.push_back(std::move(s));
  };

  auto fan = [&](auto&& self, const Incidence& face, int face_dim) -> void {
    if (face.count() == static_cast<std::size_t>(face_dim) + 1) {
      emit(face);
      return;
    }
    Vector anchor = Vector::Zero(k);
    for (auto j = face.find_first(); j != Incidence::npos; j = face.find_next(j))
      anchor += pts[j];
    anchor /= static_cast<double>(face.count());
    std::set<Incidence> subfaces;
    for (const auto& f : d.facets) {
      Incidence s = face & f.vertices;
      if (s == face || s.count() < static_cast<std::size_t>(face_dim)) continue;
      if (subfaces.count(s)) continue;
      if (affine_rank(pts, s) == face_dim - 1) subfaces.insert(std::move(s));
    }
    anchors.push_back(anchor);
    for (const auto& s : subfaces) self(self, s, face_dim - 1);
    anchors.pop_back();
  };

  Incidence all(pts.size());
  all.set();
  fan(fan, all, k);
  return out;
}

inline double local_simplex_volume(const Matrix& s) {
  const Eigen::Index k = s.rows();
  Matrix E(k, k);
  for (Eigen::Index j = 0; j < k; ++j) E.col(j) = s.col(j + 1) - s.col(0);
  return std::abs(E.determinant()) / std::tgamma(static_cast<double>(k) + 1.0);
}

inline Vector lift(const PolytopeData& d, const Vector& local) { return d.origin + d.frame * local; }

}  // namespace detail

/// Triangulation of P into simplices with disjoint relative interiors,
/// computed within aff(P) and returned in ambient coordinates.
inline std::vector<Simplex> triangulate(const Polytope& p) {
  std::vector<Simplex> out;
  const auto& d = p.data();
  for (const auto& s : detail::local_simplices(d)) {
    Simplex simplex;
    for (Eigen::Index j = 0; j < s.cols(); ++j) simplex.vertices.push_back(detail::lift(d, s.col(j)));
    out.push_back(std::move(simplex));
  }
  return out;
}

/// Volume of P measured in its affine hull; 0 for the empty set and for points.
inline double volume(const Polytope& p) {
  double v = 0.0;
  for (const auto& s : detail::local_simplices(p.data())) v += detail::local_simplex_volume(s);
  return v;
}

/// Center of mass of P with respect to volume in aff(P).
inline Vector centroid(const Polytope& p) {
  require(!p.empty(), "centroid: empty polytope");
  const auto& d = p.data();
  if (d.affine == 0) return d.vertices.front();
  Vector acc = Vector::Zero(d.affine);
  double total = 0.0;
  for (const auto& s : detail::local_simplices(d)) {
    const double v = detail::local_simplex_volume(s);
    acc += v * s.rowwise().mean();
    total += v;
  }
  return detail::lift(d, acc / total);
}

/// Volume of P in the Lebesgue measure of dimension `measure_dim`: zero when
/// the affine hull of P is smaller than that.
inline double volume_in_dimension(const Polytope& p, int measure_dim) {
  if (p.affine_dim() < measure_dim) return 0.0;
  return volume(p);
}

}  // namespace hhgeom
