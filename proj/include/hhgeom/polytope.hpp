#pragma once

#include "hhgeom/common.hpp"
#include "hhgeom/double_description.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <utility>

namespace hhgeom {

/// The closed halfspace {x : <normal, x> <= offset}.
struct Halfspace {
  Vector normal;
  double offset = 0.0;
};

namespace detail {

struct LocalFacet {
  Vector normal;  // unit normal in affine-hull coordinates
  double offset = 0.0;
  Incidence vertices;
};

struct PolytopeData {
  int ambient = 0;
  int affine = -1;  // -1 for the empty set
  PointList vertices;
  std::vector<Halfspace> halfspaces;
  Vector origin;  // vertex average
  Matrix frame;   // ambient x affine, orthonormal columns spanning aff(P) - origin
  PointList local_vertices;
  std::vector<LocalFacet> facets;
};

inline int affine_rank(const PointList& pts, const Incidence& subset) {
  std::vector<std::size_t> idx;
  for (auto k = subset.find_first(); k != Incidence::npos; k = subset.find_next(k))
    idx.push_back(k);
  if (idx.size() <= 1) return static_cast<int>(idx.size()) - 1;
  const Eigen::Index dim = pts[idx[0]].size();
  Matrix diffs(dim, static_cast<Eigen::Index>(idx.size() - 1));
  for (std::size_t j = 1; j < idx.size(); ++j)
    diffs.col(static_cast<Eigen::Index>(j - 1)) = pts[idx[j]] - pts[idx[0]];
  Eigen::FullPivLU<Matrix> lu(diffs);
  lu.setThreshold(1e-9);
  return static_cast<int>(lu.rank());
}

inline double coordinate_scale(const PointList& pts) {
  double s = 1.0;
  for (const auto& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return s;
}

}  // namespace detail

/// A convex polytope in R^n held in both vertex and halfspace form.
///
/// Values are immutable. The vertex list is hull-irredundant and the halfspace
/// list describes the same set; for bodies of lower affine dimension the
/// halfspace list also carries a pair of opposite inequalities per normal of
/// the affine hull.
class Polytope {
 public:
  Polytope() = default;

  int dim() const { return data_ ? data_->ambient : 0; }
  int affine_dim() const { return data_ ? data_->affine : -1; }
  bool empty() const { return affine_dim() < 0; }
  bool full_dimensional() const { return !empty() && affine_dim() == dim(); }

  const PointList& vertices() const& { return data().vertices; }
  PointList vertices() && { return data().vertices; }
  const std::vector<Halfspace>& halfspaces() const& { return data().halfspaces; }
  std::vector<Halfspace> halfspaces() && { return data().halfspaces; }
  std::size_t num_vertices() const { return data_ ? data_->vertices.size() : 0; }

  bool contains(const Vector& x, double tol = kGeomEps) const {
    if (empty()) return false;
    const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
    for (const auto& h : data_->halfspaces)
      if (h.normal.dot(x) > h.offset + tol * scale) return false;
    return true;
  }

  const detail::PolytopeData& data() const {
    static const detail::PolytopeData kEmpty{};
    return data_ ? *data_ : kEmpty;
  }

  static Polytope empty_set(int n) {
    auto d = std::make_shared<detail::PolytopeData>();
    d->ambient = n;
    d->affine = -1;
    d->origin = Vector::Zero(n);
    return Polytope(std::move(d));
  }

  explicit Polytope(std::shared_ptr<const detail::PolytopeData> d) : data_(std::move(d)) {}

 private:
  std::shared_ptr<const detail::PolytopeData> data_;
};

namespace detail {

inline void check_ambient(int n) {
  require(n >= 1 && n <= kMaxDim,
          "ambient dimension must lie in [1, " + std::to_string(kMaxDim) + "]");
}

inline std::vector<Halfspace> lift_halfspaces(const PolytopeData& d, const Matrix& complement) {
  std::vector<Halfspace> out;
  for (const auto& f : d.facets) {
    Halfspace h;
    h.normal = d.frame * f.normal;
    h.offset = f.offset + h.normal.dot(d.origin);
    out.push_back(std::move(h));
  }
  for (Eigen::Index c = 0; c < complement.cols(); ++c) {
    const Vector u = complement.col(c);
    const double b = u.dot(d.origin);
    out.push_back({u, b});
    out.push_back({-u, -b});
  }
  return out;
}

}  // namespace detail

/// Irredundant convex hull of a finite point set. Coincident points are merged.
inline Polytope hull(const PointList& input) {
  require(!input.empty(), "hull: empty point set");
  const int n = static_cast<int>(input.front().size());
  detail::check_ambient(n);
  for (const auto& p : input) {
    require(p.size() == n, "hull: points of inconsistent dimension");
    require(p.allFinite(), "hull: non-finite coordinate");
  }

  const double scale = detail::coordinate_scale(input);
  PointList pts;
  for (const auto& p : input) {
    bool dup = false;
    for (const auto& q : pts)
      if ((p - q).cwiseAbs().maxCoeff() <= kGeomEps * scale) {
        dup = true;
        break;
      }
    if (!dup) pts.push_back(p);
  }

  auto d = std::make_shared<detail::PolytopeData>();
  d->ambient = n;
  Vector c = Vector::Zero(n);
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  d->origin = c;

  Matrix centered(n, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t k = 0; k < pts.size(); ++k)
    centered.col(static_cast<Eigen::Index>(k)) = pts[k] - c;
  Eigen::JacobiSVD<Matrix> svd(centered, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  int k = 0;
  for (Eigen::Index j = 0; j < sv.size(); ++j)
    if (sv[j] > kGeomEps * scale * std::sqrt(static_cast<double>(pts.size()))) ++k;
  d->affine = k;
  d->frame = svd.matrixU().leftCols(k);
  const Matrix complement = svd.matrixU().rightCols(n - k);

  if (k == 0) {
    d->vertices = {pts.front()};
    d->local_vertices = {Vector::Zero(0)};
    d->origin = pts.front();
    d->halfspaces = detail::lift_halfspaces(*d, complement);
    return Polytope(std::move(d));
  }

  PointList local;
  for (const auto& p : pts) local.push_back(d->frame.transpose() * (p - c));

  // Facets of the hull are the vertices of the polar body {z : <y, z> <= 1}.
  Matrix A(static_cast<Eigen::Index>(local.size()), k);
  for (std::size_t j = 0; j < local.size(); ++j) A.row(static_cast<Eigen::Index>(j)) = local[j];
  const Vector ones = Vector::Ones(A.rows());
  const auto polar = detail::enumerate_vertices(A, ones);

  const std::size_t np = local.size();
  std::vector<std::vector<std::size_t>> facets_at(np);
  for (std::size_t f = 0; f < polar.vertices.size(); ++f)
    for (auto j = polar.tight[f].find_first(); j != detail::Incidence::npos;
         j = polar.tight[f].find_next(j))
      facets_at[j].push_back(f);

  std::vector<long> vertex_index(np, -1);
  for (std::size_t j = 0; j < np; ++j) {
    if (facets_at[j].size() < static_cast<std::size_t>(k)) continue;
    Matrix normals(static_cast<Eigen::Index>(facets_at[j].size()), k);
    for (std::size_t r = 0; r < facets_at[j].size(); ++r)
      normals.row(static_cast<Eigen::Index>(r)) = polar.vertices[facets_at[j][r]].normalized();
    Eigen::FullPivLU<Matrix> lu(normals);
    lu.setThreshold(1e-9);
    if (lu.rank() == k) {
      vertex_index[j] = static_cast<long>(d->vertices.size());
      d->vertices.push_back(pts[j]);
      d->local_vertices.push_back(local[j]);
    }
  }

  const std::size_t nv = d->vertices.size();
  for (std::size_t f = 0; f < polar.vertices.size(); ++f) {
    detail::LocalFacet lf;
    const double len = polar.vertices[f].norm();
    lf.normal = polar.vertices[f] / len;
    lf.offset = 1.0 / len;
    lf.vertices.resize(nv);
    for (auto j = polar.tight[f].find_first(); j != detail::Incidence::npos;
         j = polar.tight[f].find_next(j))
      if (vertex_index[j] >= 0) lf.vertices.set(static_cast<std::size_t>(vertex_index[j]));
    d->facets.push_back(std::move(lf));
  }
  d->halfspaces = detail::lift_halfspaces(*d, complement);
  return Polytope(std::move(d));
}

/// Builds a polytope from a bounded halfspace system in R^n.
inline Polytope from_halfspaces(int n, const std::vector<Halfspace>& hs) {
  detail::check_ambient(n);
  require(!hs.empty(), "from_halfspaces: no halfspaces");
  Matrix A(static_cast<Eigen::Index>(hs.size()), n);
  Vector b(static_cast<Eigen::Index>(hs.size()));
  for (std::size_t j = 0; j < hs.size(); ++j) {
    require(hs[j].normal.size() == n, "from_halfspaces: normal of wrong dimension");
    A.row(static_cast<Eigen::Index>(j)) = hs[j].normal;
    b[static_cast<Eigen::Index>(j)] = hs[j].offset;
  }
  const auto ve = detail::enumerate_vertices(A, b);
  if (ve.vertices.empty()) return Polytope::empty_set(n);

  Vector c = Vector::Zero(n);
  for (const auto& v : ve.vertices) c += v;
  c /= static_cast<double>(ve.vertices.size());
  detail::Incidence all(ve.vertices.size());
  all.set();
  if (detail::affine_rank(ve.vertices, all) < n) return hull(ve.vertices);

  auto d = std::make_shared<detail::PolytopeData>();
  d->ambient = n;
  d->affine = n;
  d->origin = c;
  d->frame = Matrix::Identity(n, n);
  d->vertices = ve.vertices;
  for (const auto& v : ve.vertices) d->local_vertices.push_back(v - c);

  const std::size_t nv = ve.vertices.size();
  std::vector<detail::Incidence> seen;
  for (std::size_t j = 0; j < hs.size(); ++j) {
    detail::Incidence inc(nv);
    for (std::size_t v = 0; v < nv; ++v)
      if (ve.tight[v].test(j)) inc.set(v);
    if (inc.count() < static_cast<std::size_t>(n)) continue;
    if (std::find(seen.begin(), seen.end(), inc) != seen.end()) continue;
    if (detail::affine_rank(ve.vertices, inc) != n - 1) continue;
    seen.push_back(inc);
    detail::LocalFacet lf;
    const double len = hs[j].normal.norm();
    lf.normal = hs[j].normal / len;
    lf.offset = hs[j].offset / len - lf.normal.dot(c);
    lf.vertices = std::move(inc);
    d->facets.push_back(std::move(lf));
  }
  d->halfspaces = detail::lift_halfspaces(*d, Matrix(n, 0));
  return Polytope(std::move(d));
}

/// Returns P with its minimal halfspace description populated.
inline Polytope to_hrep(const Polytope& p) {
  if (p.empty()) return p;
  return p.halfspaces().empty() && p.affine_dim() > 0 ? hull(p.vertices()) : p;
}

/// Returns P with its irredundant vertex list populated.
inline Polytope to_vrep(const Polytope& p) { return p; }

/// Applies x -> A x + b to every vertex.
inline Polytope affine_image(const Polytope& p, const Matrix& A, const Vector& b) {
  require(A.cols() == p.dim() && b.size() == A.rows(), "affine_image: shape mismatch");
  if (p.empty()) return Polytope::empty_set(static_cast<int>(A.rows()));
  PointList pts;
  for (const auto& v : p.vertices()) pts.push_back(A * v + b);
  return hull(pts);
}

/// h(P, x) = max over vertices of <x, v>.
inline double support(const Polytope& p, const Vector& x) {
  require(x.size() == p.dim(), "support: direction of wrong dimension");
  require(x.norm() > 0, "support: zero direction");
  require(!p.empty(), "support: empty polytope");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : p.vertices()) best = std::max(best, x.dot(v));
  return best;
}

/// True when the vertex set equals its reflection through the origin.
inline bool is_origin_symmetric(const Polytope& p, double tol = kGeomEps) {
  if (p.empty()) return false;
  const double scale = detail::coordinate_scale(p.vertices());
  for (const auto& v : p.vertices()) {
    bool found = false;
    for (const auto& w : p.vertices())
      if ((v + w).cwiseAbs().maxCoeff() <= tol * scale) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

}  // namespace hhgeom
