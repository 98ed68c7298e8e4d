#pragma once

// Vertex enumeration for bounded polyhedra {x : A x <= b} by the
// double-description method on the homogenized cone
// {(x, s) : A x - b s <= 0, s >= 0}.

#include "hhgeom/common.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hhgeom::detail {

using Incidence = boost::dynamic_bitset<>;

struct VertexEnumeration {
  PointList vertices;
  /// tight[v] holds the indices of the rows of A that are active at vertices[v].
  std::vector<Incidence> tight;
};

/// Enumerates the vertices of {x : A x <= b}. Throws when the polyhedron is
/// unbounded; returns no vertices when it is empty.
inline VertexEnumeration enumerate_vertices(const Matrix& A, const Vector& b,
                                            double eps = 1e-10) {
  const Eigen::Index m = A.rows();
  const Eigen::Index d = A.cols();
  const Eigen::Index D = d + 1;
  const Eigen::Index rows = m + 1;

  Matrix H(rows, D);
  H.topLeftCorner(m, d) = A;
  H.topRightCorner(m, 1) = -b;
  H.row(m).setZero();
  H(m, d) = -1.0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double len = H.row(r).norm();
    if (len > 0) H.row(r) /= len;
  }

  // Greedy choice of D independent rows, starting with s >= 0.
  std::vector<Eigen::Index> basis_rows;
  Matrix ortho(D, D);
  auto try_row = [&](Eigen::Index r) {
    Vector v = H.row(r).transpose();
    if (v.norm() == 0) return;
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < basis_rows.size(); ++k)
        v -= ortho.col(static_cast<Eigen::Index>(k)).dot(v) *
             ortho.col(static_cast<Eigen::Index>(k));
    if (v.norm() < 1e-8) return;
    ortho.col(static_cast<Eigen::Index>(basis_rows.size())) = v.normalized();
    basis_rows.push_back(r);
  };
  try_row(m);
  for (Eigen::Index r = 0; r < m && static_cast<Eigen::Index>(basis_rows.size()) < D; ++r)
    try_row(r);
  require(static_cast<Eigen::Index>(basis_rows.size()) == D,
          "halfspace system does not describe a bounded polyhedron");

  Matrix A0(D, D);
  for (Eigen::Index k = 0; k < D; ++k) A0.row(k) = H.row(basis_rows[k]);
  const Matrix R0 = -A0.inverse();

  std::vector<Vector> rays;
  std::vector<Incidence> zeros;
  Incidence processed(rows);
  for (Eigen::Index r : basis_rows) processed.set(r);
  for (Eigen::Index k = 0; k < D; ++k) {
    rays.push_back(R0.col(k).normalized());
    Incidence z(rows);
    for (Eigen::Index j = 0; j < D; ++j)
      if (j != k) z.set(basis_rows[j]);
    zeros.push_back(std::move(z));
  }

  std::vector<double> vals;
  std::vector<std::size_t> pos, neg, zer;
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (processed.test(r)) continue;
    processed.set(r);
    const auto h = H.row(r);
    vals.resize(rays.size());
    pos.clear();
    neg.clear();
    zer.clear();
    for (std::size_t k = 0; k < rays.size(); ++k) {
      vals[k] = h.dot(rays[k]);
      if (vals[k] > eps)
        pos.push_back(k);
      else if (vals[k] < -eps)
        neg.push_back(k);
      else
        zer.push_back(k);
    }
    for (std::size_t k : zer) zeros[k].set(r);
    if (pos.empty()) continue;

    std::vector<Vector> next_rays;
    std::vector<Incidence> next_zeros;
    for (std::size_t k : neg) {
      next_rays.push_back(rays[k]);
      next_zeros.push_back(zeros[k]);
    }
    for (std::size_t k : zer) {
      next_rays.push_back(rays[k]);
      next_zeros.push_back(zeros[k]);
    }
    const std::size_t need = D >= 2 ? static_cast<std::size_t>(D - 2) : 0;
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        Incidence common = zeros[p] & zeros[q];
        if (common.count() < need) continue;
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size() && adjacent; ++t) {
          if (t == p || t == q) continue;
          if (common.is_subset_of(zeros[t])) adjacent = false;
        }
        if (!adjacent) continue;
        Vector w = vals[p] * rays[q] - vals[q] * rays[p];
        const double len = w.norm();
        if (len == 0) continue;
        common.set(r);
        next_rays.push_back(w / len);
        next_zeros.push_back(std::move(common));
      }
    }
    rays = std::move(next_rays);
    zeros = std::move(next_zeros);
  }

  VertexEnumeration out;
  for (std::size_t k = 0; k < rays.size(); ++k) {
    const double s = rays[k][d];
    if (s <= eps) continue;
    Vector x = rays[k].head(d) / s;
    Incidence t = zeros[k];
    t.resize(static_cast<std::size_t>(m));
    bool merged = false;
    for (std::size_t v = 0; v < out.vertices.size(); ++v) {
      if ((out.vertices[v] - x).norm() <= 1e-9 * std::max(1.0, x.norm())) {
        out.tight[v] |= t;
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.vertices.push_back(std::move(x));
      out.tight.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace hhgeom::detail
