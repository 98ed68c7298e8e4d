#pragma once

#include "hhgeom/triangulation.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace hhgeom {

struct QuadratureRule {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;  // sum to 1
};

/// q-point Gauss-Legendre rule mapped to [0, 1]; exact for degree 2q - 1.
inline QuadratureRule gauss_legendre(int q) {
  require(q >= 1, "gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(q));
  rule.weights.resize(static_cast<std::size_t>(q));
  // Legendre P_q and its derivative by the three-term recurrence.
  auto legendre = [q](double x) {
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= q; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, q * (x * p1 - p0) / (x * x - 1.0)};
  };
  for (int i = 0; i < q; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
    rule.weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

namespace detail {

/// Integrates fn (taking affine-hull coordinates) over a local simplex with a
/// collapsed-coordinate tensor Gauss rule of q points per direction.
template <class Fn>
double integrate_local_simplex(const Matrix& s, const QuadratureRule& rule, Fn&& fn) {
  const Eigen::Index k = s.rows();
  Matrix E(k, k);
  for (Eigen::Index j = 0; j < k; ++j) E.col(j) = s.col(j + 1) - s.col(0);
  const double scale = std::abs(E.determinant());
  const std::size_t q = rule.nodes.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  Vector bary(k);
  double total = 0.0;
  while (true) {
    double w = 1.0;
    double rest = 1.0;
    for (Eigen::Index j = 0; j < k; ++j) {
      const double u = rule.nodes[idx[static_cast<std::size_t>(j)]];
      w *= rule.weights[idx[static_cast<std::size_t>(j)]];
      bary[j] = rest * u;
      if (j + 1 < k) w *= std::pow(1.0 - u, static_cast<double>(k - 1 - j));
      rest *= (1.0 - u);
    }
    total += w * fn(Vector(s.col(0) + E * bary));
    std::size_t j = 0;
    while (j < idx.size() && ++idx[j] == q) idx[j++] = 0;
    if (j == idx.size()) break;
  }
  return total * scale;
}

}  // namespace detail

/// Integral of fn over P in the volume measure of aff(P). `points` Gauss nodes
/// per collapsed direction give exactness for polynomials of degree
/// 2 * points - affine_dim(P).
template <class Fn>
double integrate(const Polytope& p, int points, Fn&& fn) {
  const auto& d = p.data();
  if (d.affine <= 0) return 0.0;
  const auto rule = gauss_legendre(points);
  double total = 0.0;
  for (const auto& s : detail::local_simplices(d))
    total += detail::integrate_local_simplex(
        s, rule, [&](const Vector& local) { return fn(detail::lift(d, local)); });
  return total;
}

/// Number of Gauss points per direction making `integrate` exact for
/// polynomials of the given degree on a body of affine dimension k.
inline int gauss_points_for_degree(int degree, int k) { return (degree + k) / 2 + 1; }

}  // namespace hhgeom
