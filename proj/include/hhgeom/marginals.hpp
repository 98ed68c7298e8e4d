#pragma once

// Linear subspaces, orthogonal projections, sections by flats orthogonal to
// a subspace, and the Brunn profile x -> |K n (x + H^perp)|^{1/(n-i)}.

#include "hhgeom/estimate.hpp"
#include "hhgeom/quadrature.hpp"
#include "hhgeom/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace hhgeom {

/// An i-dimensional linear subspace H of R^n with orthonormal frames of H and H^perp.
class Subspace {
 public:
  Subspace() = default;

  /// Orthonormalizes the spanning vectors (Gram-Schmidt with one
  /// re-orthogonalization pass) and completes the frame of H^perp.
  static Subspace span(int n, const PointList& vectors) {
    require(n >= 1 && n <= kMaxDim, "Subspace: ambient dimension out of range");
    require(!vectors.empty(), "Subspace: need at least one spanning vector");
    PointList frame;
    auto orthogonalize = [&](Vector v) -> bool {
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& u : frame) v -= u.dot(v) * u;
      const double len = v.norm();
      if (len < 1e-10) return false;
      frame.push_back(v / len);
      return true;
    };
    for (const auto& v : vectors) {
      require(v.size() == n, "Subspace: spanning vector of wrong dimension");
      require(orthogonalize(v), "Subspace: spanning vectors are linearly dependent");
    }
    const int i = static_cast<int>(frame.size());
    require(i < n, "Subspace: H must be a proper subspace");
    for (int j = 0; j < n && static_cast<int>(frame.size()) < n; ++j) orthogonalize(unit_vector(n, j));
    Subspace s;
    s.basis_ = Matrix(n, i);
    s.complement_ = Matrix(n, n - i);
    for (int j = 0; j < i; ++j) s.basis_.col(j) = frame[static_cast<std::size_t>(j)];
    for (int j = i; j < n; ++j) s.complement_.col(j - i) = frame[static_cast<std::size_t>(j)];
    return s;
  }

  /// lin{e_j : j in axes}, axes 0-based.
  static Subspace coordinate(int n, std::initializer_list<int> axes) {
    return coordinate(n, std::vector<int>(axes));
  }
  static Subspace coordinate(int n, const std::vector<int>& axes) {
    PointList vs;
    for (int a : axes) {
      require(a >= 0 && a < n, "Subspace: axis out of range");
      vs.push_back(unit_vector(n, a));
    }
    return span(n, vs);
  }

  int ambient() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  int codim() const { return static_cast<int>(complement_.cols()); }
  const Matrix& basis() const { return basis_; }
  const Matrix& complement() const { return complement_; }

  /// H-coordinates of the orthogonal projection of x.
  Vector coordinates(const Vector& x) const { return basis_.transpose() * x; }
  /// The point of H with the given H-coordinates.
  Vector lift(const Vector& y) const { return basis_ * y; }

  /// Rotated frame R H (R orthogonal).
  Subspace rotated(const Matrix& R) const {
    Subspace s;
    s.basis_ = R * basis_;
    s.complement_ = R * complement_;
    return s;
  }

 private:
  Matrix basis_;
  Matrix complement_;
};

/// P_H K in H-coordinates.
inline Polytope project(const Polytope& k, const Subspace& h) {
  require(k.dim() == h.ambient(), "project: dimension mismatch");
  if (k.empty()) return Polytope::empty_set(h.dim());
  PointList pts;
  for (const auto& v : k.vertices()) pts.push_back(h.coordinates(v));
  return hull(pts);
}

/// K n (lift(x) + H^perp) in H^perp-coordinates; empty when x is outside P_H K.
inline Polytope section(const Polytope& k, const Subspace& h, const Vector& x) {
  require(k.dim() == h.ambient(), "section: dimension mismatch");
  require(x.size() == h.dim(), "section: x must be given in H-coordinates");
  const int m = h.codim();
  if (k.empty()) return Polytope::empty_set(m);
  const Vector base = h.lift(x);
  const double scale = std::max(1.0, base.cwiseAbs().maxCoeff());
  std::vector<Halfspace> restricted;
  for (const auto& hs : k.halfspaces()) {
    Vector a = h.complement().transpose() * hs.normal;
    const double b = hs.offset - hs.normal.dot(base);
    if (a.norm() < 1e-12 * std::max(1.0, hs.normal.norm())) {
      if (b < -kGeomEps * scale) return Polytope::empty_set(m);
      continue;
    }
    restricted.push_back({std::move(a), b});
  }
  return from_halfspaces(m, restricted);
}

/// (n - i)-dimensional volume of K n (lift(x) + H^perp); zero for lower-dimensional sections.
inline double section_volume(const Polytope& k, const Subspace& h, const Vector& x) {
  return volume_in_dimension(section(k, h, x), h.codim());
}

/// x -> |K n (x + H^perp)|^{1/(n-i)}, concave on P_H K by Brunn's principle.
struct BrunnProfile {
  Subspace subspace;
  Polytope body;

  double exponent() const { return 1.0 / subspace.codim(); }
};

inline double brunn_eval(const BrunnProfile& p, const Vector& x) {
  const double v = section_volume(p.body, p.subspace, x);
  return v > 0 ? std::pow(v, p.exponent()) : 0.0;
}

struct ConcavityReport {
  std::size_t trials = 0;
  std::size_t violations = 0;  // count with defect > tolerance
  double worst_violation = 0.0;  // max of (1-l) f(x) + l f(y) - f((1-l) x + l y), clamped at 0
  double tolerance = kNumEps;
};

inline ConcavityReport check_brunn_concavity(const Polytope& k, const Subspace& h,
                                             std::size_t trials, std::uint64_t seed) {
  require(trials >= 1, "check_brunn_concavity: need trials >= 1");
  const BrunnProfile profile{h, k};
  const Polytope shadow = project(k, h);
  const UniformSampler sampler(shadow);
  Rng rng(stream_seed(seed, 0));
  ConcavityReport rep;
  rep.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const Vector x = sampler(rng);
    const Vector y = sampler(rng);
    const double lambda = rng.uniform();
    const double mid = brunn_eval(profile, (1 - lambda) * x + lambda * y);
    const double chord = (1 - lambda) * brunn_eval(profile, x) + lambda * brunn_eval(profile, y);
    const double defect = chord - mid;
    rep.worst_violation = std::max(rep.worst_violation, defect);
    if (defect > rep.tolerance) ++rep.violations;
  }
  return rep;
}

/// Volume of K by integrating section volumes over P_H K: piecewise Gauss
/// quadrature between vertex heights (exact) when dim H = 1, otherwise Monte
/// Carlo with `grid` samples of P_H K.
inline IntegralEstimate fubini_volume(const Polytope& k, const Subspace& h, std::size_t grid,
                                      std::uint64_t seed = 0) {
  require(grid >= 2, "fubini_volume: need grid >= 2");
  IntegralEstimate est;
  const Polytope shadow = project(k, h);
  if (shadow.empty() || shadow.affine_dim() < h.dim()) return est;
  if (h.dim() == 1) {
    std::vector<double> knots;
    const double lo = shadow.vertices()[0][0], hi = shadow.vertices()[1][0];
    const double a = std::min(lo, hi), b = std::max(lo, hi);
    for (std::size_t j = 0; j <= grid; ++j) knots.push_back(a + (b - a) * j / grid);
    for (const auto& v : k.vertices()) knots.push_back(std::clamp(h.coordinates(v)[0], a, b));
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end(),
                            [](double u, double w) { return std::abs(u - w) < 1e-14; }),
                knots.end());
    const auto rule = gauss_legendre(gauss_points_for_degree(h.codim(), 1));
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
      const double len = knots[j + 1] - knots[j];
      for (std::size_t q = 0; q < rule.nodes.size(); ++q)
        total += len * rule.weights[q] *
                 section_volume(k, h, make_vector({knots[j] + len * rule.nodes[q]}));
    }
    est.value = total;
    est.method = EstimateMethod::quadrature;
    est.samples = knots.size();
    return est;
  }
  const PointList xs = sample_uniform(shadow, grid, seed);
  double sum = 0.0, sq = 0.0;
  for (const auto& x : xs) {
    const double v = section_volume(k, h, x);
    sum += v;
    sq += v * v;
  }
  const double nsamp = static_cast<double>(grid);
  const double mean = sum / nsamp;
  const double var = std::max(0.0, sq / nsamp - mean * mean) * nsamp / (nsamp - 1);
  const double area = volume(shadow);
  est.value = area * mean;
  est.std_error = area * std::sqrt(var / nsamp);
  est.method = EstimateMethod::monte_carlo;
  est.samples = grid;
  return est;
}

/// True when P_H K = -P_H K.
inline bool is_projection_symmetric(const Polytope& k, const Subspace& h) {
  return is_origin_symmetric(project(k, h));
}

}  // namespace hhgeom
