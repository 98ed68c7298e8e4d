#pragma once

#include "hhgeom/marginals.hpp"

#include <numbers>

namespace hhgeom {

/// Volume of the unit Euclidean ball in R^k.
inline double unit_ball_volume(int k) {
  return std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

/// Schwarz symmetral of K about lin(u), stored as its radius profile: the
/// section of sigma_u(K) at t u is an (n-1)-ball of radius r_t with
/// r_t^{n-1} omega_{n-1} = |K n (t u + u^perp)|.
struct SchwarzProfile {
  Vector axis;
  int ambient = 0;
  double t_min = 0.0;
  double t_max = 0.0;
  std::vector<double> t;
  std::vector<double> r;

  double slice_volume(std::size_t j) const {
    return std::pow(r[j], ambient - 1) * unit_ball_volume(ambient - 1);
  }
};

inline double radius_from_slice_volume(double v, int n) {
  return v > 0 ? std::pow(v / unit_ball_volume(n - 1), 1.0 / (n - 1)) : 0.0;
}

inline Subspace axis_line(const Vector& u) { return Subspace::span(static_cast<int>(u.size()), {u}); }

inline SchwarzProfile schwarz_profile(const Polytope& k, const Vector& u, std::size_t knot_count = 2001) {
  require(u.size() == k.dim(), "schwarz_profile: axis of wrong dimension");
  require(u.norm() > 0, "schwarz_profile: zero direction");
  require(knot_count >= 3, "schwarz_profile: need at least 3 knots");
  require(k.dim() >= 2, "schwarz_profile: need n >= 2");
  SchwarzProfile p;
  p.axis = u.normalized();
  p.ambient = k.dim();
  p.t_min = -support(k, -p.axis);
  p.t_max = support(k, p.axis);
  const Subspace line = axis_line(p.axis);
  p.t.resize(knot_count);
  p.r.resize(knot_count);
  for (std::size_t j = 0; j < knot_count; ++j)
    p.t[j] = p.t_min + (p.t_max - p.t_min) * static_cast<double>(j) / static_cast<double>(knot_count - 1);
  for_each_shard(knot_count, [&](std::size_t j) {
    p.r[j] = radius_from_slice_volume(section_volume(k, line, make_vector({p.t[j]})), p.ambient);
  });
  return p;
}

/// Composite Simpson rule over the knots (trapezoid on a trailing odd interval).
inline double schwarz_volume(const SchwarzProfile& p) {
  const std::size_t n = p.t.size();
  require(n >= 3, "schwarz_volume: need at least 3 knots");
  const double h = (p.t_max - p.t_min) / static_cast<double>(n - 1);
  const std::size_t last = (n - 1) % 2 == 0 ? n - 1 : n - 2;
  double total = 0.0;
  for (std::size_t j = 0; j + 2 <= last; j += 2)
    total += h / 3.0 * (p.slice_volume(j) + 4.0 * p.slice_volume(j + 1) + p.slice_volume(j + 2));
  if (last != n - 1) total += 0.5 * h * (p.slice_volume(n - 2) + p.slice_volume(n - 1));
  return total;
}

/// The cylinders R_t = (-t e + M'_t) + [-t0 e, t0 e], t in [0, t0], built on the
/// slices M'_t of C' = sigma_e(C) along the axis e.
struct CylinderFamily {
  Polytope body;
  Vector axis;
  SchwarzProfile base_profile;
  double t0 = 0.0;
  double symmetral_volume = 0.0;  // |C'| = |C|

  /// |M'_t| = |C n (t e + e^perp)|.
  double slice_volume(double t) const {
    return section_volume(body, axis_line(axis), make_vector({t}));
  }
  double slice_radius(double t) const {
    return radius_from_slice_volume(slice_volume(t), body.dim());
  }
};

inline CylinderFamily make_cylinder_family(const Polytope& c, const Vector& axis,
                                           std::size_t knot_count = 2001) {
  CylinderFamily fam;
  fam.body = c;
  fam.axis = axis.normalized();
  fam.base_profile = schwarz_profile(c, fam.axis, knot_count);
  fam.t0 = support(c, fam.axis);
  fam.symmetral_volume = volume(c);
  return fam;
}

/// |R_t| = 2 t0 |M'_t|.
inline double cylinder_slice_volume(const CylinderFamily& fam, double t) {
  require(t >= -1e-15 && t <= fam.t0 * (1 + 1e-15) + 1e-15,
          "cylinder_slice_volume: t outside [0, t0]");
  return 2.0 * fam.t0 * fam.slice_volume(std::clamp(t, 0.0, fam.t0));
}

/// Smallest t in [0, t0] with |R_t| = |C'| (within tol), by bisection on the
/// nonincreasing map t -> |R_t|.
inline double find_tstar(const CylinderFamily& fam, double tol) {
  require(tol > 0, "find_tstar: tol must be positive");
  const double target = fam.symmetral_volume;
  const double scale = std::max(1.0, target);
  const double top = cylinder_slice_volume(fam, 0.0);
  const double bottom = cylinder_slice_volume(fam, fam.t0);
  require(target <= top + tol * scale && target >= bottom - tol * scale,
          "find_tstar: |C'| outside [|R_t0|, |R_0|]; the profile is not that of a 0-symmetric body");
  auto reached = [&](double t) { return cylinder_slice_volume(fam, t) <= target + tol * scale; };
  if (reached(0.0)) return 0.0;
  double lo = 0.0, hi = fam.t0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, fam.t0); ++it) {
    const double mid = 0.5 * (lo + hi);
    (reached(mid) ? hi : lo) = mid;
  }
  return hi;
}

struct MembershipReport {
  std::size_t samples = 0;
  std::size_t left_violations = 0;   // R_{t0} not inside C'
  std::size_t right_violations = 0;  // C' not inside R_0
  double worst = 0.0;
  bool ok() const { return left_violations == 0 && right_violations == 0; }
};

/// Samples axial positions s and compares the radius of the revolution bodies
/// R_{t0}, C' and R_0 at s: R_{t0} inside C' inside R_0 means
/// r(t0) <= r_{C'}(s) <= r(0) on [-t0, t0] and C' vanishing outside it.
inline MembershipReport slab_membership_check(const Polytope& k, const CylinderFamily& fam,
                                              std::size_t samples, std::uint64_t seed) {
  const Subspace line = axis_line(fam.axis);
  auto radius = [&](double s) {
    return radius_from_slice_volume(section_volume(k, line, make_vector({s})), k.dim());
  };
  const double inner = fam.slice_radius(fam.t0);
  const double outer = fam.slice_radius(0.0);
  const double lo = std::min(-fam.t0, -support(k, -fam.axis));
  const double hi = std::max(fam.t0, support(k, fam.axis));
  const double tol = kNumEps * std::max(1.0, outer);
  Rng rng(stream_seed(seed, 0));
  MembershipReport rep;
  rep.samples = samples;
  for (std::size_t j = 0; j < samples; ++j) {
    const double s = rng.uniform(lo, hi);
    const double r = radius(s);
    const bool in_slab = std::abs(s) <= fam.t0;
    const double left = in_slab ? inner - r : 0.0;
    const double right = in_slab ? r - outer : r;
    if (left > tol) ++rep.left_violations;
    if (right > tol) ++rep.right_violations;
    rep.worst = std::max({rep.worst, left, right});
  }
  return rep;
}

}  // namespace hhgeom
