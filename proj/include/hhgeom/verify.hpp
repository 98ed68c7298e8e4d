#pragma once

// Volume inequalities relating |K| to projections and sections, their
// equality bodies, and randomized tightness search.

#include "hhgeom/functional.hpp"
#include "hhgeom/io.hpp"
#include "hhgeom/marginals.hpp"
#include "hhgeom/report.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace hhgeom {

/// 2^{n-i} / (n - i + 1).
inline double thm1_constant(int n, int i) {
  return std::pow(2.0, n - i) / (n - i + 1.0);
}

/// 2^n / n.
inline double santos_constant(int n) { return std::pow(2.0, n) / n; }

namespace detail {

inline InequalityReport geometric_report(std::string name, double lhs, double rhs,
                                         const Polytope& k, const Subspace& h) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.lhs_method = "triangulation";
  r.rhs_method = "triangulation";
  r.tolerance = exact_tolerance(lhs, rhs);
  r.instance = {{"body", body_to_json(k)}, {"subspace", subspace_to_json(h)}};
  return finalize(r);
}

}  // namespace detail

/// |K| <= 2^{n-i}/(n-i+1) |P_H K| |K n H^perp| when P_H K = -P_H K.
inline InequalityReport check_thm1(const Polytope& k, const Subspace& h) {
  require(k.dim() == h.ambient(), "check_thm1: dimension mismatch");
  require_precondition(is_projection_symmetric(k, h),
                       "thm1 requires a 0-symmetric projection, P_HK = -P_HK");
  const int n = k.dim(), i = h.dim();
  const double shadow = volume_in_dimension(project(k, h), i);
  const double middle = section_volume(k, h, Vector::Zero(i));
  const double c = thm1_constant(n, i);
  auto r = detail::geometric_report("thm1", volume_in_dimension(k, n), c * shadow * middle, k, h);
  r.details["constant"] = c;
  r.details["projection_volume"] = shadow;
  r.details["section_volume"] = middle;
  return r;
}

/// |K| <= (2^n / n) |K n e_1^perp| when P_{lin e_1} K = [-e_1, e_1].
inline InequalityReport check_santos(const Polytope& k) {
  const int n = k.dim();
  require(n >= 2, "check_santos: need n >= 2");
  const Subspace line = Subspace::coordinate(n, {0});
  const Polytope shadow = project(k, line);
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& v : shadow.vertices()) lo = std::min(lo, v[0]), hi = std::max(hi, v[0]);
  require_precondition(std::abs(lo + 1.0) <= kGeomEps && std::abs(hi - 1.0) <= kGeomEps,
                       "santos requires P_{lin e1} K = [-e1, e1]");
  const double middle = section_volume(k, line, Vector::Zero(1));
  const double c = santos_constant(n);
  auto r = detail::geometric_report("santos", volume_in_dimension(k, n), c * middle, k, line);
  const InequalityReport via_thm1 = check_thm1(k, line);
  const double agree = std::abs(via_thm1.rhs - r.rhs) / std::max(1e-300, std::abs(r.rhs));
  require(agree <= 1e-12, "check_santos: constant disagrees with the i = 1 case of thm1");
  r.details["constant"] = c;
  r.details["thm1_constant"] = via_thm1.details.at("constant");
  r.details["thm1_rhs"] = via_thm1.rhs;
  r.details["section_volume"] = middle;
  return r;
}

/// |K| <= |P_H K| |K n (x_K + H^perp)|.
inline InequalityReport check_mp_centroid(const Polytope& k, const Subspace& h) {
  const int n = k.dim();
  require(k.dim() == h.ambient(), "check_mp_centroid: dimension mismatch");
  const double vol = volume_in_dimension(k, n);
  require(vol > 0, "check_mp_centroid: |K| must be positive");
  const Vector at = h.coordinates(centroid(k));
  const double shadow = volume_in_dimension(project(k, h), h.dim());
  const double sect = section_volume(k, h, at);
  auto r = detail::geometric_report("mp_centroid", vol, shadow * sect, k, h);
  r.details["projection_volume"] = shadow;
  r.details["section_volume"] = sect;
  for (int j = 0; j < h.dim(); ++j) r.details["center" + std::to_string(j + 1)] = at[j];
  return r;
}

/// |K| <= |P_H K| |K n (x_{P_H K} + H^perp)| for a hyperplane H.
inline InequalityReport check_proj_centroid(const Polytope& k, const Subspace& h) {
  const int n = k.dim();
  require(k.dim() == h.ambient(), "check_proj_centroid: dimension mismatch");
  require_precondition(h.dim() == n - 1, "proj_centroid requires dim H = n - 1");
  const Polytope shadow = project(k, h);
  const Vector at = centroid(shadow);
  const double area = volume_in_dimension(shadow, h.dim());
  const double sect = section_volume(k, h, at);
  auto r = detail::geometric_report("proj_centroid", volume_in_dimension(k, n), area * sect, k, h);
  r.details["projection_volume"] = area;
  r.details["section_volume"] = sect;
  for (int j = 0; j < h.dim(); ++j) r.details["center" + std::to_string(j + 1)] = at[j];
  return r;
}

struct SegmentReport {
  double threshold = 0.0;    // |K| / |P_H K|
  double min_slack = 0.0;    // min over lambda of |K n (c_l + H^perp)| - threshold
  double worst_lambda = 0.0;
  std::size_t grid = 0;
  bool holds = false;
};

/// Checks |K n (c + H^perp)| >= |K| / |P_H K| along c = (1 - l) x0 + l x1.
/// The points may be given in R^n or in H-coordinates.
inline SegmentReport check_segment_of_centers(const Polytope& k, const Subspace& h, const Vector& x0,
                                              const Vector& x1, std::size_t grid) {
  require(grid >= 1, "check_segment_of_centers: need grid >= 1");
  auto to_h = [&](const Vector& x) -> Vector {
    if (x.size() == h.dim()) return x;
    require(x.size() == h.ambient(), "check_segment_of_centers: point of wrong dimension");
    return h.coordinates(x);
  };
  const Vector a = to_h(x0), b = to_h(x1);
  SegmentReport rep;
  rep.grid = grid;
  rep.threshold = volume_in_dimension(k, k.dim()) / volume_in_dimension(project(k, h), h.dim());
  const double tol = kGeomEps * std::max(1.0, rep.threshold);
  const double s0 = section_volume(k, h, a) - rep.threshold;
  const double s1 = section_volume(k, h, b) - rep.threshold;
  require_precondition(s0 >= -tol, "segment_of_centers: endpoint x0 violates |K|/|P_HK| <= |K n (x0 + H^perp)|");
  require_precondition(s1 >= -tol, "segment_of_centers: endpoint x1 violates |K|/|P_HK| <= |K n (x1 + H^perp)|");
  rep.min_slack = INFINITY;
  for (std::size_t j = 0; j <= grid; ++j) {
    const double lambda = static_cast<double>(j) / static_cast<double>(grid);
    const double s = section_volume(k, h, (1 - lambda) * a + lambda * b) - rep.threshold;
    if (s < rep.min_slack) rep.min_slack = s, rep.worst_lambda = lambda;
  }
  rep.holds = rep.min_slack >= -tol;
  return rep;
}

/// The equality body of check_thm1:
/// {(t, y, z) : t in [-1, 1], y in C0, z in (1 + t) C1} with H = lin{e_1..e_i}.
inline std::pair<Polytope, Subspace> construct_equality_thm1(int n, int i,
                                                             const std::optional<Polytope>& c0,
                                                             const Polytope& c1) {
  require(i >= 1 && i < n, "construct_equality_thm1: need 1 <= i < n");
  require(c1.dim() == n - i, "construct_equality_thm1: C1 must have dimension n - i");
  require(i == 1 || (c0 && c0->dim() == i - 1), "construct_equality_thm1: C0 must have dimension i - 1");
  std::vector<int> axes(static_cast<std::size_t>(i));
  for (int j = 0; j < i; ++j) axes[static_cast<std::size_t>(j)] = j;
  return {scaled_slab_body(n, i, c0, c1), Subspace::coordinate(n, axes)};
}

enum class TheoremTag { thm1, santos, thm2, cor_alpha, thm3, classical_hh, hh_center_of_mass,
                        mp_centroid, proj_centroid };

inline std::string_view to_string(TheoremTag t) {
  switch (t) {
    case TheoremTag::thm1: return "thm1";
    case TheoremTag::santos: return "santos";
    case TheoremTag::thm2: return "thm2";
    case TheoremTag::cor_alpha: return "cor_alpha";
    case TheoremTag::thm3: return "thm3";
    case TheoremTag::classical_hh: return "classical_hh";
    case TheoremTag::hh_center_of_mass: return "hh_center_of_mass";
    case TheoremTag::mp_centroid: return "mp_centroid";
    case TheoremTag::proj_centroid: return "proj_centroid";
  }
  return "unknown";
}

/// Accepts the canonical names, hyphenated spellings and hh-com.
inline TheoremTag theorem_from_string(std::string_view s) {
  std::string key(s);
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "hh_com") return TheoremTag::hh_center_of_mass;
  for (auto t : {TheoremTag::thm1, TheoremTag::santos, TheoremTag::thm2, TheoremTag::cor_alpha,
                 TheoremTag::thm3, TheoremTag::classical_hh, TheoremTag::hh_center_of_mass,
                 TheoremTag::mp_centroid, TheoremTag::proj_centroid})
    if (to_string(t) == key) return t;
  throw Error("unknown theorem '" + std::string(s) + "'");
}

inline bool is_functional(TheoremTag t) {
  return t == TheoremTag::thm2 || t == TheoremTag::cor_alpha || t == TheoremTag::thm3 ||
         t == TheoremTag::classical_hh || t == TheoremTag::hh_center_of_mass;
}

/// One input to a theorem check. Unused fields stay empty.
struct Instance {
  Polytope body;
  std::optional<Subspace> subspace;
  std::optional<ConcaveFn> function;
  std::optional<ConvexGauge> gauge;
  double alpha = 2.0;
  int m = 1;
};

struct CheckOptions {
  std::size_t samples = kDefaultSamples;
  std::uint64_t seed = 0;
  IntegrationMode mode = IntegrationMode::automatic;
};

inline InequalityReport run_check(TheoremTag theorem, const Instance& in, const CheckOptions& opt = {}) {
  auto need_h = [&]() -> const Subspace& {
    require(in.subspace.has_value(), std::string(to_string(theorem)) + " needs a subspace");
    return *in.subspace;
  };
  auto need_f = [&]() -> const ConcaveFn& {
    require(in.function.has_value(), std::string(to_string(theorem)) + " needs a function");
    return *in.function;
  };
  switch (theorem) {
    case TheoremTag::thm1: return check_thm1(in.body, need_h());
    case TheoremTag::santos: return check_santos(in.body);
    case TheoremTag::mp_centroid: return check_mp_centroid(in.body, need_h());
    case TheoremTag::proj_centroid: return check_proj_centroid(in.body, need_h());
    case TheoremTag::thm2:
      require(in.gauge.has_value(), "thm2 needs a gauge");
      return check_thm2(in.body, need_f(), *in.gauge, opt.samples, opt.seed, opt.mode);
    case TheoremTag::cor_alpha:
      return check_cor_alpha(in.body, need_f(), in.alpha, opt.samples, opt.seed, opt.mode);
    case TheoremTag::thm3: return check_thm3(in.body, need_f(), opt.samples, opt.seed, opt.mode);
    case TheoremTag::classical_hh:
      return check_classical_hh(in.body, need_f(), opt.samples, opt.seed, opt.mode);
    case TheoremTag::hh_center_of_mass:
      return check_hh_center_of_mass(in.body, need_f(), in.m, opt.samples, opt.seed, opt.mode);
  }
  throw Error("run_check: unknown theorem");
}

/// Whether run_check would take a Monte Carlo path for this instance.
inline bool uses_monte_carlo(TheoremTag theorem, const Instance& in, IntegrationMode mode) {
  if (!is_functional(theorem)) return false;
  if (mode == IntegrationMode::monte_carlo) return true;
  const bool affine = in.function && in.function->is_affine();
  switch (theorem) {
    case TheoremTag::thm2: return !(affine && in.gauge && in.gauge->integer_power());
    case TheoremTag::cor_alpha: return !(affine && in.alpha >= 1 && ConvexGauge::power(in.alpha).integer_power());
    default: return !affine;
  }
}

struct TightnessResult {
  double best_ratio = 0.0;
  std::size_t best_trial = 0;
  InequalityReport best_report;
  Polytope best_body;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double histogram_lo = 0.0;
  double histogram_hi = 1.0;
  std::vector<std::size_t> ratio_histogram;  // uniform bins on [histogram_lo, histogram_hi]; overflow in the last
};

/// Generator of random instances; called with the per-trial stream.
using InstanceGenerator = std::function<Instance(Rng&)>;

/// Runs the check over `trials` generated instances and keeps the largest
/// lhs/rhs ratio. Trial t uses stream (seed, t) for both generation and Monte
/// Carlo, so results do not depend on scheduling.
inline TightnessResult tightness_search(const InstanceGenerator& generator, TheoremTag theorem,
                                        std::size_t trials, std::uint64_t seed,
                                        std::size_t samples = 20000, std::size_t bins = 20) {
  require(trials >= 1, "tightness_search: need trials >= 1");
  std::vector<InequalityReport> reports(trials);
  std::vector<Polytope> bodies(trials);
  const bool inner_parallel = is_functional(theorem);
  auto run_trial = [&](std::size_t t) {
    Rng rng(stream_seed(seed, t));
    const Instance in = generator(rng);
    bodies[t] = in.body;
    reports[t] = run_check(theorem, in, {samples, stream_seed(seed ^ 0x5eedULL, t), IntegrationMode::automatic});
  };
  if (inner_parallel) {
    for (std::size_t t = 0; t < trials; ++t) run_trial(t);
  } else {
    for_each_shard(trials, run_trial);
  }
  TightnessResult res;
  res.trials = trials;
  res.ratio_histogram.assign(bins, 0);
  res.best_ratio = -INFINITY;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto& r = reports[t];
    if (!r.holds()) ++res.failures;
    if (r.ratio > res.best_ratio) {
      res.best_ratio = r.ratio;
      res.best_trial = t;
    }
    const double pos = (r.ratio - res.histogram_lo) / (res.histogram_hi - res.histogram_lo);
    const auto bin = static_cast<std::size_t>(std::clamp(pos * static_cast<double>(bins), 0.0,
                                                         static_cast<double>(bins - 1)));
    ++res.ratio_histogram[bin];
  }
  res.best_report = reports[res.best_trial];
  res.best_body = bodies[res.best_trial];
  return res;
}

namespace generators {

/// Equality body of check_thm1 (i = 1, C1 = [0, 1]^{n-1}) with every vertex moved by
/// up to `amplitude` in the coordinates orthogonal to e_1, which keeps
/// P_{lin e1} K = [-e1, e1].
inline InstanceGenerator perturbed_scaled_slab(int n, double amplitude) {
  return [=](Rng& rng) {
    const auto [body, h] = construct_equality_thm1(n, 1, std::nullopt, box(n - 1, 0.0, 1.0));
    PointList pts;
    for (Vector v : body.vertices()) {
      for (int j = 1; j < n; ++j) v[j] += amplitude * rng.uniform(-1.0, 1.0);
      pts.push_back(std::move(v));
    }
    Instance in;
    in.body = hull(pts);
    in.subspace = h;
    return in;
  };
}

/// Random 0-symmetric hulls of 2 * count points with a coordinate subspace of dimension i.
inline InstanceGenerator symmetric_hulls(int n, int i, int count) {
  return [=](Rng& rng) {
    Instance in;
    in.body = random_hull(n, count, rng, true);
    std::vector<int> axes;
    for (int j = 0; j < i; ++j) axes.push_back(j);
    in.subspace = Subspace::coordinate(n, axes);
    return in;
  };
}

/// Random hulls of `count` points with a coordinate subspace of dimension i.
inline InstanceGenerator random_hulls(int n, int i, int count) {
  return [=](Rng& rng) {
    Instance in;
    in.body = random_hull(n, count, rng);
    std::vector<int> axes;
    for (int j = 0; j < i; ++j) axes.push_back(j);
    in.subspace = Subspace::coordinate(n, axes);
    return in;
  };
}

/// Random hulls with P_{lin e1} K = [-e1, e1].
inline InstanceGenerator slab_normalized(int n, int count) {
  return [=](Rng& rng) {
    Instance in;
    in.body = random_slab_normalized(n, count, rng);
    in.subspace = Subspace::coordinate(n, {0});
    return in;
  };
}

/// Min of `pieces` random affine functions, shifted to be nonnegative on C.
inline ConcaveFn random_concave(const Polytope& c, int pieces, Rng& rng) {
  std::vector<AffinePiece> ps;
  for (int j = 0; j < pieces; ++j) {
    AffinePiece p{rng.uniform_cube(c.dim()), 0.0};
    double low = INFINITY;
    for (const auto& v : c.vertices()) low = std::min(low, p.slope.dot(v));
    p.intercept = -low + rng.uniform(0.0, 1.0);
    ps.push_back(std::move(p));
  }
  return ConcaveFn(c, std::move(ps));
}

/// The cube [-1, 1]^n with a random min-of-`pieces`-affines function and gauge.
inline InstanceGenerator cubes_with_functions(int n, int pieces, ConvexGauge gauge) {
  return [=](Rng& rng) {
    Instance in;
    in.body = cube(n, rng.uniform(0.5, 1.5));
    in.function = random_concave(in.body, pieces, rng);
    in.gauge = gauge;
    return in;
  };
}

}  // namespace generators

}  // namespace hhgeom
