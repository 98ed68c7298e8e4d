#pragma once

// Concave functions as minima of affine pieces, convex gauges phi with
// phi(0) = 0, means of phi(f) over a body, and the functional
// Hermite-Hadamard checks.

#include "hhgeom/estimate.hpp"
#include "hhgeom/io.hpp"
#include "hhgeom/quadrature.hpp"
#include "hhgeom/report.hpp"
#include "hhgeom/sampling.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <type_traits>

namespace hhgeom {

struct AffinePiece {
  Vector slope;
  double intercept = 0.0;

  double operator()(const Vector& x) const { return slope.dot(x) + intercept; }
};

/// f(x) = min_j (<a_j, x> + b_j) on the domain C.
class ConcaveFn {
 public:
  ConcaveFn(Polytope domain, std::vector<AffinePiece> pieces)
      : domain_(std::move(domain)), pieces_(std::move(pieces)) {
    require(!pieces_.empty(), "ConcaveFn: need at least one affine piece");
    for (const auto& p : pieces_)
      require(p.slope.size() == domain_.dim(), "ConcaveFn: piece slope of wrong dimension");
  }

  static ConcaveFn affine(Polytope domain, Vector slope, double intercept) {
    return ConcaveFn(std::move(domain), {{std::move(slope), intercept}});
  }
  static ConcaveFn constant(Polytope domain, double c) {
    const int n = domain.dim();
    return affine(std::move(domain), Vector::Zero(n), c);
  }

  const Polytope& domain() const { return domain_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  bool is_affine() const { return pieces_.size() == 1; }

  /// The unclamped minimum of the pieces; no domain check.
  double raw(const Vector& x) const {
    double v = std::numeric_limits<double>::infinity();
    for (const auto& p : pieces_) v = std::min(v, p(x));
    return v;
  }

  const AffinePiece& active_piece(const Vector& x) const {
    std::size_t best = 0;
    double v = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pieces_.size(); ++j)
      if (pieces_[j](x) < v) v = pieces_[j](x), best = j;
    return pieces_[best];
  }

  /// Minimum over the domain; attained at a vertex.
  double domain_minimum() const {
    double v = std::numeric_limits<double>::infinity();
    for (const auto& x : domain_.vertices()) v = std::min(v, raw(x));
    return v;
  }

  bool certified_nonnegative() const { return domain_minimum() >= -kNumEps; }

 private:
  Polytope domain_;
  std::vector<AffinePiece> pieces_;
};

/// max(0, f(x)); x must lie in the domain.
inline double eval_concave(const ConcaveFn& f, const Vector& x) {
  require(x.size() == f.domain().dim(), "eval_concave: point of wrong dimension");
  require(f.domain().contains(x, kGeomEps), "eval_concave: point outside the domain");
  return std::max(0.0, f.raw(x));
}

/// Rejects functions that are negative on their domain by more than kNumEps.
inline void certify_nonnegative(const ConcaveFn& f) {
  require_precondition(f.certified_nonnegative(),
                       "f must be nonnegative on C (minimum over the vertices of C is " +
                           std::to_string(f.domain_minimum()) + ")");
}

enum class GaugeKind { power, exp_minus_one, max_affine };

/// A convex, nondecreasing phi : [0, inf) -> [0, inf) with phi(0) = 0.
class ConvexGauge {
 public:
  /// phi(t) = t^alpha, alpha >= 1.
  static ConvexGauge power(double alpha) {
    require(alpha >= 1.0, "power gauge needs alpha >= 1");
    ConvexGauge g;
    g.kind_ = GaugeKind::power;
    g.alpha_ = alpha;
    return g;
  }
  /// phi(t) = e^t - 1.
  static ConvexGauge exp_minus_one() {
    ConvexGauge g;
    g.kind_ = GaugeKind::exp_minus_one;
    return g;
  }
  /// phi(t) = max_k (m_k t + c_k) - max_k c_k with every m_k >= 0, some m_k > 0.
  static ConvexGauge max_affine(std::vector<std::pair<double, double>> lines) {
    require(!lines.empty(), "max_affine gauge needs at least one line");
    double top = -std::numeric_limits<double>::infinity();
    bool rising = false;
    for (const auto& [m, c] : lines) {
      require(m >= 0.0, "max_affine gauge needs nonnegative slopes");
      rising = rising || m > 0.0;
      top = std::max(top, c);
    }
    require(rising, "max_affine gauge is identically zero");
    for (auto& line : lines) line.second -= top;
    ConvexGauge g;
    g.kind_ = GaugeKind::max_affine;
    g.lines_ = std::move(lines);
    return g;
  }

  GaugeKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  const std::vector<std::pair<double, double>>& lines() const { return lines_; }

  bool integer_power() const {
    return kind_ == GaugeKind::power && alpha_ == std::floor(alpha_) && alpha_ <= 64;
  }

  double operator()(double t) const {
    switch (kind_) {
      case GaugeKind::power: return std::pow(t, alpha_);
      case GaugeKind::exp_minus_one: return std::expm1(t);
      case GaugeKind::max_affine: {
        double v = -std::numeric_limits<double>::infinity();
        for (const auto& [m, c] : lines_) v = std::max(v, m * t + c);
        return v;
      }
    }
    return 0.0;
  }

  std::string label() const {
    switch (kind_) {
      case GaugeKind::power: {
        std::ostringstream s;
        s << "power:" << alpha_;
        return s.str();
      }
      case GaugeKind::exp_minus_one: return "exp_minus_one";
      case GaugeKind::max_affine: return "max_affine";
    }
    return "unknown";
  }

 private:
  GaugeKind kind_ = GaugeKind::power;
  double alpha_ = 1.0;
  std::vector<std::pair<double, double>> lines_;
};

inline double gauge_eval(const ConvexGauge& phi, double t) {
  require(t >= 0.0, "gauge_eval: phi is defined on [0, inf)");
  return phi(t);
}

/// phi(a - gamma r) + phi(a + gamma r) - phi(a - r) - phi(a + r); nonnegative
/// for convex phi whenever r >= 0, gamma >= 1 and a - gamma r >= 0.
inline double four_point_gap(const ConvexGauge& phi, double a, double r, double gamma) {
  require(r >= 0 && gamma >= 1 && a - gamma * r >= -1e-15,
          "four_point: need r >= 0, gamma >= 1, a - gamma r >= 0");
  const double spread = std::max(0.0, a - gamma * r);
  return gauge_eval(phi, spread) + gauge_eval(phi, a + gamma * r) - gauge_eval(phi, a - r) -
         gauge_eval(phi, a + r);
}

inline bool four_point(const ConvexGauge& phi, double a, double r, double gamma) {
  return four_point_gap(phi, a, r, gamma) >= -kNumEps;
}

/// (1/2) int_{-1}^{1} phi(f0 (1 + t)) dt in closed form.
inline double hh_rhs(const ConvexGauge& phi, double f0) {
  require(f0 >= 0.0, "hh_rhs: f(0) must be nonnegative");
  if (f0 == 0.0) return 0.0;
  switch (phi.kind()) {
    case GaugeKind::power:
      return std::pow(f0, phi.alpha()) * std::pow(2.0, phi.alpha()) / (phi.alpha() + 1.0);
    case GaugeKind::exp_minus_one:
      return std::expm1(2.0 * f0) / (2.0 * f0) - 1.0;
    case GaugeKind::max_affine: {
      // (1 / (2 f0)) int_0^{2 f0} phi(s) ds over the breakpoints of the envelope.
      const double top = 2.0 * f0;
      std::vector<double> cuts{0.0, top};
      const auto& ls = phi.lines();
      for (std::size_t a = 0; a < ls.size(); ++a)
        for (std::size_t b = a + 1; b < ls.size(); ++b) {
          const double dm = ls[a].first - ls[b].first;
          if (dm == 0.0) continue;
          const double s = (ls[b].second - ls[a].second) / dm;
          if (s > 0.0 && s < top) cuts.push_back(s);
        }
      std::sort(cuts.begin(), cuts.end());
      double total = 0.0;
      for (std::size_t j = 0; j + 1 < cuts.size(); ++j)
        total += (cuts[j + 1] - cuts[j]) * phi(0.5 * (cuts[j] + cuts[j + 1]));
      return total / top;
    }
  }
  return 0.0;
}

enum class IntegrationMode { automatic, monte_carlo };

inline constexpr std::size_t kDefaultSamples = 200000;

namespace detail {

struct Moments {
  double sum = 0.0;
  double sq = 0.0;
};

/// Mean of fn over uniform samples of C with its standard error.
template <class Fn>
IntegralEstimate monte_carlo_mean(const Polytope& c, std::size_t samples, std::uint64_t seed,
                                  Fn&& fn) {
  require(samples >= 100, "Monte Carlo path needs at least 100 samples");
  const UniformSampler sampler(c);
  const std::size_t shards = shard_count(samples);
  std::vector<Moments> parts(shards);
  for_each_shard(shards, [&](std::size_t shard) {
    Rng rng(stream_seed(seed, shard));
    const std::size_t end = std::min(samples, (shard + 1) * kShardSize);
    Moments m;
    for (std::size_t j = shard * kShardSize; j < end; ++j) {
      const double v = fn(sampler(rng));
      m.sum += v;
      m.sq += v * v;
    }
    parts[shard] = m;
  });
  Moments total;
  for (const auto& m : parts) total.sum += m.sum, total.sq += m.sq;
  const double n = static_cast<double>(samples);
  const double mean = total.sum / n;
  const double var = std::max(0.0, total.sq / n - mean * mean) * n / (n - 1.0);
  return {mean, std::sqrt(var / n), EstimateMethod::monte_carlo, samples};
}

/// Mean of fn over C by per-simplex Gauss quadrature.
template <class Fn>
IntegralEstimate quadrature_mean(const Polytope& c, int points, Fn&& fn) {
  const double vol = volume(c);
  require(vol > 0, "quadrature over a body of zero volume");
  return {integrate(c, points, fn) / vol, 0.0, EstimateMethod::quadrature, 0};
}

inline int exp_quadrature_points(int k) { return k <= 4 ? 10 : 7; }

}  // namespace detail

/// (1/|C|) int_C phi(f(x)) dx. Exact quadrature when f is affine and phi is
/// an integer power; Monte Carlo otherwise.
inline IntegralEstimate integrate_gauge_concave(const Polytope& c, const ConcaveFn& f,
                                                const ConvexGauge& phi,
                                                std::size_t samples = kDefaultSamples,
                                                std::uint64_t seed = 0,
                                                IntegrationMode mode = IntegrationMode::automatic) {
  require(c.dim() == f.domain().dim(), "integrate_gauge_concave: dimension mismatch");
  certify_nonnegative(f);
  auto integrand = [&](const Vector& x) { return phi(std::max(0.0, f.raw(x))); };
  if (mode == IntegrationMode::automatic && f.is_affine() && phi.integer_power())
    return detail::quadrature_mean(
        c, gauss_points_for_degree(static_cast<int>(phi.alpha()), c.affine_dim()), integrand);
  return detail::monte_carlo_mean(c, samples, seed, integrand);
}

inline bool has_exact_path(const ConcaveFn& f, const ConvexGauge& phi) {
  return f.is_affine() && phi.integer_power();
}

inline json concave_to_json(const ConcaveFn& f) {
  json j;
  j["pieces"] = json::array();
  for (const auto& p : f.pieces())
    j["pieces"].push_back({{"a", vector_to_json(p.slope)}, {"b", p.intercept}});
  return j;
}

/// {"pieces": [{"a": [...], "b": s}, ...]} on the given domain.
inline ConcaveFn concave_from_json(const json& j, const Polytope& domain) {
  require(j.is_object() && j.contains("pieces"), "function JSON needs \"pieces\"");
  std::vector<AffinePiece> pieces;
  for (const auto& p : j.at("pieces")) {
    AffinePiece a{vector_from_json(p.at("a")), p.at("b").get<double>()};
    require(a.slope.size() == domain.dim(), "function JSON: slope dimension does not match the body");
    pieces.push_back(std::move(a));
  }
  return ConcaveFn(domain, std::move(pieces));
}

inline json gauge_to_json(const ConvexGauge& g) {
  switch (g.kind()) {
    case GaugeKind::power: return {{"kind", "power"}, {"alpha", g.alpha()}};
    case GaugeKind::exp_minus_one: return {{"kind", "exp_minus_one"}};
    case GaugeKind::max_affine: {
      json pieces = json::array();
      for (const auto& [m, c] : g.lines()) pieces.push_back({{"m", m}, {"c", c}});
      return {{"kind", "max_affine"}, {"pieces", pieces}};
    }
  }
  return {};
}

inline ConvexGauge gauge_from_json(const json& j) {
  require(j.is_object() && j.contains("kind"), "gauge JSON needs \"kind\"");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "power") return ConvexGauge::power(j.at("alpha").get<double>());
  if (kind == "exp_minus_one") return ConvexGauge::exp_minus_one();
  if (kind == "max_affine") {
    std::vector<std::pair<double, double>> lines;
    for (const auto& p : j.at("pieces")) lines.emplace_back(p.at("m").get<double>(), p.at("c").get<double>());
    return ConvexGauge::max_affine(std::move(lines));
  }
  throw Error("unknown gauge kind '" + kind + "'");
}

namespace detail {

inline void require_symmetric_domain(const Polytope& c) {
  require_precondition(is_origin_symmetric(c), "C must be 0-symmetric (C = -C)");
}

inline void set_lhs(InequalityReport& r, const IntegralEstimate& e) {
  r.lhs = e.value;
  r.lhs_std_error = e.std_error;
  r.lhs_method = std::string(to_string(e.method));
  r.tolerance = e.method == EstimateMethod::monte_carlo ? mc_tolerance(e.std_error)
                                                        : exact_tolerance(r.lhs, r.rhs);
}

}  // namespace detail

/// (1/|C|) int_C phi(f) <= (1/2) int_{-1}^{1} phi(f(0)(1+t)) dt for 0-symmetric C.
inline InequalityReport check_thm2(const Polytope& c, const ConcaveFn& f, const ConvexGauge& phi,
                                   std::size_t samples = kDefaultSamples, std::uint64_t seed = 0,
                                   IntegrationMode mode = IntegrationMode::automatic) {
  detail::require_symmetric_domain(c);
  certify_nonnegative(f);
  InequalityReport r;
  r.name = "thm2";
  r.seed = seed;
  const double f0 = eval_concave(f, Vector::Zero(c.dim()));
  r.rhs = hh_rhs(phi, f0);
  r.rhs_method = "closed_form";
  detail::set_lhs(r, integrate_gauge_concave(c, f, phi, samples, seed, mode));
  r.details["f0"] = f0;
  r.instance = {{"body", body_to_json(c)}, {"function", concave_to_json(f)}, {"gauge", gauge_to_json(phi)}};
  return finalize(r);
}

/// (1/|C|) int_C f^alpha <= 2^alpha / (alpha + 1) f(0)^alpha.
inline InequalityReport check_cor_alpha(const Polytope& c, const ConcaveFn& f, double alpha,
                                        std::size_t samples = kDefaultSamples, std::uint64_t seed = 0,
                                        IntegrationMode mode = IntegrationMode::automatic) {
  require(alpha >= 1.0, "check_cor_alpha: alpha must be >= 1");
  InequalityReport r = check_thm2(c, f, ConvexGauge::power(alpha), samples, seed, mode);
  r.name = "cor_alpha";
  r.details["alpha"] = alpha;
  r.details["constant"] = std::pow(2.0, alpha) / (alpha + 1.0);
  return r;
}

/// For f = e^u with u concave on 0-symmetric C:
/// (1/|C|) int_C f <= f_min ((f(0)/f_min)^2 - 1) / log((f(0)/f_min)^2).
inline InequalityReport check_thm3(const Polytope& c, const ConcaveFn& u,
                                   std::size_t samples = kDefaultSamples, std::uint64_t seed = 0,
                                   IntegrationMode mode = IntegrationMode::automatic) {
  detail::require_symmetric_domain(c);
  InequalityReport r;
  r.name = "thm3";
  r.seed = seed;
  const double u_min = u.domain_minimum();
  const double u0 = u.raw(Vector::Zero(c.dim()));
  const double gap = u0 - u_min;  // log(f(0) / f_min) >= 0
  const double f_min = std::exp(u_min);
  // The bound tends to f_min as f(0)/f_min -> 1.
  r.rhs = std::abs(std::expm1(gap)) < 1e-8 ? f_min : f_min * std::expm1(2.0 * gap) / (2.0 * gap);
  r.rhs_method = "closed_form";
  auto integrand = [&](const Vector& x) { return std::exp(u.raw(x)); };
  const IntegralEstimate lhs =
      mode == IntegrationMode::automatic && u.is_affine()
          ? detail::quadrature_mean(c, detail::exp_quadrature_points(c.affine_dim()), integrand)
          : detail::monte_carlo_mean(c, samples, seed, integrand);
  detail::set_lhs(r, lhs);
  r.details["f_min"] = f_min;
  r.details["f0"] = std::exp(u0);
  r.instance = {{"body", body_to_json(c)}, {"exponent", concave_to_json(u)}};
  return finalize(r);
}

/// Mean of a concave callable over C against its value at the centroid.
template <class Fn>
  requires std::is_invocable_r_v<double, Fn, const Vector&>
InequalityReport check_classical_hh(const Polytope& c, Fn&& f, std::size_t samples,
                                    std::uint64_t seed) {
  InequalityReport r;
  r.name = "classical_hh";
  r.seed = seed;
  r.rhs = f(centroid(c));
  r.rhs_method = "exact";
  detail::set_lhs(r, detail::monte_carlo_mean(c, samples, seed, f));
  r.instance = {{"body", body_to_json(c)}};
  return finalize(r);
}

/// (1/|C|) int_C f <= f(x_C). Equality exactly when f is affine, which is
/// also the case evaluated by quadrature.
inline InequalityReport check_classical_hh(const Polytope& c, const ConcaveFn& f,
                                           std::size_t samples = kDefaultSamples,
                                           std::uint64_t seed = 0,
                                           IntegrationMode mode = IntegrationMode::automatic) {
  certify_nonnegative(f);
  InequalityReport r;
  r.name = "classical_hh";
  r.seed = seed;
  r.rhs = eval_concave(f, centroid(c));
  r.rhs_method = "exact";
  auto integrand = [&](const Vector& x) { return std::max(0.0, f.raw(x)); };
  detail::set_lhs(r, mode == IntegrationMode::automatic && f.is_affine()
                         ? detail::quadrature_mean(c, gauss_points_for_degree(1, c.affine_dim()), integrand)
                         : detail::monte_carlo_mean(c, samples, seed, integrand));
  finalize(r);
  r.details["affine"] = f.is_affine() ? 1.0 : 0.0;
  r.details["near_equality"] = (f.is_affine() && r.verdict == Verdict::equality) ? 1.0 : 0.0;
  r.instance = {{"body", body_to_json(c)}, {"function", concave_to_json(f)}};
  return r;
}

struct WeightedCentroid {
  Vector point;
  Matrix covariance;  // of the estimator; zero on exact paths
  EstimateMethod method = EstimateMethod::quadrature;
  double mean_weight = 0.0;  // (1/|C|) int_C f^m
  double mean_weight_std_error = 0.0;
};

/// x_{f,m} = int_C x f^m / int_C f^m.
inline WeightedCentroid weighted_centroid(const Polytope& c, const ConcaveFn& f, int m,
                                          std::size_t samples = kDefaultSamples,
                                          std::uint64_t seed = 0,
                                          IntegrationMode mode = IntegrationMode::automatic) {
  require(m >= 1, "weighted_centroid: need m >= 1");
  certify_nonnegative(f);
  const int n = c.dim();
  auto weight = [&](const Vector& x) { return std::pow(std::max(0.0, f.raw(x)), m); };
  WeightedCentroid out;
  if (mode == IntegrationMode::automatic && f.is_affine()) {
    const int q = gauss_points_for_degree(m + 1, c.affine_dim());
    const double vol = volume(c);
    const double mass = integrate(c, q, weight);
    require(mass > 0, "weighted_centroid: f^m integrates to zero");
    out.point = Vector(n);
    for (int j = 0; j < n; ++j)
      out.point[j] = integrate(c, q, [&](const Vector& x) { return x[j] * weight(x); }) / mass;
    out.covariance = Matrix::Zero(n, n);
    out.method = EstimateMethod::quadrature;
    out.mean_weight = mass / vol;
    return out;
  }
  require(samples >= 100, "Monte Carlo path needs at least 100 samples");
  const PointList xs = sample_uniform(c, samples, seed);
  double mass = 0.0, mass_sq = 0.0;
  Vector first = Vector::Zero(n);
  for (const auto& x : xs) {
    const double w = weight(x);
    mass += w;
    mass_sq += w * w;
    first += w * x;
  }
  require(mass > 0, "weighted_centroid: f^m integrates to zero");
  const double N = static_cast<double>(samples);
  out.point = first / mass;
  // Delta-method covariance of the self-normalized estimator.
  Matrix acc = Matrix::Zero(n, n);
  for (const auto& x : xs) {
    const Vector d = weight(x) * (x - out.point);
    acc += d * d.transpose();
  }
  const double mean_w = mass / N;
  out.covariance = acc / (N * N * mean_w * mean_w);
  out.method = EstimateMethod::monte_carlo;
  out.mean_weight = mean_w;
  out.mean_weight_std_error = std::sqrt(std::max(0.0, mass_sq / N - mean_w * mean_w) / (N - 1.0));
  return out;
}

/// (1/|C|) int_C f^m <= f(x_{f,m})^m.
inline InequalityReport check_hh_center_of_mass(const Polytope& c, const ConcaveFn& f, int m,
                                                std::size_t samples = kDefaultSamples,
                                                std::uint64_t seed = 0,
                                                IntegrationMode mode = IntegrationMode::automatic) {
  const WeightedCentroid wc = weighted_centroid(c, f, m, samples, seed, mode);
  InequalityReport r;
  r.name = "hh_center_of_mass";
  r.seed = seed;
  r.lhs = wc.mean_weight;
  r.lhs_std_error = wc.mean_weight_std_error;
  r.lhs_method = std::string(to_string(wc.method));
  const double fx = std::max(0.0, f.raw(wc.point));
  r.rhs = std::pow(fx, m);
  r.rhs_method = r.lhs_method;
  if (wc.method == EstimateMethod::monte_carlo) {
    const Vector grad = m * std::pow(fx, m - 1) * f.active_piece(wc.point).slope;
    r.rhs_std_error = std::sqrt(std::max(0.0, grad.dot(wc.covariance * grad)));
    r.tolerance = mc_tolerance(std::hypot(r.lhs_std_error, r.rhs_std_error));
  } else {
    r.tolerance = exact_tolerance(r.lhs, r.rhs);
  }
  for (int j = 0; j < c.dim(); ++j) r.details["x" + std::to_string(j + 1)] = wc.point[j];
  r.details["m"] = m;
  r.instance = {{"body", body_to_json(c)}, {"function", concave_to_json(f)}};
  return finalize(r);
}

}  // namespace hhgeom
