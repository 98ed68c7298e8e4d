#include "hhgeom/bodies.hpp"
#include "hhgeom/functional.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace hhgeom;

namespace {

const double e = std::numbers::e;

Polytope interval() { return cube(1); }

ConcaveFn tent(const Polytope& c) {  // min(2 - x1, 2 + x1)
  const int n = c.dim();
  return ConcaveFn(c, {{-unit_vector(n, 0), 2.0}, {unit_vector(n, 0), 2.0}});
}

std::vector<ConvexGauge> all_gauges() {
  return {ConvexGauge::power(1), ConvexGauge::power(2), ConvexGauge::power(2.5), ConvexGauge::power(3),
          ConvexGauge::exp_minus_one(), ConvexGauge::max_affine({{0.5, 0.0}, {2.0, -1.0}, {4.0, -3.0}})};
}

ConcaveFn random_concave_fn(const Polytope& c, int pieces, Rng& rng) {
  std::vector<AffinePiece> ps;
  for (int j = 0; j < pieces; ++j) ps.push_back({rng.uniform_cube(c.dim(), -0.3, 0.3), rng.uniform(1.0, 2.0)});
  return ConcaveFn(c, ps);
}

}  // namespace

TEST(ConcaveFn, Evaluation) {
  const auto f = ConcaveFn::affine(interval(), make_vector({1}), 1.0);
  EXPECT_EQ(eval_concave(f, make_vector({0})), 1.0);
  EXPECT_EQ(eval_concave(f, make_vector({-1})), 0.0);
  EXPECT_EQ(eval_concave(tent(cube(2)), Vector::Zero(2)), 2.0);
  const double mid = eval_concave(f, make_vector({0.2}));
  EXPECT_NEAR(mid, 0.5 * (eval_concave(f, make_vector({-0.4})) + eval_concave(f, make_vector({0.8}))), 1e-15);
  EXPECT_THROW(eval_concave(f, make_vector({1.5})), Error);
}

TEST(ConcaveFn, ClampAndCertification) {
  const auto neg = ConcaveFn::affine(interval(), make_vector({1}), 0.5);
  EXPECT_FALSE(neg.certified_nonnegative());
  EXPECT_THROW(certify_nonnegative(neg), PreconditionError);
  EXPECT_THROW(check_thm2(interval(), neg, ConvexGauge::power(2), 1000, 1), PreconditionError);
  // A value of -1e-9 at the boundary passes certification and clamps to 0.
  const auto edge = ConcaveFn::affine(interval(), make_vector({1}), 1.0 - 1e-9);
  EXPECT_TRUE(edge.certified_nonnegative());
  EXPECT_EQ(eval_concave(edge, make_vector({-1})), 0.0);
}

TEST(ConcaveFn, ClampIsInertOnCertifiedFunctions) {
  Rng rng(1);
  const Polytope c = random_hull(3, 10, rng, true);
  const auto f = random_concave_fn(c, 3, rng);
  ASSERT_TRUE(f.certified_nonnegative());
  for (const auto& x : sample_uniform(c, 10000, 2)) EXPECT_LE(std::abs(eval_concave(f, x) - f.raw(x)), kNumEps);
}

TEST(ConcaveFn, JsonRoundTrip) {
  const auto f = tent(cube(2));
  const auto g = concave_from_json(concave_to_json(f), cube(2));
  EXPECT_EQ(g.pieces().size(), 2u);
  EXPECT_EQ(eval_concave(g, make_vector({0.5, 0.1})), eval_concave(f, make_vector({0.5, 0.1})));
  EXPECT_THROW(concave_from_json(json::parse(R"({"pieces": []})"), cube(2)), Error);
}

TEST(Gauge, Values) {
  EXPECT_EQ(gauge_eval(ConvexGauge::power(2), 3.0), 9.0);
  EXPECT_EQ(gauge_eval(ConvexGauge::exp_minus_one(), 0.0), 0.0);
  EXPECT_NEAR(gauge_eval(ConvexGauge::exp_minus_one(), 1.0), e - 1, 1e-15);
  EXPECT_THROW(gauge_eval(ConvexGauge::power(2), -0.1), Error);
  EXPECT_THROW(ConvexGauge::power(0.5), Error);
}

TEST(Gauge, MaxAffineNormalization) {
  const auto g = ConvexGauge::max_affine({{1.0, 2.0}, {3.0, 0.0}});
  EXPECT_EQ(g(0.0), 0.0);
  EXPECT_NEAR(g(2.0), std::max(2.0, 6.0 - 2.0), 1e-15);
  EXPECT_THROW(ConvexGauge::max_affine({{0.0, 1.0}}), Error);
  EXPECT_THROW(ConvexGauge::max_affine({{-1.0, 0.0}, {1.0, 0.0}}), Error);
  EXPECT_THROW(ConvexGauge::max_affine({}), Error);
}

TEST(Gauge, JsonRoundTrip) {
  for (const auto& g : all_gauges()) {
    const auto h = gauge_from_json(gauge_to_json(g));
    for (double t : {0.0, 0.7, 2.3}) EXPECT_EQ(g(t), h(t)) << g.label();
  }
  EXPECT_THROW(gauge_from_json(json::parse(R"({"kind": "log"})")), Error);
}

TEST(Gauge, Monotone) {
  Rng rng(2);
  for (const auto& g : all_gauges())
    for (int j = 0; j < 1000; ++j) {
      const double a = rng.uniform(0, 5), b = rng.uniform(0, 5);
      EXPECT_LE(g(std::min(a, b)), g(std::max(a, b))) << g.label();
    }
}

TEST(FourPoint, WorkedExample) {
  EXPECT_TRUE(four_point(ConvexGauge::power(2), 1.0, 0.5, 2.0));
  EXPECT_NEAR(four_point_gap(ConvexGauge::power(2), 1.0, 0.5, 2.0), 4.0 - 2.5, 1e-15);
}

TEST(FourPoint, RandomTriples) {
  Rng rng(3);
  for (const auto& g : all_gauges()) {
    int bad = 0;
    for (int j = 0; j < 10000; ++j) {
      const double gamma = 1 + rng.uniform(0, 3);
      const double a = rng.uniform(0, 4);
      const double r = rng.uniform(0, a / gamma);
      if (!four_point(g, a, r, gamma)) ++bad;
    }
    EXPECT_EQ(bad, 0) << g.label();
  }
}

TEST(HhRhs, ClosedForms) {
  EXPECT_NEAR(hh_rhs(ConvexGauge::power(2), 1.0), 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(hh_rhs(ConvexGauge::exp_minus_one(), 1.0), (e * e - 1) / 2 - 1, 1e-14);
  EXPECT_NEAR(hh_rhs(ConvexGauge::exp_minus_one(), 1.0), 2.19453, 1e-5);
  for (const auto& g : all_gauges()) EXPECT_EQ(hh_rhs(g, 0.0), 0.0);
  EXPECT_THROW(hh_rhs(ConvexGauge::power(2), -1.0), Error);
}

TEST(HhRhs, MaxAffineMatchesMidpointRule) {
  const auto g = ConvexGauge::max_affine({{0.5, 0.0}, {2.0, -1.0}, {4.0, -3.0}});
  for (double f0 : {0.3, 0.8, 1.7}) {
    const int N = 200000;
    double acc = 0;
    for (int j = 0; j < N; ++j) acc += g(f0 * (1 + (-1 + (j + 0.5) * 2.0 / N)));
    EXPECT_NEAR(hh_rhs(g, f0), acc / N, 1e-8);
  }
}

TEST(Integrate, SquareAffineSquaredIsSevenSixths) {
  const auto f = ConcaveFn::affine(cube(2), make_vector({0.5, 0.5}), 1.0);
  const auto est = integrate_gauge_concave(cube(2), f, ConvexGauge::power(2));
  EXPECT_NEAR(est.value, 7.0 / 6.0, 1e-14);
  EXPECT_EQ(est.method, EstimateMethod::quadrature);
  EXPECT_EQ(est.std_error, 0.0);
}

TEST(Integrate, IntervalPowers) {
  const auto f = ConcaveFn::affine(interval(), make_vector({1}), 1.0);
  for (double a : {1.0, 2.0, 3.0})
    EXPECT_NEAR(integrate_gauge_concave(interval(), f, ConvexGauge::power(a)).value, std::pow(2, a) / (a + 1), 1e-14);
}

TEST(Integrate, ZeroFunction) {
  const auto f = ConcaveFn::constant(cube(2), 0.0);
  for (const auto& g : all_gauges()) EXPECT_EQ(integrate_gauge_concave(cube(2), f, g, 1000, 1).value, 0.0);
}

TEST(Integrate, MonteCarloAgreesWithExact) {
  const auto f = ConcaveFn::affine(cube(2), make_vector({0.5, 0.5}), 1.0);
  const auto exact = integrate_gauge_concave(cube(2), f, ConvexGauge::power(3));
  const auto mc = integrate_gauge_concave(cube(2), f, ConvexGauge::power(3), 1000000, 5, IntegrationMode::monte_carlo);
  EXPECT_EQ(mc.method, EstimateMethod::monte_carlo);
  EXPECT_EQ(mc.samples, 1000000u);
  EXPECT_NEAR(mc.value, exact.value, 4 * mc.std_error);
}

TEST(Integrate, DeterministicAcrossWorkers) {
  const auto f = tent(cube(2));
  const auto a = integrate_gauge_concave(cube(2), f, ConvexGauge::exp_minus_one(), 50000, 8);
  worker_count() = 4;
  const auto b = integrate_gauge_concave(cube(2), f, ConvexGauge::exp_minus_one(), 50000, 8);
  worker_count() = 1;
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(Integrate, RejectsTooFewSamples) {
  EXPECT_THROW(integrate_gauge_concave(cube(2), tent(cube(2)), ConvexGauge::power(2), 10, 1), Error);
}

TEST(GaugeBound, StrictSquareExample) {
  const auto f = ConcaveFn::affine(cube(2), make_vector({0.5, 0.5}), 1.0);
  const auto r = check_thm2(cube(2), f, ConvexGauge::power(2));
  EXPECT_NEAR(r.lhs, 7.0 / 6.0, 1e-14);
  EXPECT_NEAR(r.rhs, 4.0 / 3.0, 1e-15);
  EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(GaugeBound, CylinderEqualityFamily) {
  const Polytope c = generalized_cylinder(unit_vector(3, 0), cross_polytope(2));
  const auto f = ConcaveFn::affine(c, unit_vector(3, 0), 1.0);
  for (const auto& g : {ConvexGauge::power(2), ConvexGauge::power(3)}) {
    const auto r = check_thm2(c, f, g);
    EXPECT_EQ(r.verdict, Verdict::equality) << g.label();
  }
  const auto r = check_thm2(c, f, ConvexGauge::exp_minus_one(), 200000, 3);
  EXPECT_LE(std::abs(r.lhs - r.rhs), 3 * r.lhs_std_error);
  EXPECT_TRUE(r.holds());
}

TEST(GaugeBound, ConstantFunction) {
  const auto r = check_thm2(cube(3), ConcaveFn::constant(cube(3), 2.0), ConvexGauge::power(2));
  EXPECT_NEAR(r.lhs, 4.0, 1e-13);
  EXPECT_NEAR(r.rhs, 16.0 / 3.0, 1e-14);
  EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(GaugeBound, RejectsNonSymmetricDomain) {
  const Polytope c = box(2, 0, 1);
  EXPECT_THROW(check_thm2(c, ConcaveFn::constant(c, 1.0), ConvexGauge::power(2)), PreconditionError);
}

TEST(GaugeBound, BoundOrderingAndSweep) {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 2;
    const Polytope c = random_hull(n, 8, rng, true);
    const auto f = random_concave_fn(c, 3, rng);
    for (double a : {1.0, 2.0, 3.0}) {
      const auto r = check_thm2(c, f, ConvexGauge::power(a), 20000, static_cast<std::uint64_t>(trial));
      EXPECT_TRUE(r.holds()) << "trial " << trial;
      EXPECT_GE(r.rhs, std::pow(eval_concave(f, Vector::Zero(n)), a) - 1e-12);
    }
  }
}

TEST(PowerBound, IntervalEquality) {
  const auto f = ConcaveFn::affine(interval(), make_vector({1}), 1.0);
  for (double a : {1.0, 2.0, 3.0}) {
    const auto r = check_cor_alpha(interval(), f, a);
    EXPECT_NEAR(r.ratio, 1.0, 1e-12);
    EXPECT_NEAR(r.details.at("constant"), std::pow(2, a) / (a + 1), 1e-15);
    EXPECT_EQ(r.verdict, Verdict::equality);
  }
  EXPECT_THROW(check_cor_alpha(interval(), f, 0.5), Error);
}

TEST(PowerBound, TentOnSquare) {
  const auto r = check_cor_alpha(cube(2), tent(cube(2)), 1.0, 200000, 6);
  EXPECT_NEAR(r.lhs, 1.5, 4 * r.lhs_std_error);
  EXPECT_NEAR(r.rhs, 2.0, 1e-15);
  EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(ExponentialBound, IntervalEquality) {
  const auto u = ConcaveFn::affine(interval(), make_vector({1}), 1.0);
  const auto r = check_thm3(interval(), u);
  EXPECT_NEAR(r.lhs, (e * e - 1) / 2, 1e-12);
  EXPECT_NEAR(r.rhs, (e * e - 1) / 2, 1e-12);
  EXPECT_EQ(r.verdict, Verdict::equality);
  const auto mc = check_thm3(interval(), u, 200000, 2, IntegrationMode::monte_carlo);
  EXPECT_LE(std::abs(mc.lhs - mc.rhs), 3 * mc.lhs_std_error);
}

TEST(ExponentialBound, SquareExample) {
  const auto u = ConcaveFn::affine(cube(2), make_vector({0.5, 0.5}), 0.0);
  const auto r = check_thm3(cube(2), u);
  EXPECT_NEAR(r.lhs, e - 2 + 1 / e, 1e-9);
  EXPECT_NEAR(r.rhs, std::sinh(1.0), 1e-12);
  EXPECT_NEAR(r.lhs, 1.08616, 1e-5);
  EXPECT_NEAR(r.rhs, 1.17520, 1e-5);
  EXPECT_EQ(r.verdict, Verdict::pass);
  const auto mc = check_thm3(cube(2), u, 200000, 9, IntegrationMode::monte_carlo);
  EXPECT_NEAR(mc.lhs, e - 2 + 1 / e, 3 * mc.lhs_std_error);
}

TEST(ExponentialBound, ConstantExponentUsesLimit) {
  const auto r = check_thm3(cube(2), ConcaveFn::constant(cube(2), 0.7), 1000, 1);
  EXPECT_NEAR(r.rhs, std::exp(0.7), 1e-15);
  EXPECT_NEAR(r.lhs, std::exp(0.7), 1e-13);
  EXPECT_EQ(r.verdict, Verdict::equality);
}

TEST(ClassicalHh, Examples) {
  const auto r = check_classical_hh(cube(2), tent(cube(2)), 200000, 1);
  EXPECT_NEAR(r.lhs, 1.5, 4 * r.lhs_std_error);
  EXPECT_NEAR(r.rhs, 2.0, 1e-15);
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_EQ(r.details.at("affine"), 0.0);
  Rng rng(5);
  const Polytope c = random_hull(3, 9, rng);
  const auto a = check_classical_hh(c, ConcaveFn::affine(c, make_vector({0.1, -0.2, 0.3}), 3.0));
  EXPECT_EQ(a.verdict, Verdict::equality);
  EXPECT_EQ(a.details.at("near_equality"), 1.0);
}

TEST(ClassicalHh, CallableOverload) {
  // Concave callable on [-1, 1]^2: 1 - x^2, mean 2/3 against 1.
  const auto r = check_classical_hh(cube(2), [](const Vector& x) { return 1 - x[0] * x[0]; }, 100000, 2);
  EXPECT_NEAR(r.lhs, 2.0 / 3.0, 4 * r.lhs_std_error);
  EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(WeightedCentroid, Examples) {
  const auto f = ConcaveFn::affine(interval(), make_vector({1}), 1.0);
  EXPECT_NEAR(weighted_centroid(interval(), f, 1).point[0], 1.0 / 3.0, 1e-14);
  const auto mc = weighted_centroid(interval(), f, 1, 200000, 4, IntegrationMode::monte_carlo);
  EXPECT_NEAR(mc.point[0], 1.0 / 3.0, 4 * std::sqrt(mc.covariance(0, 0)));
  Rng rng(7);
  const Polytope c = random_hull(3, 9, rng);
  const Vector wc = weighted_centroid(c, ConcaveFn::constant(c, 2.0), 2).point;
  EXPECT_LE((wc - centroid(c)).norm(), 1e-12);
  const auto sym = weighted_centroid(cube(2), tent(cube(2)), 2, 20000, 3);
  for (int j = 0; j < 2; ++j) EXPECT_LE(std::abs(sym.point[j]), 4 * std::sqrt(sym.covariance(j, j)));
  EXPECT_THROW(weighted_centroid(cube(2), ConcaveFn::constant(cube(2), 0.0), 1), Error);
  EXPECT_THROW(weighted_centroid(cube(2), tent(cube(2)), 0), Error);
}

TEST(HhCenterOfMass, Examples) {
  const auto f = ConcaveFn::affine(interval(), make_vector({1}), 1.0);
  const auto r = check_hh_center_of_mass(interval(), f, 1);
  EXPECT_NEAR(r.lhs, 1.0, 1e-14);
  EXPECT_NEAR(r.rhs, 4.0 / 3.0, 1e-14);
  EXPECT_EQ(r.verdict, Verdict::pass);
  const auto c = check_hh_center_of_mass(cube(3), ConcaveFn::constant(cube(3), 1.5), 2);
  EXPECT_EQ(c.verdict, Verdict::equality);
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Polytope k = random_hull(3, 8, rng);
    const auto g = random_concave_fn(k, 3, rng);
    const auto rep = check_hh_center_of_mass(k, g, 1 + trial % 3, 20000, static_cast<std::uint64_t>(trial));
    EXPECT_TRUE(rep.holds()) << "trial " << trial;
  }
}
