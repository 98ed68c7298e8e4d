#include "hhgeom/bodies.hpp"
#include "hhgeom/io.hpp"
#include "hhgeom/marginals.hpp"
#include "hhgeom/triangulation.hpp"
#include "hhgeom/verify.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace hhgeom;

namespace {

Polytope pyramid() { return cone_over_base(cube(2), unit_vector(3, 2)); }

Matrix random_rotation(int n, Rng& rng) {
  Matrix A(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) A(r, c) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(A);
  return qr.householderQ();
}

Subspace random_subspace(int n, int i, Rng& rng) {
  PointList vs;
  for (int j = 0; j < i; ++j) vs.push_back(rng.uniform_cube(n));
  return Subspace::span(n, vs);
}

}  // namespace

TEST(Subspace, FramesAreOrthonormal) {
  Rng rng(1);
  for (int n = 2; n <= 6; ++n)
    for (int i = 1; i < n; ++i) {
      const Subspace h = random_subspace(n, i, rng);
      Matrix Q(n, n);
      Q << h.basis(), h.complement();
      EXPECT_LE((Q.transpose() * Q - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Subspace, RejectsDependentOrImproperSpans) {
  EXPECT_THROW(Subspace::span(3, {unit_vector(3, 0), 2 * unit_vector(3, 0)}), Error);
  EXPECT_THROW(Subspace::coordinate(2, {0, 1}), Error);
  EXPECT_THROW(Subspace::coordinate(2, {2}), Error);
}

TEST(Subspace, JsonRoundTripOrthonormalizes) {
  const Subspace h = subspace_from_json(json::parse(R"({"ambient": 3, "basis": [[2, 0, 0], [1, 1, 0]]})"));
  EXPECT_EQ(h.dim(), 2);
  EXPECT_NEAR(h.basis().col(1).dot(unit_vector(3, 1)), 1.0, 1e-12);
  const Subspace g = subspace_from_json(subspace_to_json(h));
  EXPECT_LE((g.basis() - h.basis()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Project, CubeOntoCoordinatePlane) {
  const Polytope p = project(cube(3), Subspace::coordinate(3, {0, 1}));
  EXPECT_EQ(p.num_vertices(), 4u);
  EXPECT_NEAR(volume(p), 4.0, 1e-12);
}

TEST(Project, PyramidOntoE1E3IsTriangle) {
  const Polytope p = project(pyramid(), Subspace::coordinate(3, {0, 2}));
  EXPECT_EQ(p.num_vertices(), 3u);
  EXPECT_NEAR(volume(p), 1.0, 1e-12);
  for (const Vector& v : {make_vector({-1, 0}), make_vector({1, 0}), make_vector({0, 1})})
    EXPECT_TRUE(p.contains(v, 1e-12));
}

TEST(Project, ScaledSlabBodyOntoE1IsUnitSegment) {
  const Polytope p = project(scaled_slab_body(3, 1, std::nullopt, box(2, 0, 1)), Subspace::coordinate(3, {0}));
  EXPECT_NEAR(support(p, make_vector({1})), 1.0, 1e-12);
  EXPECT_NEAR(support(p, make_vector({-1})), 1.0, 1e-12);
}

TEST(Section, CubeCentralSegment) {
  const Polytope s = section(cube(3), Subspace::coordinate(3, {0, 1}), Vector::Zero(2));
  EXPECT_NEAR(volume(s), 2.0, 1e-12);
}

TEST(Section, PyramidCentroidSections) {
  const Subspace h = Subspace::coordinate(3, {0, 2});
  EXPECT_NEAR(section_volume(pyramid(), h, make_vector({0, 1.0 / 3.0})), 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(section_volume(pyramid(), h, make_vector({0, 0.25})), 1.5, 1e-12);
}

TEST(Section, OutsideProjectionIsEmpty) {
  const Subspace h = Subspace::coordinate(3, {0, 1});
  const Polytope s = section(cube(3), h, make_vector({1.5, 0}));
  EXPECT_TRUE(s.empty());
  EXPECT_EQ(section_volume(cube(3), h, make_vector({1.5, 0})), 0.0);
  EXPECT_THROW(section(cube(3), h, make_vector({0})), Error);
}

TEST(Section, BoundaryFaceHasZeroMeasure) {
  const Subspace h = Subspace::coordinate(3, {0});
  const Polytope s = section(cross_polytope(3), h, make_vector({1.0}));
  EXPECT_EQ(s.affine_dim(), 0);
  EXPECT_EQ(section_volume(cross_polytope(3), h, make_vector({1.0})), 0.0);
}

TEST(Section, DualityWithProjection) {
  Rng rng(6);
  const Polytope k = random_hull(4, 14, rng);
  const Subspace h = random_subspace(4, 2, rng);
  const Polytope shadow = project(k, h);
  for (const auto& x : sample_uniform(shadow, 200, 4)) EXPECT_GT(section_volume(k, h, x), 0.0);
  for (int j = 0; j < 200; ++j) {
    const Vector x = rng.uniform_cube(2, -3, 3);
    if (!shadow.contains(x, 1e-6)) {
      EXPECT_EQ(section_volume(k, h, x), 0.0);
    }
  }
}

TEST(Brunn, CubeProfileIsConstant) {
  const BrunnProfile p{Subspace::coordinate(3, {0}), cube(3)};
  for (double t : {-1.0, -0.3, 0.0, 0.8, 1.0}) EXPECT_NEAR(brunn_eval(p, make_vector({t})), 2.0, 1e-12);
  EXPECT_EQ(brunn_eval(p, make_vector({1.2})), 0.0);
}

TEST(Brunn, ScaledSlabProfileIsAffine) {
  const BrunnProfile p{Subspace::coordinate(3, {0}), scaled_slab_body(3, 1, std::nullopt, box(2, 0, 1))};
  for (double t : {-0.9, -0.2, 0.0, 0.5, 1.0}) EXPECT_NEAR(brunn_eval(p, make_vector({t})), 1 + t, 1e-12);
}

TEST(Brunn, CrossPolytopeProfile) {
  const BrunnProfile p{Subspace::coordinate(3, {0}), cross_polytope(3)};
  for (double t : {-0.7, 0.0, 0.4})
    EXPECT_NEAR(brunn_eval(p, make_vector({t})), std::sqrt(2.0) * (1 - std::abs(t)), 1e-12);
  const auto rep = check_brunn_concavity(cross_polytope(3), Subspace::coordinate(3, {0}), 500, 1);
  EXPECT_EQ(rep.violations, 0u);
  EXPECT_LE(rep.worst_violation, kNumEps);
}

TEST(Brunn, CubeHasNoViolation) {
  const auto rep = check_brunn_concavity(cube(3), Subspace::coordinate(3, {0, 1}), 200, 2);
  EXPECT_EQ(rep.violations, 0u);
  EXPECT_LE(rep.worst_violation, 1e-12);
}

TEST(Brunn, RandomFourDimensionalSweep) {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const Polytope k = random_hull(4, 10, rng);
    const Subspace h = random_subspace(4, 2, rng);
    const auto rep = check_brunn_concavity(k, h, 5, static_cast<std::uint64_t>(trial));
    EXPECT_EQ(rep.violations, 0u) << "trial " << trial << " worst " << rep.worst_violation;
  }
}

TEST(Brunn, RejectsZeroTrials) {
  EXPECT_THROW(check_brunn_concavity(cube(2), Subspace::coordinate(2, {0}), 0, 1), Error);
}

TEST(Fubini, CubeIsExact) {
  const auto est = fubini_volume(cube(3), Subspace::coordinate(3, {0}), 1000);
  EXPECT_NEAR(est.value, 8.0, 1e-6);
  EXPECT_EQ(est.method, EstimateMethod::quadrature);
  EXPECT_EQ(est.std_error, 0.0);
}

TEST(Fubini, ScaledSlabBody) {
  const auto est = fubini_volume(scaled_slab_body(3, 1, std::nullopt, box(2, 0, 1)), Subspace::coordinate(3, {0}), 10);
  EXPECT_NEAR(est.value, 8.0 / 3.0, 1e-12);
}

TEST(Fubini, OneDimensionalQuadratureMatchesVolume) {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const Polytope k = random_hull(3, 12, rng);
    const Subspace h = random_subspace(3, 1, rng);
    const double v = volume(k);
    EXPECT_NEAR(fubini_volume(k, h, 4).value, v, 1e-6 * v);
  }
}

TEST(Fubini, MonteCarloWithinThreeSigma) {
  Rng rng(32);
  for (int trial = 0; trial < 5; ++trial) {
    const Polytope k = random_hull(4, 12, rng);
    const Subspace h = random_subspace(4, 2, rng);
    const auto est = fubini_volume(k, h, 4000, static_cast<std::uint64_t>(trial));
    EXPECT_EQ(est.method, EstimateMethod::monte_carlo);
    EXPECT_GT(est.std_error, 0.0);
    EXPECT_NEAR(est.value, volume(k), 3 * est.std_error);
  }
}

TEST(Fubini, RejectsTinyGrid) { EXPECT_THROW(fubini_volume(cube(2), Subspace::coordinate(2, {0}), 1), Error); }

TEST(ProjectionSymmetry, Examples) {
  EXPECT_TRUE(is_projection_symmetric(cube(3), Subspace::coordinate(3, {1})));
  EXPECT_TRUE(is_projection_symmetric(cube(3), Subspace::coordinate(3, {0, 2})));
  EXPECT_FALSE(is_projection_symmetric(pyramid(), Subspace::coordinate(3, {0, 2})));
  EXPECT_TRUE(is_projection_symmetric(scaled_slab_body(3, 1, std::nullopt, box(2, 0, 1)),
                                      Subspace::coordinate(3, {0})));
}

TEST(Rotation, SectionsAndProjectionsAreCovariant) {
  Rng rng(40);
  for (int trial = 0; trial < 10; ++trial) {
    const Polytope k = random_hull(4, 12, rng);
    const Subspace h = random_subspace(4, 2, rng);
    const Matrix R = random_rotation(4, rng);
    const Polytope rk = affine_image(k, R, Vector::Zero(4));
    const Subspace rh = h.rotated(R);
    const double pv = volume(project(k, h));
    EXPECT_NEAR(volume(project(rk, rh)), pv, 1e-9 * pv);
    for (const auto& x : sample_uniform(project(k, h), 5, 9)) {
      const double sv = section_volume(k, h, x);
      EXPECT_NEAR(section_volume(rk, rh, x), sv, 1e-9 * std::max(sv, 1e-3));
    }
  }
}
