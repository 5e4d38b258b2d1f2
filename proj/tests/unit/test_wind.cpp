#include "generators.hpp"
#include "wildfront/fixtures.hpp"
#include "wildfront/indicatrix.hpp"
#include "wildfront/wind.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace wildfront;

TEST(Wind, ConstantFlowIsTranslation) {
  const WindField w = WindField::constant(Vec3(0, 1.0 / 3, 1.0 / 6));
  EXPECT_TRUE(w.is_constant());
  const Point3 p(1, 2, 3);
  EXPECT_LT((flow(w, 3.0, p) - (p + 3.0 * Vec3(0, 1.0 / 3, 1.0 / 6))).norm(), 1e-14);
}

TEST(Wind, Example2FlowAndDifferential) {
  const double k = 0.1;
  const WindField w = fixtures::example2_wind(k);
  test_support::Gen gen(31);
  for (int i = 0; i < 50; ++i) {
    const Point3 p = gen.point(3);
    const double t = gen.uniform(0, 5);
    EXPECT_LT((flow(w, t, p) - Point3(p.x() + k * t * p.y(), p.y(), p.z())).norm(), 1e-12);
    EXPECT_LT((flow_differential(w, t, p, Vec3(0, 1, 0)) - Vec3(k * t, 1, 0)).norm(), 1e-12);
  }
}

TEST(Wind, NumericFlowMatchesAffineClosedForm) {
  Mat3 j;
  j << 0, -0.3, 0, 0.3, 0, 0, 0, 0, 0;
  const WindField affine = WindField::affine(Vec3(0.1, 0, 0.05), j);
  const WindField numeric = WindField::analytic([&](const Point3& p) { return Vec3(Vec3(0.1, 0, 0.05) + j * p); });
  test_support::Gen gen(32);
  for (int i = 0; i < 20; ++i) {
    const Point3 p = gen.point(2);
    const double t = gen.uniform(0, 4);
    EXPECT_LT((flow(affine, t, p) - flow(numeric, t, p)).norm(), 1e-8);
  }
}

TEST(Wind, GridInterpolationIsExactForAffineData) {
  std::vector<double> axis{-1, 0, 0.5, 2};
  std::vector<Vec3> values;
  Mat3 j;
  j << 0.1, 0.2, 0, 0, -0.1, 0.3, 0.05, 0, 0;
  for (double z : axis)
    for (double y : axis)
      for (double x : axis) values.push_back(j * Vec3(x, y, z));
  const WindGrid g(axis, axis, axis, values);
  test_support::Gen gen(33);
  for (int i = 0; i < 100; ++i) {
    const Point3 p(gen.uniform(-1, 2), gen.uniform(-1, 2), gen.uniform(-1, 2));
    EXPECT_LT((g.at(p) - j * p).norm(), 1e-14);
  }
  // Clamp to edge outside the lattice.
  EXPECT_LT((g.at(Point3(5, 0, 0)) - j * Vec3(2, 0, 0)).norm(), 1e-14);
}

TEST(Wind, LieDerivativeMatchesHandComputation) {
  const double k = 0.1;
  const MetricField h = metric_field(fixtures::example2_spec());
  const WindField w = fixtures::example2_wind(k);
  test_support::Gen gen(34);
  for (int i = 0; i < 20; ++i) {
    const Point3 p = gen.point(2);
    const Mat3 m = h.at(p).matrix();
    // W = (k y, 0, 0) and h depends on y only: L_ij = k (h_xj d_iy + h_ix d_jy).
    Mat3 expected = Mat3::Zero();
    for (int a = 0; a < 3; ++a) {
      expected(1, a) += k * m(0, a);
      expected(a, 1) += k * m(a, 0);
    }
    EXPECT_LT((lie_derivative_h(w, h, p) - expected).norm(), 1e-7);
  }
}

TEST(Wind, KillingDetection) {
  Mat3 j;
  j << 0, -1, 0, 1, 0, 0, 0, 0, 0;
  const Box box{Point3::Constant(-2), Point3::Constant(2), 5};
  EXPECT_TRUE(is_killing(WindField::affine(Vec3::Zero(), j), MetricField(), box).killing);
  // Rotation about z is not Killing for an anisotropic metric in the xy-plane.
  const MetricField aniso = MetricField::constant(SpdMatrix3::diagonal(1, 4, 1));
  EXPECT_FALSE(is_killing(WindField::affine(Vec3::Zero(), j), aniso, box).killing);

  const KillingReport r = is_killing(fixtures::example2_wind(0.1), metric_field(fixtures::example2_spec()), box);
  EXPECT_FALSE(r.killing);
  EXPECT_GT(r.max_residual, 0.1);
}

TEST(Wind, ScheduleValidation) {
  const WindField w = WindField::constant(Vec3::Zero());
  std::vector<WindSegment> ok{{0, 1, w}, {1, 3, w}};
  EXPECT_NO_THROW(validate_schedule(ok));
  std::vector<WindSegment> overlap{{0, 2, w}, {1, 3, w}};
  std::vector<WindSegment> gap{{0, 1, w}, {1.5, 3, w}};
  std::vector<WindSegment> late{{0.5, 1, w}};
  std::vector<WindSegment> empty_interval{{0, 0, w}};
  for (const auto* s : {&overlap, &gap, &late, &empty_interval}) EXPECT_THROW(validate_schedule(*s), Error);
}
