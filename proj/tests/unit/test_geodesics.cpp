#include "generators.hpp"
#include "wildfront/fixtures.hpp"
#include "wildfront/geodesics.hpp"
#include "wildfront/indicatrix.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace wildfront;

namespace {

// Example 2 metric h(y) = Ry(y)^T D Ry(y) and its exact y-derivative.
Mat3 ry(double a) {
  Mat3 m;
  m << std::cos(a), 0, std::sin(a), 0, 1, 0, -std::sin(a), 0, std::cos(a);
  return m;
}
Mat3 dry(double a) {
  Mat3 m;
  m << -std::sin(a), 0, std::cos(a), 0, 0, 0, -std::cos(a), 0, -std::sin(a);
  return m;
}
const Mat3 kD = Vec3(1, 4, 0.25).asDiagonal();
Mat3 h2(double y) { return ry(y).transpose() * kD * ry(y); }
Mat3 dh2(double y) { return dry(y).transpose() * kD * ry(y) + ry(y).transpose() * kD * dry(y); }

double symbolic_christoffel(double y, int i, int j, int k) {
  const Mat3 inv = h2(y).inverse();
  const Mat3 d = dh2(y);
  const auto dh = [&](int l, int a, int b) { return l == 1 ? d(a, b) : 0.0; };
  double s = 0.0;
  for (int l = 0; l < 3; ++l) s += 0.5 * inv(i, l) * (dh(j, l, k) + dh(k, l, j) - dh(l, j, k));
  return s;
}

ZermeloData rotating_wind(double omega) {
  Mat3 j;
  j << 0, -omega, 0, omega, 0, 0, 0, 0, 0;
  return ZermeloData(MetricField(), WindField::affine(Vec3::Zero(), j));
}

double endpoint_error(const GeodesicProblem& base, double dt, const Point3& reference) {
  GeodesicProblem p = base;
  p.dt = dt;
  return (trace_wave_ray(p).end_point() - reference).norm();
}

}  // namespace

TEST(Geodesics, Example2ChristoffelMatchesSymbolicOracle) {
  const MetricField m = metric_field(fixtures::example2_spec());
  for (const Point3& p : {Point3(0, std::numbers::pi / 4, 0), Point3(1, -0.7, 2), Point3(-2, 1.9, 0.5)}) {
    const Christoffel c = christoffel(m, p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) EXPECT_NEAR(c(i, j, k), symbolic_christoffel(p.y(), i, j, k), 1e-6);
  }
}

TEST(Geodesics, ConstantMetricHasNoChristoffelSymbols) {
  const Christoffel c = christoffel(MetricField::constant(SpdMatrix3::diagonal(1, 2, 3)), Point3(1, 2, 3));
  for (const auto& s : c.symbols) EXPECT_EQ(s.norm(), 0.0);
}

TEST(Geodesics, ConstantModeIsExactStraightLine) {
  GeodesicProblem p;
  p.mode = RayMode::Constant;
  p.data = fixtures::example1_data();
  p.p = Point3(1, 2, 3);
  p.v = unit_f_direction(p.data, p.p, Vec3(0.3, -1, 0.2));
  p.horizon = 10;
  const Trajectory t = trace_wave_ray(p);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_LT((t.x[i] - (p.p + t.t[i] * p.v)).norm(), 1e-12);
}

TEST(Geodesics, GeneralModeWithConstantDataIsStraight) {
  test_support::Gen gen(51);
  for (int i = 0; i < 20; ++i) {
    const SpdMatrix3 h = gen.spd(0.2, 5);
    GeodesicProblem p;
    p.mode = RayMode::General;
    p.data = ZermeloData(MetricField::constant(h), WindField::constant(gen.wind(h)));
    p.p = gen.point(2);
    p.v = unit_f_direction(p.data, p.p, gen.vec());
    p.horizon = 2;
    const Trajectory t = trace_wave_ray(p);
    double worst = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) worst = std::max(worst, (t.x[k] - (p.p + t.t[k] * p.v)).norm());
    EXPECT_LT(worst, 1e-6);
  }
}

TEST(Geodesics, KillingModeAgreesWithGeneralMode) {
  const ZermeloData data = rotating_wind(0.2);
  test_support::Gen gen(52);
  for (int i = 0; i < 10; ++i) {
    GeodesicProblem p;
    p.data = data;
    p.p = gen.point(1);
    p.v = unit_f_direction(data, p.p, gen.vec());
    p.horizon = 1;
    p.mode = RayMode::Killing;
    const Point3 killing = trace_wave_ray(p).end_point();
    p.mode = RayMode::General;
    const Trajectory general = trace_wave_ray(p);
    EXPECT_LT((killing - general.end_point()).norm(), 1e-4);
    for (std::size_t k = 0; k < general.size(); ++k)
      EXPECT_NEAR(eval_randers(data, general.x[k], general.v[k]), 1.0, 1e-8);
  }
}

TEST(Geodesics, KillingModeRejectsNonKillingWind) {
  GeodesicProblem p;
  p.data = fixtures::example2_data(0.1);
  p.mode = RayMode::Killing;
  p.v = unit_f_direction(p.data, p.p, Vec3(1, 1, 0));
  try {
    trace_wave_ray(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ModeMismatch);
  }
}

TEST(Geodesics, Example2SpeedAndSelfConvergence) {
  const ZermeloData data = fixtures::example2_data(0.1);
  test_support::Gen gen(53);
  for (int i = 0; i < 8; ++i) {
    GeodesicProblem p;
    p.mode = RayMode::General;
    p.data = data;
    p.p = gen.point(1);
    p.v = unit_f_direction(data, p.p, gen.vec());
    p.horizon = 1.0;
    const Trajectory t = trace_wave_ray(p);
    for (std::size_t k = 0; k < t.size(); ++k) EXPECT_NEAR(eval_randers(data, t.x[k], t.v[k]), 1.0, 1e-5);

    GeodesicProblem fine = p;
    fine.dt = 1.0 / 640;
    const Point3 ref = trace_wave_ray(fine).end_point();
    const double e20 = endpoint_error(p, 1.0 / 20, ref), e40 = endpoint_error(p, 1.0 / 40, ref);
    EXPECT_GE(e20 / e40, 8.0) << "e20=" << e20 << " e40=" << e40;
  }
}

TEST(Geodesics, HGeodesicAlongPrincipalDirectionIsStraight) {
  const MetricField m = metric_field(fixtures::example2_spec());
  const Trajectory t = integrate_h_geodesic(m, Point3(0.5, 0, -1), Vec3(1, 0, 0), 2.0);
  for (std::size_t k = 0; k < t.size(); ++k)
    EXPECT_LT((t.x[k] - Point3(0.5 + t.t[k], 0, -1)).norm(), 1e-9);
  // Off the principal planes the same start leaves the plane y = const.
  const SpdMatrix3 h = m.at(Point3(0, 0.6, 0));
  const Vec3 u = Vec3(1, 0, 0) / h.norm(Vec3(1, 0, 0));
  const Trajectory bent = integrate_h_geodesic(m, Point3(0, 0.6, 0), u, 2.0);
  EXPECT_GT(std::abs(bent.end_point().y() - 0.6), 1e-3);
}

TEST(Geodesics, HGeodesicKeepsUnitSpeed) {
  const MetricField m = metric_field(fixtures::example2_spec());
  test_support::Gen gen(54);
  for (int i = 0; i < 10; ++i) {
    const Point3 p = gen.point(1);
    const Vec3 u = gen.unit_h(m.at(p));
    const Trajectory t = integrate_h_geodesic(m, p, u, 1.5);
    for (std::size_t k = 0; k < t.size(); ++k) EXPECT_NEAR(m.at(t.x[k]).norm(t.v[k]), 1.0, 1e-7);
  }
  EXPECT_THROW(integrate_h_geodesic(m, Point3::Zero(), Vec3(3, 0, 0), 1.0), Error);
}

TEST(Geodesics, TrajectoryInterpolation) {
  GeodesicProblem p;
  p.mode = RayMode::Constant;
  p.data = ZermeloData(MetricField(), WindField::constant(Vec3(0.2, 0, 0)));
  p.v = unit_f_direction(p.data, p.p, Vec3(0, 1, 0));
  p.horizon = 1;
  p.record_stride = 100;
  const Trajectory t = trace_wave_ray(p);
  EXPECT_EQ(t.size(), 11u);
  EXPECT_LT((t.position(0.537) - 0.537 * p.v).norm(), 1e-12);
  EXPECT_LT((t.velocity(0.21) - p.v).norm(), 1e-12);
  try {
    t.position(1.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfHorizon);
  }
}

TEST(Geodesics, ModeSelection) {
  const Box box{Point3::Constant(-1), Point3::Constant(1), 5};
  EXPECT_EQ(select_mode(fixtures::example1_data(), box).mode, RayMode::Constant);
  EXPECT_EQ(select_mode(rotating_wind(0.2), box).mode, RayMode::Killing);
  const ModeSelection s = select_mode(fixtures::example2_data(0.1), box);
  EXPECT_EQ(s.mode, RayMode::General);
  ASSERT_TRUE(s.killing.has_value());
  EXPECT_FALSE(s.killing->killing);
}
