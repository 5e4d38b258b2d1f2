#include "generators.hpp"
#include "wildfront/fixtures.hpp"
#include "wildfront/propagation.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace wildfront;

namespace {

// Arrival time from a point under constant data: the positive root of
// (1 - h(W,W)) rho^2 + 2 h(d,W) rho - h(d,d) = 0, i.e. |d - rho W|_h = rho.
double quadratic_arrival(const SpdMatrix3& h, const Vec3& w, const Vec3& d) {
  const double a = 1.0 - h.norm_sq(w), b = 2.0 * h.inner(d, w), c = -h.norm_sq(d);
  return (-b + std::sqrt(b * b - 4 * a * c)) / (2 * a);
}

SliceGrid slice(double lo, double hi, std::size_t n, double z = 0.0) {
  SliceGrid g;
  g.plane = Plane::axis(2, z);
  g.lo = Vec2(lo, lo);
  g.hi = Vec2(hi, hi);
  g.nu = g.nv = n;
  return g;
}

}  // namespace

TEST(Propagation, SphericalWavefrontMatchesQuadraticOracle) {
  test_support::Gen gen(71);
  for (int i = 0; i < 10; ++i) {
    const SpdMatrix3 h = gen.spd(0.3, 3);
    const Vec3 w = gen.wind(h, 0.8);
    const ZermeloData data(MetricField::constant(h), WindField::constant(w));
    const Point3 p = gen.point(1);
    const double tau = gen.uniform(0.5, 3);
    const Wavefront f = spherical_wavefront(data, p, tau, 300);
    EXPECT_GE(f.samples.size(), 300u);
    for (const auto& s : f.samples) {
      EXPECT_NEAR(quadratic_arrival(h, w, s.x - p), tau, 1e-9 * tau);
      EXPECT_NEAR(h.norm(s.x - p - tau * w), tau, 1e-9 * tau);
    }
  }
}

TEST(Propagation, CurveLaunchesAreFOrthogonalAndUnit) {
  const ZermeloData data = fixtures::example1_data();
  const FrontGeometry c = fixtures::example1_curve();
  for (double s : {0.0, 1.0, 2.5, 4.0}) {
    const FrontSample fs = c.sample_at({s, 0});
    for (const Vec3& v : launch_directions(data, c, {s, 0})) {
      EXPECT_NEAR(eval_randers(data, fs.x, v), 1.0, 1e-12);
      EXPECT_TRUE(is_f_orthogonal(data, fs.x, fs.t1, v, 1e-10));
      // Formulated in coordinates: the first launch equation along C vanishes.
      EXPECT_NEAR(fixtures::example1_curve_orthogonality(s, v, fixtures::Constants::Derived), 0.0, 1e-12);
    }
  }
}

TEST(Propagation, SurfaceLaunchesAreFOrthogonal) {
  const ZermeloData data = fixtures::example1_data();
  const FrontGeometry s = fixtures::example1_surface();
  for (double s1 : {0.3, 2.0, 5.0}) {
    const FrontSample fs = s.sample_at({s1, 1.0});
    const auto vs = launch_directions(data, s, {s1, 1.0});
    ASSERT_EQ(vs.size(), 1u);
    EXPECT_TRUE(is_f_orthogonal(data, fs.x, fs.t1, vs[0], 1e-10));
    EXPECT_TRUE(is_f_orthogonal(data, fs.x, fs.t2, vs[0], 1e-10));
    // Second launch equation: 3 sqrt(3) / 7 (v2 - 1/3) = v3 - 1/6.
    EXPECT_NEAR(3 * std::sqrt(3.0) / 7 * (vs[0].y() - 1.0 / 3), vs[0].z() - 1.0 / 6, 1e-12);
  }
}

TEST(Propagation, EuclideanCircleOutwardAndInward) {
  const ZermeloData calm;
  const FrontGeometry circle = FrontGeometry::curve(
      [](double s) { return Point3(2 * std::cos(s), 2 * std::sin(s), 0); },
      [](double s) { return Vec3(-2 * std::sin(s), 2 * std::cos(s), 0); }, 0, 2 * std::numbers::pi, true);
  PropagationSettings st;
  st.sampling.curve_samples = 64;
  st.sampling.normal_samples = 9;
  const Plane z0 = Plane::axis(2, 0.0);
  const auto outer = slice_wavefront(propagate_front(calm, circle, 1.0, st), z0);
  ASSERT_FALSE(outer.empty());
  for (const auto& l : outer)
    for (const auto& p : l.points) EXPECT_NEAR(p.norm(), 3.0, 1e-9);
  st.side = Side::Inward;
  const auto inner = slice_wavefront(propagate_front(calm, circle, 1.0, st), z0);
  ASSERT_FALSE(inner.empty());
  for (const auto& l : inner)
    for (const auto& p : l.points) EXPECT_NEAR(p.norm(), 1.0, 1e-9);
}

TEST(Propagation, SemigroupInConstantAndGeneralModes) {
  PropagationSettings st;
  st.sampling.sphere_points = 400;
  for (const ZermeloData& data : {fixtures::example1_data(), fixtures::example2_data(0.1)}) {
    const FrontGeometry a = FrontGeometry::point(Point3(0, 0.3, 0));
    const Wavefront once = propagate_front(data, a, 0.8, st);
    const Wavefront half = propagate_front(data, a, 0.4, st);
    PropagationSettings next = st;
    next.side = Side::Outward;
    const Wavefront twice = propagate_front(data, to_front(half, data), 0.4, next);
    ASSERT_EQ(once.samples.size(), twice.samples.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < once.samples.size(); ++i)
      worst = std::max(worst, (once.samples[i].x - twice.samples[i].x).norm());
    EXPECT_LT(worst, 1e-6);
  }
}

TEST(Propagation, DeterministicAcrossThreadCounts) {
  const ZermeloData data = fixtures::example2_data(0.1);
  PropagationSettings st;
  st.sampling.sphere_points = 64;
  st.threads = 1;
  const Wavefront a = propagate_front(data, FrontGeometry::point(Point3::Zero()), 0.5, st);
  st.threads = 4;
  const Wavefront b = propagate_front(data, FrontGeometry::point(Point3::Zero()), 0.5, st);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) EXPECT_EQ(a.samples[i].x, b.samples[i].x);
}

TEST(Propagation, ForcedKillingModeOnNonKillingWind) {
  PropagationSettings st;
  st.mode = RayMode::Killing;
  try {
    resolve_mode(fixtures::example2_data(0.1), FrontGeometry::point(Point3::Zero()), 1.0, st);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ModeMismatch);
  }
}

TEST(Huygens, PointSeedIsSlicedIndicatrix) {
  const ZermeloData data = fixtures::example1_data();
  const SliceGrid g = slice(-3, 3, 201);
  const Point3 seed = Point3::Zero();
  const Envelope env = huygens_step(data, std::span<const Point3>(&seed, 1), 1.0, g);
  ASSERT_FALSE(env.contours.empty());
  const RandersEval f = data.at(seed);
  for (const auto& p : env.points) EXPECT_NEAR(f.F(p), 1.0, 2 * g.spacing());
  const auto rays = slice_wavefront(spherical_wavefront(data, seed, 1.0, 4000), g.plane);
  EXPECT_LE(hausdorff(env.contours, rays), 2 * g.spacing());
}

TEST(Huygens, EnvelopeOfCurveMatchesRays) {
  const ZermeloData data = fixtures::example1_data();
  const FrontGeometry c = fixtures::example1_curve();
  PropagationSettings st;
  const auto seeds = c.sample(st.sampling).positions();
  const SliceGrid g = slice(-4, 4, 256);
  const Envelope env = huygens_step(data, seeds, 1.0, g);
  const auto rays = slice_wavefront(propagate_front(data, c, 1.0, st), g.plane);
  EXPECT_LE(hausdorff(env.contours, rays), 2 * g.spacing());
}

TEST(Huygens, GeneralModeEnvelopeMatchesRays) {
  const ZermeloData data = fixtures::example2_data(0.1);
  const Point3 seed(0, 0.5, 0);
  const SliceGrid g = slice(-2.5, 2.5, 128);
  HuygensSettings hs;
  hs.seed_fan = 400;
  hs.dt = 0.01;
  const Envelope env = huygens_step(data, std::span<const Point3>(&seed, 1), 0.8, g, hs);
  PropagationSettings st;
  st.dt = 0.01;
  st.sampling.sphere_points = 1000;
  const auto rays = slice_wavefront(propagate_front(data, FrontGeometry::point(seed), 0.8, st), g.plane);
  EXPECT_LE(hausdorff(env.contours, rays), 2 * g.spacing());
}

TEST(Huygens, GridTooSmall) {
  const Point3 seed = Point3::Zero();
  try {
    huygens_step(fixtures::example1_data(), std::span<const Point3>(&seed, 1), 1.0, slice(-1, 1, 64));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridTooCoarse);
  }
}

TEST(Huygens, BoxGridPointsLieOnIndicatrix) {
  const ZermeloData data = fixtures::example1_data();
  BoxGrid g;
  g.lo = Point3(-1, -2.5, -2.5);
  g.hi = Point3(1, 2.5, 2.5);
  g.nx = g.ny = g.nz = 48;
  const Point3 seed = Point3::Zero();
  const Envelope env = huygens_step(data, std::span<const Point3>(&seed, 1), 1.0, g);
  ASSERT_GT(env.points.size(), 100u);
  const RandersEval f = data.at(seed);
  for (const auto& p : env.points) EXPECT_NEAR(f.F(p), 1.0, g.spacing());
}

TEST(ArrivalField, MatchesQuadraticOracleAndIsLipschitz) {
  const ZermeloData data = fixtures::example1_data();
  const SpdMatrix3 h = data.metric().at(Point3::Zero());
  const Vec3 w = fixtures::example1_wind();
  const SliceGrid g = slice(-3, 3, 121);
  ArrivalSettings as;
  as.propagation.sampling.sphere_points = 8000;
  const ArrivalField field = arrival_time_field(data, FrontGeometry::point(Point3::Zero()), g, 2.0, as);
  std::size_t finite = 0;
  for (std::size_t i = 0; i < field.nodes.size(); ++i) {
    const double exact = quadratic_arrival(h, w, field.nodes[i]);
    if (std::isfinite(field.values[i])) {
      ++finite;
      EXPECT_NEAR(field.values[i], exact, 2 * g.spacing()) << "node " << i;
    } else {
      EXPECT_GT(exact, 2.0 - 2 * g.spacing());
    }
  }
  EXPECT_GT(finite, 100u);
  const LipschitzReport rep = check_lipschitz(field, data, g.spacing());
  EXPECT_EQ(rep.violations, 0u);
  EXPECT_GT(rep.edges_checked, 100u);

  ArrivalField broken = field;
  for (std::size_t i = 0; i < broken.values.size(); ++i)
    if (std::isfinite(broken.values[i]) && i % 7 == 0) broken.values[i] += 1.0;
  EXPECT_GT(check_lipschitz(broken, data, g.spacing()).violations, 0u);
}
