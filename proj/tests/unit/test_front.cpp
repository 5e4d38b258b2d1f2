#include "wildfront/fixtures.hpp"
#include "wildfront/front.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace wildfront;

TEST(Front, ParameterSamples) {
  const auto closed = parameter_samples(0, 1, 4, true);
  ASSERT_EQ(closed.size(), 4u);
  EXPECT_DOUBLE_EQ(closed[1], 0.25);
  const auto open = parameter_samples(0, 1, 5, false);
  ASSERT_EQ(open.size(), 5u);
  EXPECT_DOUBLE_EQ(open.back(), 1.0);
}

TEST(Front, CurveTangentsMatchFiniteDifferences) {
  const FrontGeometry c = fixtures::example1_curve();
  EXPECT_EQ(c.kind(), FrontKind::Curve);
  EXPECT_EQ(c.dimension(), 1);
  EXPECT_TRUE(c.wraps1());
  for (double s : {0.0, 0.4, 1.7, 3.0, 5.5}) {
    const FrontSample a = c.sample_at({s, 0});
    const double e = 1e-6;
    const Vec3 fd = (c.sample_at({s + e, 0}).x - c.sample_at({s - e, 0}).x) / (2 * e);
    EXPECT_LT((a.t1 - fd).norm(), 1e-8);
    EXPECT_NEAR(a.x.x(), std::cos(s) * (std::cos(s) + 6) / 4, 1e-15);
    EXPECT_NEAR(a.x.y(), 4 * std::sin(s) * (3 - std::sin(s)) / 13, 1e-15);
  }
  // The curve is closed.
  EXPECT_LT((c.sample_at({0, 0}).x - c.sample_at({2 * std::numbers::pi, 0}).x).norm(), 1e-14);
}

TEST(Front, SampleCounts) {
  FrontSampling s;
  s.curve_samples = 50;
  s.surface_s1 = 20;
  s.surface_s2 = 7;
  const SampledFront curve = fixtures::example1_curve().sample(s);
  EXPECT_EQ(curve.samples.size(), 50u);
  ASSERT_EQ(curve.patches.size(), 1u);
  EXPECT_TRUE(curve.patches[0].wrap_cols || curve.patches[0].wrap_rows);
  const SampledFront surface = fixtures::example1_surface().sample(s);
  EXPECT_EQ(surface.samples.size(), 140u);
  EXPECT_EQ(surface.dimension, 2);
  for (const auto& x : surface.samples) {
    EXPECT_GT(x.t1.norm(), 0.0);
    EXPECT_LT((x.t2 - Vec3(0, 0, 1)).norm(), 1e-15);
  }
  const SampledFront point = FrontGeometry::point(Point3(1, 2, 3)).sample(s);
  ASSERT_EQ(point.samples.size(), 1u);
  EXPECT_EQ(point.centroid(), Point3(1, 2, 3));
}

TEST(Front, SampledFrontFromSamples) {
  std::vector<FrontSample> samples;
  for (int i = 0; i < 8; ++i) {
    const double a = 2 * std::numbers::pi * i / 8;
    FrontSample s;
    s.x = Point3(std::cos(a), std::sin(a), 0);
    s.t1 = Vec3(-std::sin(a), std::cos(a), 0);
    samples.push_back(s);
  }
  const FrontGeometry f = FrontGeometry::sampled(samples, {GridTopology{0, 1, 8, false, true}}, 1);
  EXPECT_EQ(f.kind(), FrontKind::Sampled);
  EXPECT_EQ(f.sample(FrontSampling{}).samples.size(), 8u);
  EXPECT_LT((f.sample_at({3, 0}).x - samples[3].x).norm(), 1e-15);
  EXPECT_THROW(FrontGeometry::sampled(samples, {GridTopology{0, 1, 8, false, true}}, 3), Error);
}

TEST(Front, OutwardHintAndSides) {
  const FrontGeometry c = fixtures::example1_curve();
  EXPECT_EQ(c.outward_hint(Point3(2, 0, 0), Point3::Zero()), Vec3(2, 0, 0));
  const FrontGeometry up = c.with_outward([](const Point3&) { return Vec3(0, 0, 1); });
  EXPECT_EQ(up.outward_hint(Point3(2, 0, 0), Point3::Zero()), Vec3(0, 0, 1));
  EXPECT_EQ(side_from_string("both"), Side::Both);
  EXPECT_THROW(side_from_string("sideways"), Error);
}
