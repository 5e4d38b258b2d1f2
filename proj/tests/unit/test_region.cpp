#include "generators.hpp"
#include "wildfront/region.hpp"

#include <gtest/gtest.h>

using namespace wildfront;

namespace {

std::vector<Triangle> unit_cube() {
  const Point3 v[8] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  const int f[12][3] = {{0, 2, 1}, {0, 3, 2}, {4, 5, 6}, {4, 6, 7}, {0, 1, 5}, {0, 5, 4},
                        {1, 2, 6}, {1, 6, 5}, {2, 3, 7}, {2, 7, 6}, {3, 0, 4}, {3, 4, 7}};
  std::vector<Triangle> out;
  for (const auto& t : f) out.push_back({v[t[0]], v[t[1]], v[t[2]]});
  return out;
}

}  // namespace

TEST(Region, BallAndHalfSpace) {
  const Region b = Region::ball(Point3(0, 0, 4), 1.0);
  EXPECT_TRUE(b.contains(Point3(0, 0, 3.5)));
  EXPECT_FALSE(b.contains(Point3(0, 0, 2.9)));
  EXPECT_NEAR(b.value(Point3(0, 0, 0)), 3.0, 1e-15);
  const Region h = Region::half_space(Point3(1, 0, 0), Vec3(1, 0, 0));
  EXPECT_TRUE(h.contains(Point3(2, 5, 5)));
  EXPECT_FALSE(h.contains(Point3(0.5, 0, 0)));
}

TEST(Region, ImplicitExpression) {
  const Region r = Region::implicit(Expression::parse("x^2 + y^2 - 1", {"x", "y", "z"}));
  EXPECT_TRUE(r.contains(Point3(0.5, 0.5, 100)));
  EXPECT_FALSE(r.contains(Point3(1, 1, 0)));
}

TEST(Region, TriangleSoupWindingNumber) {
  const Region cube = Region::triangles(unit_cube());
  test_support::Gen gen(81);
  for (int i = 0; i < 500; ++i) {
    const Point3 p = gen.point(1.5) + Point3::Constant(0.5);
    const bool inside = (p.array() > 0.0).all() && (p.array() < 1.0).all();
    const double margin = std::min((p.array()).abs().minCoeff(), (p.array() - 1.0).abs().minCoeff());
    if (margin < 1e-6) continue;
    EXPECT_EQ(cube.contains(p), inside) << p.transpose();
  }
  EXPECT_NEAR(cube.value(Point3(0.5, 0.5, 2.0)), 1.0, 1e-12);
  EXPECT_NEAR(cube.value(Point3(0.5, 0.5, 0.25)), -0.25, 1e-12);
}

TEST(Region, PointTriangleDistance) {
  const Triangle t{Point3(0, 0, 0), Point3(1, 0, 0), Point3(0, 1, 0)};
  EXPECT_NEAR(point_triangle_distance(Point3(0.2, 0.2, 3), t), 3.0, 1e-15);
  EXPECT_NEAR(point_triangle_distance(Point3(-1, 0, 0), t), 1.0, 1e-15);
  EXPECT_NEAR(point_triangle_distance(Point3(1, 1, 0), t), std::sqrt(0.5), 1e-15);
}
