#include "generators.hpp"
#include "wildfront/contour.hpp"
#include "wildfront/grid.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace wildfront;

namespace {

Polyline circle(const Point3& c, double r, int n) {
  Polyline l;
  l.closed = true;
  for (int i = 0; i <= n; ++i) {
    const double a = 2 * std::numbers::pi * (i % n) / n;
    l.points.push_back(c + r * Vec3(std::cos(a), std::sin(a), 0));
  }
  return l;
}

}  // namespace

TEST(MarchingSquares, CircleLevelSet) {
  SliceGrid g;
  g.lo = Vec2(-2, -2);
  g.hi = Vec2(2, 2);
  g.nu = g.nv = 101;
  const auto nodes = g.nodes();
  std::vector<double> values;
  for (const auto& p : nodes) values.push_back(p.norm());
  const auto lines = marching_squares(values, nodes, g.topology(), 1.3);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_TRUE(lines[0].closed);
  EXPECT_EQ(lines[0].points.front(), lines[0].points.back());
  for (const auto& p : lines[0].points) EXPECT_NEAR(p.norm(), 1.3, 1e-3);
  EXPECT_NEAR(lines[0].length(), 2 * std::numbers::pi * 1.3, 1e-2);
  EXPECT_NEAR(std::abs(enclosed_area(lines[0], g.plane)), std::numbers::pi * 1.69, 1e-2);
}

TEST(MarchingSquares, OpenCurveAndHoles) {
  SliceGrid g;
  g.lo = Vec2(-2, -2);
  g.hi = Vec2(2, 2);
  g.nu = g.nv = 81;
  const auto nodes = g.nodes();
  std::vector<double> line, ring;
  for (const auto& p : nodes) {
    line.push_back(p.x() + 0.1 * p.y());
    ring.push_back(std::abs(p.norm() - 1.0));
  }
  const auto open = marching_squares(line, nodes, g.topology(), 0.25);
  ASSERT_EQ(open.size(), 1u);
  EXPECT_FALSE(open[0].closed);
  const auto two = marching_squares(ring, nodes, g.topology(), 0.3);
  EXPECT_EQ(two.size(), 2u);
  for (const auto& l : two) EXPECT_TRUE(l.closed);
}

TEST(MarchingSquares, WrappedTopologyClosesLoop) {
  // A cylinder of samples: rows along z, wrapped columns around the axis.
  const std::size_t rows = 10, cols = 32;
  std::vector<Point3> pos;
  std::vector<double> val;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const double a = 2 * std::numbers::pi * static_cast<double>(c) / cols;
      pos.emplace_back(std::cos(a), std::sin(a), static_cast<double>(r) * 0.1);
      val.push_back(pos.back().z() - 0.45);
    }
  const auto lines = marching_squares(val, pos, GridTopology{0, rows, cols, false, true}, 0.0);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_TRUE(lines[0].closed);
  for (const auto& p : lines[0].points) EXPECT_NEAR(p.z(), 0.45, 1e-12);
}

TEST(Hausdorff, ConcentricCircles) {
  const std::vector<Polyline> a{circle(Point3::Zero(), 1.0, 400)}, b{circle(Point3::Zero(), 1.2, 400)};
  EXPECT_NEAR(hausdorff(a, b), 0.2, 1e-4);
  EXPECT_NEAR(hausdorff(a, a), 0.0, 1e-15);
  const std::vector<Point3> pa{Point3(0, 0, 0), Point3(1, 0, 0)}, pb{Point3(0, 0.5, 0)};
  EXPECT_NEAR(hausdorff_points(pa, pb), std::sqrt(1.25), 1e-15);
}

TEST(PlanarPredicates, ContainmentCrossingArea) {
  const Plane plane = Plane::axis(2, 0.0);
  const Polyline outer = circle(Point3::Zero(), 2.0, 100), inner = circle(Point3(0.3, 0, 0), 1.0, 100);
  EXPECT_TRUE(polygon_contains(outer, plane, Point3(0.5, 0.5, 0)));
  EXPECT_FALSE(polygon_contains(outer, plane, Point3(2.5, 0, 0)));
  EXPECT_FALSE(polylines_cross(outer, inner, plane));
  EXPECT_TRUE(polylines_cross(outer, circle(Point3(2, 0, 0), 1.0, 100), plane));
  EXPECT_FALSE(polyline_self_intersects(outer, plane));
  Polyline bow;
  bow.closed = true;
  bow.points = {Point3(0, 0, 0), Point3(1, 1, 0), Point3(1, 0, 0), Point3(0, 1, 0), Point3(0, 0, 0)};
  EXPECT_TRUE(polyline_self_intersects(bow, plane));
  EXPECT_LT((polygon_centroid(inner, plane) - Point3(0.3, 0, 0)).norm(), 1e-12);
}

TEST(Plane, FramesAreOrthonormal) {
  test_support::Gen gen(61);
  for (int i = 0; i < 50; ++i) {
    const Plane p = Plane::through(gen.point(3), gen.unit());
    EXPECT_NEAR(p.u.dot(p.v), 0.0, 1e-14);
    EXPECT_NEAR(p.u.dot(p.normal), 0.0, 1e-14);
    EXPECT_NEAR(p.u.cross(p.v).dot(p.normal), 1.0, 1e-14);
    const Vec2 q(gen.uniform(-1, 1), gen.uniform(-1, 1));
    EXPECT_LT((p.project(p.lift(q)) - q).norm(), 1e-12);
  }
  const Plane x = Plane::axis(0, 2.0);
  EXPECT_EQ(x.project(Point3(2, 3, 4)), Vec2(3, 4));
}
