#pragma once

#include "wildfront/linalg.hpp"

#include <span>
#include <vector>

namespace wildfront {

using Vec2 = Eigen::Vector2d;

// Oriented plane with an in-plane frame (u, v) used for 2-D projections.
struct Plane {
  Point3 origin = Point3::Zero();
  Vec3 normal = Vec3::UnitZ();
  Vec3 u = Vec3::UnitX();
  Vec3 v = Vec3::UnitY();

  // Coordinate plane x_axis = offset; frames: x -> (y, z), y -> (x, z), z -> (x, y).
  static Plane axis(int axis, double offset);
  // Plane through origin with the given normal and an arbitrary orthonormal frame.
  static Plane through(const Point3& origin, const Vec3& normal);

  double signed_distance(const Point3& p) const { return normal.dot(p - origin); }
  Vec2 project(const Point3& p) const { return Vec2(u.dot(p - origin), v.dot(p - origin)); }
  Point3 lift(const Vec2& q) const { return origin + q.x() * u + q.y() * v; }
};

// Closed polylines repeat the first point at the end.
struct Polyline {
  std::vector<Point3> points;
  bool closed = false;

  double length() const;
};

// Structured rows x cols sample grid starting at `offset` in a flat sample array.
// Wrapped directions connect the last row/column back to the first.
struct GridTopology {
  std::size_t offset = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool wrap_rows = false;
  bool wrap_cols = false;

  std::size_t size() const noexcept { return rows * cols; }
  std::size_t index(std::size_t r, std::size_t c) const noexcept { return offset + r * cols + c; }
};

// Level set {value = level} of a scalar sampled on a structured grid of 3-D
// positions, traced as polylines through linear interpolation along grid edges.
// Ambiguous cells are resolved with the cell-centre average.
std::vector<Polyline> marching_squares(std::span<const double> values, std::span<const Point3> positions,
                                       const GridTopology& topology, double level);

double point_segment_distance(const Point3& p, const Point3& a, const Point3& b);
// max over vertices of `from` of the distance to the segments of `to`.
double directed_hausdorff(std::span<const Polyline> from, std::span<const Polyline> to);
double hausdorff(std::span<const Polyline> a, std::span<const Polyline> b);
double hausdorff_points(std::span<const Point3> a, std::span<const Point3> b);

// 2-D predicates on polylines projected onto a plane.
bool polygon_contains(const Polyline& closed, const Plane& plane, const Point3& p);
bool polylines_cross(const Polyline& a, const Polyline& b, const Plane& plane);
bool polyline_self_intersects(const Polyline& a, const Plane& plane);
double enclosed_area(const Polyline& closed, const Plane& plane);  // signed
Point3 polygon_centroid(const Polyline& closed, const Plane& plane);

}  // namespace wildfront
