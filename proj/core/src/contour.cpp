#include "wildfront/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace wildfront {

Plane Plane::axis(int axis, double offset) {
  Plane p;
  switch (axis) {
    case 0:
      p.origin = Point3(offset, 0, 0);
      p.normal = Vec3::UnitX();
      p.u = Vec3::UnitY();
      p.v = Vec3::UnitZ();
      break;
    case 1:
      p.origin = Point3(0, offset, 0);
      p.normal = Vec3::UnitY();
      p.u = Vec3::UnitX();
      p.v = Vec3::UnitZ();
      break;
    case 2:
      p.origin = Point3(0, 0, offset);
      p.normal = Vec3::UnitZ();
      p.u = Vec3::UnitX();
      p.v = Vec3::UnitY();
      break;
    default:
      throw Error(ErrorCode::InvalidArgument, "plane axis must be 0, 1 or 2");
  }
  return p;
}

Plane Plane::through(const Point3& origin, const Vec3& normal) {
  const double n = normal.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorCode::ZeroVector, "plane normal must be nonzero");
  Plane p;
  p.origin = origin;
  p.normal = normal / n;
  const Vec3 seed = std::abs(p.normal.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  p.u = (seed - seed.dot(p.normal) * p.normal).normalized();
  p.v = p.normal.cross(p.u);
  return p;
}

double Polyline::length() const {
  double s = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) s += (points[i] - points[i - 1]).norm();
  return s;
}

std::vector<Polyline> marching_squares(std::span<const double> values, std::span<const Point3> positions,
                                       const GridTopology& topo, double level) {
  if (values.size() != positions.size())
    throw Error(ErrorCode::InvalidArgument, "values and positions differ in size");
  if (topo.offset + topo.size() > values.size())
    throw Error(ErrorCode::InvalidArgument, "grid topology exceeds the sample array");
  std::vector<Polyline> out;
  if (topo.rows < 2 || topo.cols < 2) return out;

  const std::uint64_t n_total = values.size();
  std::unordered_map<std::uint64_t, Point3> edge_point;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> segments;

  auto edge = [&](std::size_t i, std::size_t j) -> std::uint64_t {
    const std::uint64_t key = std::min(i, j) * n_total + std::max(i, j);
    if (!edge_point.count(key)) {
      const double fi = values[i], fj = values[j];
      const double t = std::clamp((level - fi) / (fj - fi), 0.0, 1.0);
      edge_point.emplace(key, positions[i] + t * (positions[j] - positions[i]));
    }
    return key;
  };

  const std::size_t cell_rows = topo.wrap_rows ? topo.rows : topo.rows - 1;
  const std::size_t cell_cols = topo.wrap_cols ? topo.cols : topo.cols - 1;
  for (std::size_t r = 0; r < cell_rows; ++r) {
    const std::size_t r1 = (r + 1) % topo.rows;
    for (std::size_t c = 0; c < cell_cols; ++c) {
      const std::size_t c1 = (c + 1) % topo.cols;
      const std::size_t corner[4] = {topo.index(r, c), topo.index(r, c1), topo.index(r1, c1), topo.index(r1, c)};
      bool finite = true;
      bool in[4];
      for (int k = 0; k < 4; ++k) {
        finite = finite && std::isfinite(values[corner[k]]);
        in[k] = values[corner[k]] >= level;
      }
      if (!finite) continue;
      int crossings[4];
      int n_cross = 0;
      for (int k = 0; k < 4; ++k)
        if (in[k] != in[(k + 1) % 4]) crossings[n_cross++] = k;
      auto key_of = [&](int e) { return edge(corner[e], corner[(e + 1) % 4]); };
      if (n_cross == 2) {
        segments.emplace_back(key_of(crossings[0]), key_of(crossings[1]));
      } else if (n_cross == 4) {
        double centre = 0.0;
        for (int k = 0; k < 4; ++k) centre += 0.25 * values[corner[k]];
        if ((centre >= level) == in[0]) {
          segments.emplace_back(key_of(0), key_of(1));  // cut off corner 1
          segments.emplace_back(key_of(2), key_of(3));  // cut off corner 3
        } else {
          segments.emplace_back(key_of(3), key_of(0));
          segments.emplace_back(key_of(1), key_of(2));
        }
      }
    }
  }

  std::unordered_map<std::uint64_t, std::vector<std::size_t>> incident;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    incident[segments[s].first].push_back(s);
    incident[segments[s].second].push_back(s);
  }
  std::vector<char> used(segments.size(), 0);

  auto walk = [&](std::uint64_t start, std::size_t first_segment) {
    Polyline line;
    line.points.push_back(edge_point.at(start));
    std::uint64_t key = start;
    std::size_t seg = first_segment;
    while (true) {
      used[seg] = 1;
      key = segments[seg].first == key ? segments[seg].second : segments[seg].first;
      const Point3& p = edge_point.at(key);
      if ((p - line.points.back()).norm() > 1e-13 * (1.0 + p.norm())) line.points.push_back(p);
      std::size_t next = segments.size();
      for (std::size_t s : incident.at(key))
        if (!used[s]) next = s;
      if (next == segments.size()) break;
      seg = next;
    }
    if (key == start) {
      line.closed = true;
      if ((line.points.back() - line.points.front()).norm() > 0.0) line.points.push_back(line.points.front());
    }
    return line;
  };

  // Open chains first (they start at grid boundaries), then loops, in a fixed order.
  for (std::size_t s = 0; s < segments.size(); ++s) {
    for (std::uint64_t end : {segments[s].first, segments[s].second}) {
      if (used[s] || incident.at(end).size() != 1) continue;
      Polyline line = walk(end, s);
      if (line.points.size() >= 2) out.push_back(std::move(line));
    }
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (used[s]) continue;
    Polyline line = walk(segments[s].first, s);
    if (line.points.size() >= 2) out.push_back(std::move(line));
  }
  return out;
}

double point_segment_distance(const Point3& p, const Point3& a, const Point3& b) {
  const Vec3 d = b - a;
  const double len2 = d.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
  return (p - (a + t * d)).norm();
}

double directed_hausdorff(std::span<const Polyline> from, std::span<const Polyline> to) {
  double worst = 0.0;
  bool any_target = false;
  for (const auto& l : to) any_target = any_target || !l.points.empty();
  for (const auto& line : from) {
    for (const Point3& p : line.points) {
      if (!any_target) return std::numeric_limits<double>::infinity();
      double best = std::numeric_limits<double>::infinity();
      for (const auto& target : to) {
        if (target.points.size() == 1) best = std::min(best, (p - target.points[0]).norm());
        for (std::size_t i = 1; i < target.points.size(); ++i)
          best = std::min(best, point_segment_distance(p, target.points[i - 1], target.points[i]));
      }
      worst = std::max(worst, best);
    }
  }
  return worst;
}

double hausdorff(std::span<const Polyline> a, std::span<const Polyline> b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double hausdorff_points(std::span<const Point3> a, std::span<const Point3> b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto directed = [](std::span<const Point3> from, std::span<const Point3> to) {
    double worst = 0.0;
    for (const Point3& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point3& q : to) best = std::min(best, (p - q).squaredNorm());
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(directed(a, b), directed(b, a));
}

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_cross(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const double d1 = cross2(p2 - p1, q1 - p1), d2 = cross2(p2 - p1, q2 - p1);
  const double d3 = cross2(q2 - q1, p1 - q1), d4 = cross2(q2 - q1, p2 - q1);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

std::vector<Vec2> projected(const Polyline& l, const Plane& plane) {
  std::vector<Vec2> out;
  out.reserve(l.points.size());
  for (const Point3& p : l.points) out.push_back(plane.project(p));
  return out;
}

struct Box2 {
  Vec2 lo, hi;
  bool overlaps(const Box2& o) const {
    return lo.x() <= o.hi.x() && o.lo.x() <= hi.x() && lo.y() <= o.hi.y() && o.lo.y() <= hi.y();
  }
};

Box2 segment_box(const Vec2& a, const Vec2& b) { return {a.cwiseMin(b), a.cwiseMax(b)}; }

}  // namespace

bool polygon_contains(const Polyline& closed, const Plane& plane, const Point3& p) {
  const auto pts = projected(closed, plane);
  const Vec2 q = plane.project(p);
  bool inside = false;
  for (std::size_t i = 0, n = pts.size(); i < n; ++i) {
    const Vec2& a = pts[i];
    const Vec2& b = pts[(i + 1) % n];
    if ((a.y() > q.y()) != (b.y() > q.y())) {
      const double x = a.x() + (q.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (q.x() < x) inside = !inside;
    }
  }
  return inside;
}

bool polylines_cross(const Polyline& a, const Polyline& b, const Plane& plane) {
  const auto pa = projected(a, plane), pb = projected(b, plane);
  if (pa.size() < 2 || pb.size() < 2) return false;
  for (std::size_t i = 1; i < pa.size(); ++i) {
    const Box2 ba = segment_box(pa[i - 1], pa[i]);
    for (std::size_t j = 1; j < pb.size(); ++j) {
      if (!ba.overlaps(segment_box(pb[j - 1], pb[j]))) continue;
      if (segments_cross(pa[i - 1], pa[i], pb[j - 1], pb[j])) return true;
    }
  }
  return false;
}

bool polyline_self_intersects(const Polyline& a, const Plane& plane) {
  const auto p = projected(a, plane);
  const std::size_t n = p.size();
  if (n < 4) return false;
  const std::size_t segs = n - 1;
  for (std::size_t i = 0; i < segs; ++i) {
    const Box2 bi = segment_box(p[i], p[i + 1]);
    for (std::size_t j = i + 2; j < segs; ++j) {
      if (a.closed && i == 0 && j == segs - 1) continue;
      if (!bi.overlaps(segment_box(p[j], p[j + 1]))) continue;
      if (segments_cross(p[i], p[i + 1], p[j], p[j + 1])) return true;
    }
  }
  return false;
}

double enclosed_area(const Polyline& closed, const Plane& plane) {
  const auto p = projected(closed, plane);
  double area = 0.0;
  for (std::size_t i = 0, n = p.size(); i < n; ++i) area += cross2(p[i], p[(i + 1) % n]);
  return 0.5 * area;
}

Point3 polygon_centroid(const Polyline& closed, const Plane& plane) {
  const auto p = projected(closed, plane);
  double area = 0.0;
  Vec2 c = Vec2::Zero();
  for (std::size_t i = 0, n = p.size(); i < n; ++i) {
    const double w = cross2(p[i], p[(i + 1) % n]);
    area += w;
    c += w * (p[i] + p[(i + 1) % n]);
  }
  if (std::abs(area) < 1e-300) throw Error(ErrorCode::InvalidArgument, "polygon has zero area");
  return plane.lift(c / (3.0 * area));
}

}  // namespace wildfront
