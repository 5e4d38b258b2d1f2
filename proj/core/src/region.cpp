#include "wildfront/region.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace wildfront {

struct Region::Impl {
  Function f;
  std::string label;
};

Region Region::ball(const Point3& centre, double radius) {
  if (!(radius > 0.0) || !centre.allFinite()) throw Error(ErrorCode::ValidationError, "ball needs a positive radius");
  return Region(std::make_shared<const Impl>(
      Impl{[centre, radius](const Point3& p) { return (p - centre).norm() - radius; }, "ball"}));
}

Region Region::half_space(const Point3& point, const Vec3& normal) {
  const double n = normal.norm();
  if (!(n > 0.0) || !point.allFinite()) throw Error(ErrorCode::ValidationError, "half-space needs a nonzero normal");
  const Vec3 unit = normal / n;
  return Region(std::make_shared<const Impl>(
      Impl{[point, unit](const Point3& p) { return -(p - point).dot(unit); }, "half_space"}));
}

Region Region::implicit(Function f, std::string label) {
  if (!f) throw Error(ErrorCode::ValidationError, "implicit region needs a function");
  return Region(std::make_shared<const Impl>(Impl{std::move(f), std::move(label)}));
}

Region Region::implicit(const Expression& f) {
  return implicit(
      [f](const Point3& p) {
        const double v[3] = {p.x(), p.y(), p.z()};
        return f.eval(v);
      },
      "implicit");
}

Region Region::triangles(std::vector<Triangle> soup) {
  if (soup.empty()) throw Error(ErrorCode::ValidationError, "triangle region is empty");
  auto shared = std::make_shared<const std::vector<Triangle>>(std::move(soup));
  return Region(std::make_shared<const Impl>(Impl{
      [shared](const Point3& p) {
        double d = std::numeric_limits<double>::infinity();
        double w = 0.0;
        for (const auto& t : *shared) {
          d = std::min(d, point_triangle_distance(p, t));
          w += winding_contribution(p, t);
        }
        return std::abs(w) > 0.5 ? -d : d;
      },
      "triangles"}));
}

double Region::value(const Point3& p) const { return impl_->f(p); }
const std::string& Region::label() const noexcept { return impl_->label; }

double point_triangle_distance(const Point3& p, const Triangle& t) {
  // Closest point by Voronoi regions of the triangle.
  const Point3 &a = t[0], &b = t[1], &c = t[2];
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return ap.norm();
  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return bp.norm();
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return (p - (a + d1 / (d1 - d3) * ab)).norm();
  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return cp.norm();
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return (p - (a + d2 / (d2 - d6) * ac)).norm();
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0)
    return (p - (b + (d4 - d3) / ((d4 - d3) + (d5 - d6)) * (c - b))).norm();
  const double denom = 1.0 / (va + vb + vc);
  return (p - (a + ab * (vb * denom) + ac * (vc * denom))).norm();
}

double winding_contribution(const Point3& p, const Triangle& t) {
  const Vec3 a = t[0] - p, b = t[1] - p, c = t[2] - p;
  const double la = a.norm(), lb = b.norm(), lc = c.norm();
  const double num = a.dot(b.cross(c));
  const double den = la * lb * lc + a.dot(b) * lc + b.dot(c) * la + c.dot(a) * lb;
  return 2.0 * std::atan2(num, den) / (4.0 * std::numbers::pi);
}

}  // namespace wildfront
