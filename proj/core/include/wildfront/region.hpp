#pragma once

#include "wildfront/expression.hpp"
#include "wildfront/linalg.hpp"

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace wildfront {

using Triangle = std::array<Point3, 3>;

// Target region B given by a signed function: negative inside, zero on the boundary.
class Region {
 public:
  using Function = std::function<double(const Point3&)>;

  static Region ball(const Point3& centre, double radius);
  // Points with (x - point) . normal >= 0.
  static Region half_space(const Point3& point, const Vec3& normal);
  static Region implicit(Function f, std::string label = "implicit");
  // Expression in x, y, z; inside where it is <= 0.
  static Region implicit(const Expression& f);
  // Closed triangle soup; inside is decided by the generalized winding number.
  static Region triangles(std::vector<Triangle> soup);

  double value(const Point3& p) const;
  bool contains(const Point3& p) const { return value(p) <= 0.0; }
  const std::string& label() const noexcept;

 private:
  struct Impl;
  explicit Region(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

double point_triangle_distance(const Point3& p, const Triangle& t);
// Solid angle of the triangle seen from p divided by 4 pi (signed by orientation).
double winding_contribution(const Point3& p, const Triangle& t);

}  // namespace wildfront
