#include "wildfront/fixtures.hpp"

#include <cmath>
#include <numbers>

namespace wildfront::fixtures {

namespace {
const double kSqrt3 = std::sqrt(3.0);
}

Constants constants_from_string(const std::string& text) {
  if (text == "derived") return Constants::Derived;
  if (text == "printed") return Constants::Printed;
  throw Error(ErrorCode::ValidationError, "constants must be 'derived' or 'printed'");
}

const char* to_string(Constants c) { return c == Constants::Derived ? "derived" : "printed"; }

EllipsoidSpec example1_spec() { return EllipsoidSpec::constant(0.5, 1.0, 2.0, std::numbers::pi / 6.0, 0.0, 0.0); }

Vec3 example1_wind() { return Vec3(0.0, 1.0 / 3.0, 1.0 / 6.0); }

ZermeloData example1_data() {
  return ZermeloData(metric_field(example1_spec()), WindField::constant(example1_wind()));
}

Mat3 example1_metric() {
  Mat3 m;
  m << 4.0, 0.0, 0.0, 0.0, 13.0 / 16.0, -3.0 * kSqrt3 / 16.0, 0.0, -3.0 * kSqrt3 / 16.0, 7.0 / 16.0;
  return m;
}

std::array<std::string, 3> example1_curve_text() {
  return {"cos(s)*(cos(s)+6)/4", "4*sin(s)*(3-sin(s))/13", "0"};
}

FrontGeometry example1_curve() {
  const auto t = example1_curve_text();
  const std::vector<std::string> vars{"s"};
  return FrontGeometry::curve({Expression::parse(t[0], vars), Expression::parse(t[1], vars), Expression::parse(t[2], vars)},
                              0.0, 2.0 * std::numbers::pi, true);
}

std::array<std::string, 3> example1_surface_text() {
  return {"cos(s1)*(cos(s1)+6)/4", "4*sin(s1)*(3-sin(s1))/13", "s2"};
}

FrontGeometry example1_surface() {
  const auto t = example1_surface_text();
  const std::vector<std::string> vars{"s1", "s2"};
  return FrontGeometry::surface(
      {Expression::parse(t[0], vars), Expression::parse(t[1], vars), Expression::parse(t[2], vars)},
      {0.0, 2.0 * std::numbers::pi}, {0.0, 2.0}, true, false);
}

double ImplicitQuadric::residual(const Point3& p) const {
  const double x = p.x(), y = p.y(), z = p.z();
  return uu * x * x + vv * y * y + ww * z * z + vw * y * z + u * x + v * y + w * z - rhs;
}

ImplicitQuadric example1_indicatrix_equation(Constants c) {
  if (c == Constants::Printed)
    return {64.0, 13.0, 7.0, -6.0 * kSqrt3, 0.0, -(26.0 / 3.0 + kSqrt3), 2.0 * kSqrt3 - 7.0 / 3.0, kSqrt3 / 3.0 + 635.0 / 36.0};
  return {64.0, 13.0, 7.0, -6.0 * kSqrt3, 0.0, -26.0 / 3.0 + kSqrt3, 2.0 * kSqrt3 - 7.0 / 3.0, 517.0 / 36.0 + kSqrt3 / 3.0};
}

double example1_curve_orthogonality(double s, const Vec3& V, Constants c) {
  const double k = c == Constants::Derived ? 4.0 / 13.0 : 1.0 / 13.0;
  return -V.x() * (std::sin(2 * s) + 6 * std::sin(s)) +
         (13.0 / 16.0 * (V.y() - 1.0 / 3.0) - 3.0 * kSqrt3 / 16.0 * (V.z() - 1.0 / 6.0)) * k *
             (3 * std::cos(s) - std::sin(2 * s));
}

Vec3 example2_diagonal(Constants c) {
  return c == Constants::Derived ? Vec3(1.0, 4.0, 0.25) : Vec3(1.0, 0.5, 2.0);
}

EllipsoidSpec example2_spec(Constants c) {
  const Vec3 d = example2_diagonal(c);
  EllipsoidSpec s = EllipsoidSpec::constant(1.0 / std::sqrt(d.x()), 1.0 / std::sqrt(d.y()), 1.0 / std::sqrt(d.z()));
  s.beta = Expression::parse("y", {"x", "y", "z"});
  return s;
}

WindField example2_wind(double k) {
  Mat3 j = Mat3::Zero();
  j(0, 1) = k;
  return WindField::affine(Vec3::Zero(), j);
}

ZermeloData example2_data(double k, Constants c) {
  return ZermeloData(metric_field(example2_spec(c)), example2_wind(k));
}

double example2_max_wind_norm_sq(double k, double y_max) {
  // h_xx(y) = cos^2 y + sin^2 y / 4 <= 1, so h(W, W) = k^2 y^2 h_xx(y) <= k^2 y^2.
  double best = 0.0;
  const int n = 2000;
  for (int i = 0; i <= n; ++i) {
    const double y = -y_max + 2.0 * y_max * i / n;
    const double c = std::cos(y), s = std::sin(y);
    best = std::max(best, k * k * y * y * (c * c + 0.25 * s * s));
  }
  return best;
}

Point3 example2_closed_form(const Point3& p, const Vec3& V, double k, double t, Constants c) {
  const double c1 = V.x() - k * p.y(), v2 = V.y(), v3 = V.z();
  if (v2 == 0.0) return Point3(p.x() + c1 * t, p.y(), p.z() + v3 * t);
  if (c == Constants::Printed)
    return Point3(p.x() - v3 / v2 + t * v3 / v2 * std::cos(v2) + t * c1 / v2 * std::sin(v2), p.y() + t * v2,
                  p.z() - c1 / v2 - t * c1 / v2 * std::cos(v2) + t * v3 / v2 * std::sin(v2));
  return Point3(p.x() - v3 / v2 + v3 / v2 * std::cos(v2 * t) + c1 / v2 * std::sin(v2 * t), p.y() + t * v2,
                p.z() + c1 / v2 - c1 / v2 * std::cos(v2 * t) + v3 / v2 * std::sin(v2 * t));
}

}  // namespace wildfront::fixtures
