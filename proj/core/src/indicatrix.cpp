#include "wildfront/indicatrix.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace wildfront {

namespace {
const std::vector<std::string> kXYZ = {"x", "y", "z"};
}

EllipsoidSpec EllipsoidSpec::constant(double a, double b, double c, double alpha, double beta,
                                      double theta) {
  EllipsoidSpec s;
  s.a = Expression::constant(a);
  s.b = Expression::constant(b);
  s.c = Expression::constant(c);
  s.alpha = Expression::constant(alpha);
  s.beta = Expression::constant(beta);
  s.theta = Expression::constant(theta);
  return s;
}

EllipsoidSpec EllipsoidSpec::parse(const std::string& a, const std::string& b, const std::string& c,
                                   const std::string& alpha, const std::string& beta,
                                   const std::string& theta) {
  EllipsoidSpec s;
  s.a = Expression::parse(a, kXYZ);
  s.b = Expression::parse(b, kXYZ);
  s.c = Expression::parse(c, kXYZ);
  s.alpha = Expression::parse(alpha, kXYZ);
  s.beta = Expression::parse(beta, kXYZ);
  s.theta = Expression::parse(theta, kXYZ);
  return s;
}

EllipsoidSpec::Values EllipsoidSpec::at(const Point3& p) const {
  const std::array<double, 3> xyz{p.x(), p.y(), p.z()};
  const Values v{a.eval(xyz), b.eval(xyz), c.eval(xyz), alpha.eval(xyz), beta.eval(xyz), theta.eval(xyz)};
  if (!(v.a > 0.0) || !(v.b > 0.0) || !(v.c > 0.0) || !std::isfinite(v.a) || !std::isfinite(v.b) ||
      !std::isfinite(v.c))
    throw Error(ErrorCode::ValidationError, "ellipsoid semi-axes must be positive and finite");
  if (!std::isfinite(v.alpha) || !std::isfinite(v.beta) || !std::isfinite(v.theta))
    throw Error(ErrorCode::ValidationError, "ellipsoid angles must be finite");
  return v;
}

bool EllipsoidSpec::is_constant() const noexcept {
  return a.is_constant() && b.is_constant() && c.is_constant() && alpha.is_constant() &&
         beta.is_constant() && theta.is_constant();
}

Mat3 rotation_x(double t) {
  const double c = std::cos(t), s = std::sin(t);
  Mat3 r;
  r << 1, 0, 0, 0, c, -s, 0, s, c;
  return r;
}

Mat3 rotation_y(double t) {
  const double c = std::cos(t), s = std::sin(t);
  Mat3 r;
  r << c, 0, s, 0, 1, 0, -s, 0, c;
  return r;
}

Mat3 rotation_z(double t) {
  const double c = std::cos(t), s = std::sin(t);
  Mat3 r;
  r << c, -s, 0, s, c, 0, 0, 0, 1;
  return r;
}

Mat3 rotation_matrix(double alpha, double beta, double theta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(theta))
    throw Error(ErrorCode::InvalidArgument, "rotation angles must be finite");
  return rotation_z(theta) * rotation_y(beta) * rotation_x(alpha);
}

SpdMatrix3 metric_from_spec(const EllipsoidSpec& spec, const Point3& p) {
  const auto v = spec.at(p);
  const Mat3 rot = rotation_matrix(v.alpha, v.beta, v.theta);
  const Vec3 d(1.0 / (v.a * v.a), 1.0 / (v.b * v.b), 1.0 / (v.c * v.c));
  return SpdMatrix3(rot.transpose() * d.asDiagonal() * rot);
}

MetricField metric_field(const EllipsoidSpec& spec) {
  if (spec.is_constant()) return MetricField::constant(metric_from_spec(spec, Point3::Zero()));
  return MetricField::from_function([spec](const Point3& p) { return metric_from_spec(spec, p); });
}

double quadratic_eval(const EllipsoidSpec& spec, const Point3& p, const Vec3& v) {
  return metric_from_spec(spec, p).norm_sq(v);
}

SphereGrid SphereGrid::for_count(std::size_t n) {
  std::size_t rows = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n) / 2.0)));
  rows = std::max<std::size_t>(3, rows | 1u);
  std::size_t cols = (n + rows - 1) / rows;
  cols = std::max<std::size_t>(4, (cols + 3) / 4 * 4);
  return SphereGrid{rows, cols};
}

double SphereGrid::latitude(std::size_t row) const {
  return std::numbers::pi * (static_cast<double>(row) / static_cast<double>(rows - 1) - 0.5);
}

double SphereGrid::longitude(std::size_t col) const {
  return 2.0 * std::numbers::pi * static_cast<double>(col) / static_cast<double>(cols);
}

Vec3 SphereGrid::direction(std::size_t row, std::size_t col) const {
  // Latitude as a fraction of a full turn: (2 row - (rows - 1)) / (4 (rows - 1)).
  const long n_lat = 4 * static_cast<long>(rows - 1);
  const auto [cl, sl] = cos_sin_turn(2 * static_cast<long>(row) - static_cast<long>(rows - 1), n_lat);
  const auto [co, so] = cos_sin_turn(static_cast<long>(col), static_cast<long>(cols));
  return Vec3(cl * co, cl * so, sl);
}

Vec3 SphereGrid::direction_at(double latitude, double longitude) {
  const double cl = std::cos(latitude);
  return Vec3(cl * std::cos(longitude), cl * std::sin(longitude), std::sin(latitude));
}

std::vector<Vec3> SphereGrid::directions() const {
  std::vector<Vec3> out;
  out.reserve(size());
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.push_back(direction(i, j));
  return out;
}

IndicatrixSample sample_randers_indicatrix(const EllipsoidSpec& spec, const Vec3& wind,
                                           const Point3& p, double tau, std::size_t n) {
  if (!(tau > 0.0)) throw Error(ErrorCode::InvalidArgument, "indicatrix radius must be positive");
  if (n < 4) throw Error(ErrorCode::InvalidArgument, "indicatrix sample needs at least 4 points");
  const Mat3 to_h_sphere = metric_from_spec(spec, p).inverse_sqrt();
  IndicatrixSample out;
  out.center = p;
  out.tau = tau;
  const auto grid = SphereGrid::for_count(n);
  out.points.reserve(grid.size());
  for (const Vec3& x : grid.directions()) out.points.push_back(tau * (to_h_sphere * x) + tau * wind);
  return out;
}

}  // namespace wildfront
