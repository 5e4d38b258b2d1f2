#pragma once

#include "wildfront/expression.hpp"
#include "wildfront/linalg.hpp"
#include "wildfront/metric_field.hpp"

#include <vector>

namespace wildfront {

// Ellipsoid of unit-time spread: semi-axes (a, b, c) and Euler angles
// (alpha, beta, theta), each a constant or a function of the point (x, y, z).
// The rotation is P = Rz(theta) Ry(beta) Rx(alpha) (extrinsic X, then Y, then Z)
// and the metric is h = P^T diag(1/a^2, 1/b^2, 1/c^2) P.
struct EllipsoidSpec {
  Expression a = Expression::constant(1.0);
  Expression b = Expression::constant(1.0);
  Expression c = Expression::constant(1.0);
  Expression alpha;
  Expression beta;
  Expression theta;

  struct Values {
    double a, b, c, alpha, beta, theta;
  };

  static EllipsoidSpec constant(double a, double b, double c, double alpha = 0.0, double beta = 0.0,
                                double theta = 0.0);
  // Parses each parameter as an expression in x, y, z.
  static EllipsoidSpec parse(const std::string& a, const std::string& b, const std::string& c,
                             const std::string& alpha, const std::string& beta,
                             const std::string& theta);

  // Throws ValidationError if an axis is not positive or an angle is not finite.
  Values at(const Point3& p) const;
  bool is_constant() const noexcept;
};

Mat3 rotation_x(double angle);
Mat3 rotation_y(double angle);
Mat3 rotation_z(double angle);
Mat3 rotation_matrix(double alpha, double beta, double theta);

SpdMatrix3 metric_from_spec(const EllipsoidSpec& spec, const Point3& p);
MetricField metric_field(const EllipsoidSpec& spec);
// Q_h(V) = V^T h V, equal to 1 exactly on the Riemannian indicatrix.
double quadratic_eval(const EllipsoidSpec& spec, const Point3& p, const Vec3& v);

// Latitude/longitude grid on the unit sphere. Rows run pole to pole (both
// included, so the first and last rows are degenerate), columns are periodic.
// With an odd row count the equator is a row; with columns divisible by 4 the
// +-x and +-y axes are exact grid directions.
struct SphereGrid {
  std::size_t rows = 33;
  std::size_t cols = 64;

  // Smallest odd-row, 4k-column grid with at least n points.
  static SphereGrid for_count(std::size_t n);

  std::size_t size() const noexcept { return rows * cols; }
  Vec3 direction(std::size_t row, std::size_t col) const;
  // Continuous version: latitude in [-pi/2, pi/2], longitude in radians.
  static Vec3 direction_at(double latitude, double longitude);
  double latitude(std::size_t row) const;
  double longitude(std::size_t col) const;
  std::vector<Vec3> directions() const;
};

struct IndicatrixSample {
  Point3 center = Point3::Zero();
  double tau = 1.0;
  std::vector<Point3> points;  // vectors of F-length tau, rooted at the center
};

// Points of I_F^tau = tau I_h + tau W at p. Uses SphereGrid::for_count(n).
IndicatrixSample sample_randers_indicatrix(const EllipsoidSpec& spec, const Vec3& wind,
                                           const Point3& p, double tau, std::size_t n);

}  // namespace wildfront
