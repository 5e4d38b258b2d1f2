#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace wildfront {

using Vec3 = Eigen::Vector3d;
using Point3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class ErrorCode {
  NonNavigable,
  NonSpd,
  ZeroDirection,
  ZeroBaseVector,
  ZeroVector,
  InvalidArgument,
  StepFailure,
  SingularMetric,
  ModeMismatch,
  DegenerateTangent,
  GridTooCoarse,
  EmptyFan,
  Unreachable,
  OutOfHorizon,
  ParseError,
  ValidationError,
  IoError,
  EmptyIntersection,
};

const char* to_string(ErrorCode code);

// Every failure in the library is reported through this type; code() lets
// callers dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures carry a 1-based source location when one is known.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// Symmetric positive-definite 3x3 matrix. Construction checks symmetry and
// definiteness; the stored matrix is exactly symmetric.
class SpdMatrix3 {
 public:
  explicit SpdMatrix3(const Mat3& m, double symmetry_tol = 1e-10);

  static SpdMatrix3 identity();
  static SpdMatrix3 diagonal(double d0, double d1, double d2);

  const Mat3& matrix() const noexcept { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  double inner(const Vec3& u, const Vec3& v) const { return u.dot(m_ * v); }
  double norm_sq(const Vec3& v) const { return inner(v, v); }
  double norm(const Vec3& v) const;

  Mat3 inverse() const;
  // h^{-1/2}: maps the Euclidean unit sphere onto the h-unit sphere.
  Mat3 inverse_sqrt() const;
  Vec3 eigenvalues() const;

 private:
  Mat3 m_;
};

// Orthonormal (w.r.t. h) basis of the h-orthogonal complement of n.
std::pair<Vec3, Vec3> h_orthonormal_complement(const SpdMatrix3& h, const Vec3& n);

// cos/sin that return exact values at multiples of pi/2 given as fractions of a
// full turn (k / n turns). Keeps grid directions such as +y or +z exact.
std::pair<double, double> cos_sin_turn(long k, long n);

}  // namespace wildfront
