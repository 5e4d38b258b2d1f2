#include "wildfront/linalg.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace wildfront {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonNavigable: return "NonNavigable";
    case ErrorCode::NonSpd: return "NonSpd";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::ZeroBaseVector: return "ZeroBaseVector";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::DegenerateTangent: return "DegenerateTangent";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::EmptyFan: return "EmptyFan";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::OutOfHorizon: return "OutOfHorizon";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

namespace {
std::string located(const std::string& message, int line, int column) {
  std::ostringstream os;
  os << message;
  if (line > 0) os << " (line " << line << ", column " << column << ")";
  return os.str();
}
}  // namespace

ParseError::ParseError(const std::string& message, int line, int column)
    : Error(ErrorCode::ParseError, located(message, line, column)), line_(line), column_(column) {}

SpdMatrix3::SpdMatrix3(const Mat3& m, double symmetry_tol) {
  if (!m.allFinite()) throw Error(ErrorCode::NonSpd, "matrix has non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > symmetry_tol * scale)
    throw Error(ErrorCode::NonSpd, "matrix is not symmetric");
  m_ = 0.5 * (m + m.transpose());
  Eigen::LLT<Mat3> llt(m_);
  if (llt.info() != Eigen::Success || !(llt.matrixLLT().diagonal().minCoeff() > 0.0))
    throw Error(ErrorCode::NonSpd, "matrix is not positive definite");
}

SpdMatrix3 SpdMatrix3::identity() { return SpdMatrix3(Mat3::Identity()); }

SpdMatrix3 SpdMatrix3::diagonal(double d0, double d1, double d2) {
  return SpdMatrix3(Vec3(d0, d1, d2).asDiagonal().toDenseMatrix());
}

double SpdMatrix3::norm(const Vec3& v) const { return std::sqrt(std::max(0.0, norm_sq(v))); }

Mat3 SpdMatrix3::inverse() const { return m_.inverse(); }

Mat3 SpdMatrix3::inverse_sqrt() const {
  if (m_.isDiagonal(0.0)) return m_.diagonal().cwiseSqrt().cwiseInverse().asDiagonal();
  Eigen::SelfAdjointEigenSolver<Mat3> es(m_);
  const Vec3 d = es.eigenvalues().cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

Vec3 SpdMatrix3::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Mat3> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

std::pair<Vec3, Vec3> h_orthonormal_complement(const SpdMatrix3& h, const Vec3& n) {
  const double nn = h.norm(n);
  if (!(nn > 0.0)) throw Error(ErrorCode::ZeroVector, "cannot complement a zero vector");
  const Vec3 nh = n / nn;
  // Start from the Euclidean axis least aligned with n, then Gram-Schmidt in h.
  Eigen::Index k = 0;
  nh.cwiseAbs().minCoeff(&k);
  Vec3 e1 = Vec3::Unit(k);
  e1 -= h.inner(e1, nh) * nh;
  e1 /= h.norm(e1);
  Vec3 e2 = (h.matrix() * nh).cross(h.matrix() * e1);
  e2 -= h.inner(e2, nh) * nh + h.inner(e2, e1) * e1;
  e2 /= h.norm(e2);
  return {e1, e2};
}

std::pair<double, double> cos_sin_turn(long k, long n) {
  long m = ((k % n) + n) % n;
  if ((4 * m) % n == 0) {
    switch ((4 * m) / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double a = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
  return {std::cos(a), std::sin(a)};
}

}  // namespace wildfront
