#include "wildfront/randers.hpp"

#include <cmath>

namespace wildfront {

RandersEval::RandersEval(const SpdMatrix3& h, const Vec3& wind)
    : h_(h), w_(wind), hw_(h.matrix() * wind), lambda_(1.0 - h.norm_sq(wind)) {
  if (!wind.allFinite()) throw Error(ErrorCode::NonNavigable, "wind is not finite");
  if (!(lambda_ > kMinLambda))
    throw Error(ErrorCode::NonNavigable,
                "h(W,W) = " + std::to_string(1.0 - lambda_) + " is not below 1");
}

double RandersEval::F(const Vec3& v) const {
  const double a = hw_.dot(v);
  const double q = h_.norm_sq(v);
  if (q <= 0.0) return 0.0;
  const double root = std::sqrt(a * a + lambda_ * q);
  // (root - a) / lambda, rewritten to avoid cancellation when a > 0.
  return a > 0.0 ? q / (root + a) : (root - a) / lambda_;
}

double RandersEval::alpha(const Vec3& v) const {
  const double a = hw_.dot(v);
  return std::sqrt(a * a + lambda_ * h_.norm_sq(v)) / lambda_;
}

double RandersEval::beta(const Vec3& v) const { return -hw_.dot(v) / lambda_; }

Mat3 RandersEval::alpha_matrix() const {
  return h_.matrix() / lambda_ + hw_ * hw_.transpose() / (lambda_ * lambda_);
}

Vec3 RandersEval::beta_covector() const { return -hw_ / lambda_; }

Vec3 RandersEval::gradient(const Vec3& v) const {
  const double a = hw_.dot(v);
  const double q = h_.norm_sq(v);
  if (!(q > 0.0)) throw Error(ErrorCode::ZeroBaseVector, "F is not differentiable at V = 0");
  const double root = std::sqrt(a * a + lambda_ * q);
  return (h_.matrix() * v - F(v) * hw_) / root;
}

Mat3 RandersEval::fundamental_tensor(const Vec3& v) const {
  const double a = hw_.dot(v);
  const double q = h_.norm_sq(v);
  if (!(q > 0.0)) throw Error(ErrorCode::ZeroBaseVector, "fundamental tensor needs V != 0");
  const double root = std::sqrt(a * a + lambda_ * q);
  const double f = F(v);
  const Vec3 grad_f = (h_.matrix() * v - f * hw_) / root;
  const Vec3 grad_root = (a * hw_ + lambda_ * (h_.matrix() * v)) / root;
  Mat3 hess = (h_.matrix() - hw_ * grad_f.transpose() - grad_f * grad_root.transpose()) / root;
  hess = 0.5 * (hess + hess.transpose()).eval();
  return f * hess + grad_f * grad_f.transpose();
}

Vec3 RandersEval::momentum(const Vec3& v) const {
  if (!(h_.norm_sq(v) > 0.0)) return Vec3::Zero();
  return F(v) * gradient(v);
}

Vec3 RandersEval::unit_direction(const Vec3& d) const {
  const double n = h_.norm(d);
  if (!(n > 0.0) || !d.allFinite()) throw Error(ErrorCode::ZeroDirection, "direction must be nonzero");
  return w_ + d / n;
}

ZermeloData::ZermeloData(MetricField metric, WindField wind)
    : metric_(std::move(metric)), wind_(std::move(wind)) {}

RandersEval ZermeloData::at(const Point3& p) const { return RandersEval(metric_.at(p), wind_.at(p)); }

double eval_randers(const ZermeloData& data, const Point3& p, const Vec3& v) {
  if (!v.allFinite()) throw Error(ErrorCode::InvalidArgument, "vector is not finite");
  return data.at(p).F(v);
}

Vec3 unit_f_direction(const ZermeloData& data, const Point3& p, const Vec3& d) {
  return data.at(p).unit_direction(d);
}

double fundamental_tensor(const ZermeloData& data, const Point3& p, const Vec3& v, const Vec3& u1,
                          const Vec3& u2) {
  return u1.dot(data.at(p).fundamental_tensor(v) * u2);
}

bool is_f_orthogonal(const ZermeloData& data, const Point3& p, const Vec3& u, const Vec3& v,
                     double tol) {
  const RandersEval f = data.at(p);
  const double un = f.h().norm(u);
  if (!(un > 0.0) || !(f.h().norm(v) > 0.0))
    throw Error(ErrorCode::ZeroVector, "orthogonality needs nonzero vectors");
  const Vec3 n = v / f.F(v) - f.wind();
  return std::abs(f.h().inner(u, n)) <= tol * un;
}

}  // namespace wildfront
