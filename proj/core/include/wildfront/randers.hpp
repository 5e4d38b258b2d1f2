#pragma once

#include "wildfront/linalg.hpp"
#include "wildfront/metric_field.hpp"
#include "wildfront/wind.hpp"

namespace wildfront {

// Randers norm F = alpha + beta at a single point, built from Zermelo data (h, W):
//
//   F(V) = sqrt(h(W,V)^2 + lambda h(V,V)) / lambda - h(W,V) / lambda,
//   lambda = 1 - h(W,W).
//
// F(V) = 1 exactly when |V - W|_h = 1.
class RandersEval {
 public:
  // Below this lambda the data is treated as non-navigable.
  static constexpr double kMinLambda = 1e-9;

  RandersEval(const SpdMatrix3& h, const Vec3& wind);

  const SpdMatrix3& h() const noexcept { return h_; }
  const Vec3& wind() const noexcept { return w_; }
  double lambda() const noexcept { return lambda_; }

  double F(const Vec3& v) const;
  double alpha(const Vec3& v) const;
  double beta(const Vec3& v) const;
  // alpha(V)^2 = V^T A V and beta(V) = b . V.
  Mat3 alpha_matrix() const;
  Vec3 beta_covector() const;

  // dF/dV; requires V != 0.
  Vec3 gradient(const Vec3& v) const;
  // g_V = 1/2 Hess_V F^2; requires V != 0.
  Mat3 fundamental_tensor(const Vec3& v) const;
  // 1/2 dF^2/dV = F dF/dV (zero at V = 0).
  Vec3 momentum(const Vec3& v) const;

  // W + d / |d|_h, which has F = 1.
  Vec3 unit_direction(const Vec3& d) const;

 private:
  SpdMatrix3 h_;
  Vec3 w_;
  Vec3 hw_;  // h W as a covector
  double lambda_;
};

// Zermelo data: metric field h and wind W with h(W, W) < 1 wherever evaluated.
class ZermeloData {
 public:
  ZermeloData() = default;  // Euclidean, calm
  ZermeloData(MetricField metric, WindField wind);

  const MetricField& metric() const noexcept { return metric_; }
  const WindField& wind() const noexcept { return wind_; }

  // Throws NonNavigable when h(W,W) >= 1 - kMinLambda at p.
  RandersEval at(const Point3& p) const;

  bool is_constant() const noexcept { return metric_.is_constant() && wind_.is_constant(); }

 private:
  MetricField metric_;
  WindField wind_;
};

double eval_randers(const ZermeloData& data, const Point3& p, const Vec3& v);
Vec3 unit_f_direction(const ZermeloData& data, const Point3& p, const Vec3& d);
// g_V(U1, U2) at p.
double fundamental_tensor(const ZermeloData& data, const Point3& p, const Vec3& v, const Vec3& u1,
                          const Vec3& u2);
// U is F-orthogonal to V when |h(U, V/F(V) - W)| <= tol |U|_h.
bool is_f_orthogonal(const ZermeloData& data, const Point3& p, const Vec3& u, const Vec3& v,
                     double tol = 1e-8);

}  // namespace wildfront
