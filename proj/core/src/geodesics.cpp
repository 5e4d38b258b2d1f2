#include "wildfront/geodesics.hpp"

#include "wildfront/expression.hpp"

#include <algorithm>
#include <cmath>

namespace wildfront {

namespace {

std::size_t segment_index(const std::vector<double>& t, double time) {
  if (t.empty() || time < t.front() - 1e-12 * std::max(1.0, std::abs(t.front())) ||
      time > t.back() + 1e-12 * std::max(1.0, std::abs(t.back())))
    throw Error(ErrorCode::OutOfHorizon, "time outside the trajectory horizon");
  if (t.size() == 1) return 0;
  auto it = std::upper_bound(t.begin(), t.end(), time);
  std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - t.begin() - 1));
  return std::min(i, t.size() - 2);
}

std::size_t step_count(double T, double dt) {
  if (!(T > 0.0) || !std::isfinite(T)) throw Error(ErrorCode::InvalidArgument, "horizon must be positive");
  if (dt <= 0.0) return 1000;
  const double n = std::ceil(T / dt - 1e-9);
  if (!(n >= 1.0) || n > 1e8) throw Error(ErrorCode::InvalidArgument, "invalid time step");
  return static_cast<std::size_t>(n);
}

struct State {
  Point3 x;
  Vec3 v;
};

template <class Accel>
Trajectory rk4(const Point3& p, const Vec3& v0, double T, std::size_t n, std::size_t stride,
               Accel&& accel) {
  stride = std::max<std::size_t>(1, stride);
  const double h = T / static_cast<double>(n);
  Trajectory out;
  const std::size_t count = n / stride + 2;
  out.t.reserve(count);
  out.x.reserve(count);
  out.v.reserve(count);
  State s{p, v0};
  out.t.push_back(0.0);
  out.x.push_back(s.x);
  out.v.push_back(s.v);
  for (std::size_t i = 1; i <= n; ++i) {
    const Vec3 a1 = accel(s.x, s.v);
    const Point3 x2 = s.x + 0.5 * h * s.v;
    const Vec3 v2 = s.v + 0.5 * h * a1;
    const Vec3 a2 = accel(x2, v2);
    const Point3 x3 = s.x + 0.5 * h * v2;
    const Vec3 v3 = s.v + 0.5 * h * a2;
    const Vec3 a3 = accel(x3, v3);
    const Point3 x4 = s.x + h * v3;
    const Vec3 v4 = s.v + h * a3;
    const Vec3 a4 = accel(x4, v4);
    s.x += h / 6.0 * (s.v + 2.0 * v2 + 2.0 * v3 + v4);
    s.v += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    if (!s.x.allFinite() || !s.v.allFinite())
      throw Error(ErrorCode::StepFailure, "geodesic integration diverged");
    if (i % stride == 0 || i == n) {
      out.t.push_back(i == n ? T : h * static_cast<double>(i));
      out.x.push_back(s.x);
      out.v.push_back(s.v);
    }
  }
  return out;
}

// Euler-Lagrange acceleration for E = F^2 / 2: g a = dE/dx - (dp/dx) v, p = dE/dv.
Vec3 randers_acceleration(const ZermeloData& data, const Point3& x, const Vec3& v) {
  const RandersEval here = data.at(x);
  const double step = fd_step(x);
  Vec3 dE;
  Mat3 dp;  // dp(i, k) = d p_i / d x^k
  for (int k = 0; k < 3; ++k) {
    Point3 xp = x, xm = x;
    xp[k] += step;
    xm[k] -= step;
    const RandersEval ep = data.at(xp), em = data.at(xm);
    const double fp = ep.F(v), fm = em.F(v);
    dE[k] = (0.5 * fp * fp - 0.5 * fm * fm) / (2.0 * step);
    dp.col(k) = (ep.momentum(v) - em.momentum(v)) / (2.0 * step);
  }
  const Mat3 g = here.fundamental_tensor(v);
  return g.ldlt().solve(dE - dp * v);
}

}  // namespace

Point3 Trajectory::position(double time) const {
  const std::size_t i = segment_index(t, time);
  if (size() == 1) return x[0];
  const double h = t[i + 1] - t[i];
  const double s = std::clamp((time - t[i]) / h, 0.0, 1.0);
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * x[i] + (s3 - 2 * s2 + s) * h * v[i] + (-2 * s3 + 3 * s2) * x[i + 1] +
         (s3 - s2) * h * v[i + 1];
}

Vec3 Trajectory::velocity(double time) const {
  const std::size_t i = segment_index(t, time);
  if (size() == 1) return v[0];
  const double h = t[i + 1] - t[i];
  const double s = std::clamp((time - t[i]) / h, 0.0, 1.0);
  const double s2 = s * s;
  return ((6 * s2 - 6 * s) * x[i] + (-6 * s2 + 6 * s) * x[i + 1]) / h +
         (3 * s2 - 4 * s + 1) * v[i] + (3 * s2 - 2 * s) * v[i + 1];
}

const char* to_string(RayMode mode) {
  switch (mode) {
    case RayMode::Constant: return "constant";
    case RayMode::Killing: return "killing";
    case RayMode::General: return "general";
  }
  return "general";
}

Vec3 Christoffel::contract(const Vec3& u) const {
  return Vec3(u.dot(symbols[0] * u), u.dot(symbols[1] * u), u.dot(symbols[2] * u));
}

Christoffel christoffel(const MetricField& metric, const Point3& p) {
  Christoffel out;
  if (metric.is_constant()) return out;
  const SpdMatrix3 h = metric.at(p);
  const Mat3 hinv = h.inverse();
  if (!hinv.allFinite()) throw Error(ErrorCode::SingularMetric, "metric is not invertible");
  const double step = fd_step(p);
  std::array<Mat3, 3> dh;
  for (int k = 0; k < 3; ++k) dh[static_cast<std::size_t>(k)] = metric.partial(p, k, step);
  // lowered[l](j, k) = 1/2 (d_j h_lk + d_k h_lj - d_l h_jk)
  std::array<Mat3, 3> lowered;
  for (int l = 0; l < 3; ++l) {
    Mat3 m;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        m(j, k) = 0.5 * (dh[static_cast<std::size_t>(j)](l, k) + dh[static_cast<std::size_t>(k)](l, j) -
                         dh[static_cast<std::size_t>(l)](j, k));
    lowered[static_cast<std::size_t>(l)] = m;
  }
  for (int i = 0; i < 3; ++i) {
    Mat3 m = Mat3::Zero();
    for (int l = 0; l < 3; ++l) m += hinv(i, l) * lowered[static_cast<std::size_t>(l)];
    out.symbols[static_cast<std::size_t>(i)] = 0.5 * (m + m.transpose());
  }
  return out;
}

Trajectory integrate_h_geodesic(const MetricField& metric, const Point3& p, const Vec3& u0, double T,
                                double dt, std::size_t record_stride) {
  if (!p.allFinite() || !u0.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite initial data");
  const double speed = metric.at(p).norm(u0);
  if (std::abs(speed - 1.0) > 1e-9)
    throw Error(ErrorCode::InvalidArgument, "initial velocity must have unit h-length");
  const std::size_t n = step_count(T, dt);
  if (metric.is_constant())
    return rk4(p, u0, T, n, record_stride, [](const Point3&, const Vec3&) { return Vec3(Vec3::Zero()); });
  return rk4(p, u0, T, n, record_stride,
             [&](const Point3& x, const Vec3& v) -> Vec3 { return -christoffel(metric, x).contract(v); });
}

Box reach_box(const ZermeloData& data, const Point3& p, double T) {
  const RandersEval e = data.at(p);
  const double semi_axis = std::sqrt(e.h().inverse().diagonal().maxCoeff());
  const double reach = 1.5 * T * (semi_axis + e.wind().norm()) + 1e-3;
  return Box{p - Vec3::Constant(reach), p + Vec3::Constant(reach), 5};
}

ModeSelection select_mode(const ZermeloData& data, const Box& region, double killing_rel_tol) {
  ModeSelection out;
  if (data.is_constant()) {
    out.mode = RayMode::Constant;
    return out;
  }
  out.killing = is_killing(data.wind(), data.metric(), region, killing_rel_tol);
  out.mode = out.killing->killing ? RayMode::Killing : RayMode::General;
  return out;
}

Trajectory trace_wave_ray(const GeodesicProblem& pr) {
  if (!pr.p.allFinite() || !pr.v.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite initial data");
  const RandersEval at_p = pr.data.at(pr.p);
  if (std::abs(at_p.F(pr.v) - 1.0) > 1e-9)
    throw Error(ErrorCode::InvalidArgument, "initial velocity must have unit F-length");
  const std::size_t n = step_count(pr.horizon, pr.dt);
  const double T = pr.horizon;

  switch (pr.mode) {
    case RayMode::Constant: {
      if (!pr.data.is_constant())
        throw Error(ErrorCode::ModeMismatch, "constant mode needs a constant metric and wind");
      const std::size_t stride = std::max<std::size_t>(1, pr.record_stride);
      Trajectory out;
      for (std::size_t i = 0;; i = std::min(i + stride, n)) {
        const double t = i == n ? T : T * static_cast<double>(i) / static_cast<double>(n);
        out.t.push_back(t);
        out.x.push_back(pr.p + t * pr.v);
        out.v.push_back(pr.v);
        if (i == n) break;
      }
      return out;
    }
    case RayMode::Killing: {
      if (!pr.killing_verified) {
        const Box region = pr.killing_region ? *pr.killing_region : reach_box(pr.data, pr.p, T);
        const auto report = is_killing(pr.data.wind(), pr.data.metric(), region);
        if (!report.killing)
          throw Error(ErrorCode::ModeMismatch, "wind is not a Killing field for h (residual " +
                                                   format_number(report.max_residual) + ")");
      }
      const Vec3 u0 = pr.v - at_p.wind();
      Trajectory base = integrate_h_geodesic(pr.data.metric(), pr.p, u0, T, T / static_cast<double>(n),
                                             pr.record_stride);
      for (std::size_t i = 0; i < base.size(); ++i) {
        const double t = base.t[i];
        const Point3 y = base.x[i];
        const Point3 x = flow(pr.data.wind(), t, y);
        base.v[i] = pr.data.wind().at(x) + flow_differential(pr.data.wind(), t, y, base.v[i]);
        base.x[i] = x;
      }
      return base;
    }
    case RayMode::General:
      break;
  }
  return rk4(pr.p, pr.v, T, n, pr.record_stride,
             [&](const Point3& x, const Vec3& v) { return randers_acceleration(pr.data, x, v); });
}

}  // namespace wildfront
