#include "wildfront/strategy.hpp"

#include "wildfront/indicatrix.hpp"

#include "launch_frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>

namespace wildfront {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Continuous launch parameters around a fan ray: the unnormalized offset u = V - W
// for point fronts, (s, angle) for curves, (s1, s2) for surfaces, none for sampled fronts.
class LaunchFamily {
 public:
  LaunchFamily(const ZermeloData& data, const FrontGeometry& front, const PropagationSettings& settings)
      : data_(data), front_(front), settings_(settings), centroid_(front.sample(settings.sampling).centroid()) {}

  std::size_t dims() const {
    switch (front_.kind()) {
      case FrontKind::Point: return 3;
      case FrontKind::Curve:
      case FrontKind::Surface: return 2;
      case FrontKind::Sampled: return 0;
    }
    return 0;
  }

  std::vector<double> params_of(const Launch& l) const {
    switch (front_.kind()) {
      case FrontKind::Point: {
        const Vec3 u = l.v - data_.at(l.origin).wind();
        return {u.x(), u.y(), u.z()};
      }
      case FrontKind::Curve:
      case FrontKind::Surface: return {l.params[0], l.params[1]};
      case FrontKind::Sampled: return {};
    }
    return {};
  }

  // Typical spacing of the fan in each parameter; used as initial search steps.
  std::vector<double> fan_steps() const {
    const auto& s = settings_.sampling;
    switch (front_.kind()) {
      case FrontKind::Point: {
        const SphereGrid g = SphereGrid::for_count(s.sphere_points);
        const double a = std::numbers::pi / static_cast<double>(g.rows - 1);
        return {a, a, a};
      }
      case FrontKind::Curve: {
        const auto r = front_.range1();
        return {(r[1] - r[0]) / static_cast<double>(s.curve_samples),
                std::numbers::pi / static_cast<double>(std::max<std::size_t>(2, s.normal_samples) - 1)};
      }
      case FrontKind::Surface: {
        const auto r1 = front_.range1(), r2 = front_.range2();
        return {(r1[1] - r1[0]) / static_cast<double>(s.surface_s1), (r2[1] - r2[0]) / static_cast<double>(s.surface_s2)};
      }
      case FrontKind::Sampled: return {};
    }
    return {};
  }

  Launch make(const std::vector<double>& z, const Launch& base) const {
    Launch l = base;
    switch (front_.kind()) {
      case FrontKind::Point: {
        const RandersEval e = data_.at(base.origin);
        const Vec3 u(z[0], z[1], z[2]);
        const double n = e.h().norm(u);
        if (!(n > 0.0)) throw Error(ErrorCode::ZeroDirection, "launch offset vanished");
        l.v = e.wind() + u / n;
        return l;
      }
      case FrontKind::Curve: {
        const double s = fold(z[0], front_.range1(), front_.wraps1());
        const FrontSample fs = front_.sample_at({s, 0.0});
        const RandersEval e = data_.at(fs.x);
        const Vec3 u = detail::curve_normals(e.h(), fs, front_.outward_hint(fs.x, centroid_), {z[1]}).front();
        l.origin = fs.x;
        l.v = e.wind() + u;
        l.params = {s, z[1]};
        return l;
      }
      case FrontKind::Surface: {
        const double s1 = fold(z[0], front_.range1(), front_.wraps1());
        const double s2 = fold(z[1], front_.range2(), front_.wraps2());
        const FrontSample fs = front_.sample_at({s1, s2});
        const RandersEval e = data_.at(fs.x);
        Vec3 u = detail::surface_normal(e.h(), fs, front_.outward_hint(fs.x, centroid_));
        const RandersEval eb = data_.at(base.origin);
        const FrontSample bs = front_.sample_at(base.params);
        const Vec3 ub = detail::surface_normal(eb.h(), bs, front_.outward_hint(bs.x, centroid_));
        if (eb.h().inner(base.v - eb.wind(), ub) < 0.0) u = -u;
        l.origin = fs.x;
        l.v = e.wind() + u;
        l.params = {s1, s2};
        return l;
      }
      case FrontKind::Sampled: return base;
    }
    return base;
  }

 private:
  static double fold(double s, std::array<double, 2> range, bool wrap) {
    if (!wrap) return std::clamp(s, range[0], range[1]);
    const double len = range[1] - range[0];
    return range[0] + (s - range[0]) - len * std::floor((s - range[0]) / len);
  }

  const ZermeloData& data_;
  const FrontGeometry& front_;
  const PropagationSettings& settings_;
  Point3 centroid_;
};

Trajectory trace(const ZermeloData& data, const Launch& l, double T, RayMode mode, const PropagationSettings& ps,
                 bool endpoint_only) {
  if (T <= 0.0) {
    Trajectory t;
    t.t = {0.0};
    t.x = {l.origin};
    t.v = {l.v};
    return t;
  }
  GeodesicProblem pr;
  pr.mode = mode;
  pr.data = data;
  pr.p = l.origin;
  pr.v = l.v;
  pr.horizon = T;
  pr.dt = ps.dt > 0.0 ? T / std::max(1.0, std::ceil(T / ps.dt - 1e-9)) : 0.0;
  pr.record_stride = endpoint_only ? std::numeric_limits<std::size_t>::max() / 2 : 1;
  pr.killing_verified = true;
  return trace_wave_ray(pr);
}

std::optional<double> first_hit(const Trajectory& ray, const Region& region) {
  double prev = region.value(ray.x[0]);
  if (prev <= 0.0) return ray.t[0];
  for (std::size_t k = 1; k < ray.size(); ++k) {
    const double v = region.value(ray.x[k]);
    if (v > 0.0) continue;
    double lo = ray.t[k - 1], hi = ray.t[k];
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (region.value(ray.position(mid)) <= 0.0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  }
  return std::nullopt;
}

std::size_t scan_stride(double T, const PropagationSettings& ps, std::size_t samples) {
  const std::size_t n = ps.dt > 0.0 ? static_cast<std::size_t>(std::max(1.0, std::ceil(T / ps.dt - 1e-9))) : 1000;
  return std::max<std::size_t>(1, n / std::max<std::size_t>(1, samples));
}

StrategicResult finish(const ZermeloData& data, const std::string& query, RayMode mode, const Launch& l, double tau,
                       const PropagationSettings& ps) {
  StrategicResult r;
  r.query = query;
  r.mode = mode;
  r.launch = l;
  r.tau = tau;
  r.ray = trace(data, l, tau, mode, ps, false);
  r.contact = r.ray.end_point();
  return r;
}

}  // namespace

StrategicResult strategic_path_all_equal(const ZermeloData& data, const FrontGeometry& front, double tau,
                                         const StrategySettings& settings) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw Error(ErrorCode::InvalidArgument, "tau must be positive");
  const auto& ps = settings.propagation;
  const LaunchPlan plan = plan_launches(data, front, ps);
  if (plan.launches.empty()) throw Error(ErrorCode::EmptyFan, "launch fan is empty");
  if (plan.launches.size() < 8) throw Error(ErrorCode::InvalidArgument, "launch fan needs at least 8 rays");
  const RayMode mode = resolve_mode(data, front, tau, ps).mode;

  std::vector<double> score(plan.launches.size());
  if (mode == RayMode::Constant) {
    for (std::size_t i = 0; i < score.size(); ++i) score[i] = plan.launches[i].v.norm();
  } else {
    const auto rays = trace_fan(data, plan.launches, tau, mode, ps);
    for (std::size_t i = 0; i < score.size(); ++i) score[i] = (rays[i].end_point() - rays[i].origin()).norm();
  }
  const double best = *std::max_element(score.begin(), score.end());
  const double tie = 1e-12 * std::max(1.0, best);
  std::size_t chosen = 0;
  while (score[chosen] < best - tie) ++chosen;

  std::vector<std::size_t> order(score.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });

  StrategicResult r = finish(data, "all_equal", mode, plan.launches[chosen], tau, ps);
  for (std::size_t i : order) {
    if (r.runner_ups.size() >= settings.runner_ups) break;
    if (i != chosen) r.runner_ups.push_back(RankedRay{plan.launches[i], score[i]});
  }
  return r;
}

StrategicResult strategic_path_to_point(const ZermeloData& data, const FrontGeometry& front, const Point3& q,
                                        const StrategySettings& settings) {
  if (!q.allFinite()) throw Error(ErrorCode::InvalidArgument, "target point must be finite");
  const auto& ps = settings.propagation;
  const LaunchPlan plan = plan_launches(data, front, ps);
  if (plan.launches.empty()) throw Error(ErrorCode::EmptyFan, "launch fan is empty");

  double estimate = kInf;
  for (const auto& l : plan.launches) estimate = std::min(estimate, data.at(l.origin).F(q - l.origin));
  const double tol = settings.tolerance * std::max(1.0, q.norm());
  if (estimate <= tol) {
    for (const auto& l : plan.launches)
      if ((l.origin - q).norm() <= tol) {
        StrategicResult r = finish(data, "point", data.is_constant() ? RayMode::Constant : RayMode::General, l, 0.0, ps);
        return r;
      }
  }
  const double scan_T = std::min(settings.horizon, std::max(2.0 * estimate, estimate + 1.0));
  const RayMode mode = resolve_mode(data, front, scan_T, ps).mode;
  const auto rays = trace_fan(data, plan.launches, scan_T, mode, ps, scan_stride(scan_T, ps, settings.scan_samples));

  struct Candidate {
    std::size_t ray;
    double t;
    double miss;
  };
  std::vector<Candidate> scan;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    Candidate c{i, 0.0, kInf};
    for (std::size_t k = 0; k < rays[i].size(); ++k) {
      const double d = (rays[i].x[k] - q).norm();
      if (d < c.miss) c = Candidate{i, rays[i].t[k], d};
    }
    scan.push_back(c);
  }
  std::stable_sort(scan.begin(), scan.end(), [](const Candidate& a, const Candidate& b) { return a.miss < b.miss; });

  const LaunchFamily family(data, front, ps);
  struct Solution {
    Launch launch;
    double tau;
    double miss;
  };
  std::vector<Solution> solutions;
  const std::size_t n_cand = std::min(settings.candidates, scan.size());
  for (std::size_t c = 0; c < n_cand; ++c) {
    const Launch base = plan.launches[scan[c].ray];
    std::vector<double> z = family.params_of(base);
    z.push_back(std::max(scan[c].t, 1e-6));
    const std::size_t m = z.size();
    auto residual = [&](const std::vector<double>& zz) -> Vec3 {
      const std::vector<double> p(zz.begin(), zz.end() - 1);
      const Launch l = family.make(p, base);
      return trace(data, l, zz.back(), mode, ps, true).end_point() - q;
    };
    Vec3 r = residual(z);
    for (std::size_t it = 0; it < settings.max_iterations && r.norm() > tol; ++it) {
      Eigen::Matrix<double, 3, Eigen::Dynamic> J(3, static_cast<Eigen::Index>(m));
      for (std::size_t j = 0; j < m; ++j) {
        const double step = 1e-6 * std::max(1.0, std::abs(z[j]));
        auto zp = z, zm = z;
        zp[j] += step;
        zm[j] -= step;
        if (j + 1 == m && zm[j] <= 0.0) {
          zm[j] = z[j];
          J.col(static_cast<Eigen::Index>(j)) = (residual(zp) - r) / step;
        } else {
          J.col(static_cast<Eigen::Index>(j)) = (residual(zp) - residual(zm)) / (2.0 * step);
        }
      }
      const Eigen::VectorXd delta = -J.completeOrthogonalDecomposition().solve(r);
      bool accepted = false;
      for (double lambda = 1.0; lambda > 1e-6; lambda *= 0.5) {
        auto trial = z;
        for (std::size_t j = 0; j < m; ++j) trial[j] += lambda * delta[static_cast<Eigen::Index>(j)];
        if (!(trial.back() > 0.0) || trial.back() > settings.horizon) continue;
        Vec3 rt;
        try {
          rt = residual(trial);
        } catch (const Error&) {
          continue;
        }
        if (rt.norm() < r.norm()) {
          z = trial;
          r = rt;
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
    }
    if (r.norm() <= tol) {
      const std::vector<double> p(z.begin(), z.end() - 1);
      solutions.push_back(Solution{family.make(p, base), z.back(), r.norm()});
    }
  }
  if (solutions.empty())
    throw Error(ErrorCode::Unreachable, "no wave ray reaches the target within the horizon");
  std::stable_sort(solutions.begin(), solutions.end(), [](const Solution& a, const Solution& b) { return a.tau < b.tau; });

  StrategicResult result = finish(data, "point", mode, solutions.front().launch, solutions.front().tau, ps);
  result.miss = (result.contact - q).norm();
  for (std::size_t i = 1; i < solutions.size() && result.runner_ups.size() < settings.runner_ups; ++i)
    if (solutions[i].tau > solutions.front().tau + 1e-9)
      result.runner_ups.push_back(RankedRay{solutions[i].launch, solutions[i].tau});
  return result;
}

StrategicResult strategic_path_to_region(const ZermeloData& data, const FrontGeometry& front, const Region& region,
                                         const StrategySettings& settings) {
  const auto& ps = settings.propagation;
  const LaunchPlan plan = plan_launches(data, front, ps);
  if (plan.launches.empty()) throw Error(ErrorCode::EmptyFan, "launch fan is empty");

  // Touching: a front sample already inside B.
  std::optional<std::size_t> touching;
  double deepest = kInf;
  for (std::size_t i = 0; i < plan.launches.size(); ++i) {
    const double v = region.value(plan.launches[i].origin);
    if (v <= 0.0 && v < deepest) {
      deepest = v;
      touching = i;
    }
  }
  const RayMode mode = resolve_mode(data, front, settings.horizon, ps).mode;
  if (touching) return finish(data, "region", mode, plan.launches[*touching], 0.0, ps);

  const auto rays =
      trace_fan(data, plan.launches, settings.horizon, mode, ps, scan_stride(settings.horizon, ps, settings.scan_samples));
  std::vector<double> hit(rays.size(), kInf);
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (auto t = first_hit(rays[i], region)) hit[i] = *t;
  std::vector<std::size_t> order(rays.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return hit[a] < hit[b]; });
  if (!std::isfinite(hit[order.front()]))
    throw Error(ErrorCode::Unreachable, "the front does not reach the region within the horizon");

  const std::size_t best = order.front();
  Launch launch = plan.launches[best];
  double tau = hit[best];

  const LaunchFamily family(data, front, ps);
  if (family.dims() > 0) {
    auto objective = [&](const std::vector<double>& z) {
      try {
        const Launch l = family.make(z, plan.launches[best]);
        const double T = std::min(settings.horizon, 1.25 * tau + 1e-6);
        const Trajectory ray = trace_fan(data, std::span<const Launch>(&l, 1), T, mode, ps,
                                         scan_stride(T, ps, settings.scan_samples))
                                   .front();
        const auto t = first_hit(ray, region);
        return std::make_pair(t ? *t : kInf, l);
      } catch (const Error&) {
        return std::make_pair(kInf, plan.launches[best]);
      }
    };
    std::vector<double> z = family.params_of(launch);
    std::vector<double> step = family.fan_steps();
    for (double& s : step) s *= 0.5;
    for (int evals = 0; evals < 600;) {
      bool improved = false;
      for (std::size_t j = 0; j < z.size() && !improved; ++j)
        for (double sign : {1.0, -1.0}) {
          auto trial = z;
          trial[j] += sign * step[j];
          const auto [t, l] = objective(trial);
          ++evals;
          if (t < tau - 1e-15 * std::max(1.0, tau)) {
            tau = t;
            launch = l;
            z = trial;
            improved = true;
            break;
          }
        }
      if (!improved) {
        bool done = true;
        for (double& s : step) {
          s *= 0.5;
          done = done && s < 1e-10;
        }
        if (done) break;
      }
    }
  }

  StrategicResult result = finish(data, "region", mode, launch, tau, ps);
  for (std::size_t k = 1; k < order.size() && result.runner_ups.size() < settings.runner_ups; ++k)
    if (std::isfinite(hit[order[k]])) result.runner_ups.push_back(RankedRay{plan.launches[order[k]], hit[order[k]]});
  return result;
}

std::vector<Point3> strategic_points(const StrategicResult& result, const std::vector<double>& times) {
  std::vector<Point3> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(result.ray.position(t));
  return out;
}

}  // namespace wildfront
