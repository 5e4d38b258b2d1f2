// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include "generators.hpp"
#include "wildfront/fixtures.hpp"
#include "wildfront/indicatrix.hpp"
#include "wildfront/propagation.hpp"
#include "wildfront/render.hpp"
#include "wildfront/scenario.hpp"
#include "wildfront/strategy.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace wildfront;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string scenario_path(const std::string& name) {
  return std::string(WILDFRONT_SCENARIO_DIR) + "/" + name + ".json";
}

struct Fixture {
  Scenario scenario;
  ZermeloData data;
  FrontGeometry front;
  PropagationSettings settings;
  std::optional<SliceGrid> slice;
};

Fixture load_fixture(const std::string& name) {
  Fixture f;
  f.scenario = load_scenario(scenario_path(name));
  f.data = ZermeloData(metric_field(build_ellipsoid(f.scenario)), build_wind(f.scenario).front().field);
  f.front = build_front(f.scenario);
  f.settings = build_propagation_settings(f.scenario);
  f.slice = build_slice(f.scenario);
  return f;
}

Mat3 example1_matrix() {
  const double r3 = std::sqrt(3.0);
  Mat3 m;
  m << 4, 0, 0, 0, 13.0 / 16, -3 * r3 / 16, 0, -3 * r3 / 16, 7.0 / 16;
  return m;
}

Outcome criterion1() {
  const auto t0 = Clock::now();
  const SpdMatrix3 h = metric_from_spec(fixtures::example1_spec(), Point3::Zero());
  const double err = (h.matrix() - example1_matrix()).cwiseAbs().maxCoeff();
  const double t = seconds_since(t0);
  return {err <= 1e-12 && t < 1.0, "max entry error " + fmt(err) + ", " + fmt(t) + " s"};
}

Outcome criterion2() {
  test_support::Gen gen(2024);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const SpdMatrix3 h = gen.spd();
    const Vec3 w = gen.wind(h);
    const ZermeloData data(MetricField::constant(h), WindField::constant(w));
    const Vec3 u = gen.unit_h(h);
    worst = std::max(worst, std::abs(eval_randers(data, Point3::Zero(), w + u) - 1.0));
  }
  return {worst <= 1e-9, "1000 metrics, max |F(W+u) - 1| = " + fmt(worst)};
}

Outcome criterion3() {
  const Mat3 h = example1_matrix();
  const Vec3 w = fixtures::example1_wind();
  double worst = 0.0;
  std::size_t n = 0;
  for (double tau : {1.0, 2.5}) {
    const auto s = sample_randers_indicatrix(fixtures::example1_spec(), w, Point3::Zero(), tau, 512);
    for (const auto& q : s.points) {
      const Vec3 x = (q - tau * w) / tau;
      worst = std::max(worst, std::abs(x.dot(h * x) - 1.0));
      ++n;
    }
  }
  return {worst <= 1e-9 && n >= 1024, std::to_string(n) + " samples, max |Q_h - 1| = " + fmt(worst)};
}

// 256 x 256 z = 0 grid around the ray front with a quarter of its extent as margin.
SliceGrid grid_around(const std::vector<Polyline>& lines) {
  Vec2 lo = Vec2::Constant(1e300), hi = -lo;
  const Plane plane = Plane::axis(2, 0.0);
  for (const auto& l : lines)
    for (const auto& p : l.points) {
      lo = lo.cwiseMin(plane.project(p));
      hi = hi.cwiseMax(plane.project(p));
    }
  const Vec2 margin = 0.25 * (hi - lo);
  SliceGrid g;
  g.plane = plane;
  g.lo = lo - margin;
  g.hi = hi + margin;
  g.nu = g.nv = 256;
  return g;
}

Outcome criterion4() {
  const auto t0 = Clock::now();
  bool pass = true;
  std::string detail;
  for (const char* name : {"example1_case1", "example1_case2"}) {
    const Fixture f = load_fixture(name);
    const auto rays = slice_wavefront(propagate_front(f.data, f.front, 1.0, f.settings), Plane::axis(2, 0.0));
    const SliceGrid g = grid_around(rays);
    const auto seeds = f.front.sample(f.settings.sampling).positions();
    const Envelope env = huygens_step(f.data, seeds, 1.0, g);
    const double d = hausdorff(env.contours, rays);
    const double tol = 2 * g.spacing();
    pass = pass && d <= tol && !env.contours.empty();
    detail += std::string(name) + " " + fmt(d) + " <= " + fmt(tol) + "; ";
  }
  const double t = seconds_since(t0);
  return {pass && t < 30.0, detail + fmt(t) + " s"};
}

Outcome criterion5() {
  bool pass = true;
  std::string detail;
  for (const char* name : {"example1_case1", "example1_case2", "example1_case3", "example2_case1", "example2_case2"}) {
    const Fixture f = load_fixture(name);
    const Plane plane = f.slice->plane;
    const Wavefront once = propagate_front(f.data, f.front, 2.0, f.settings);
    PropagationSettings next = f.settings;
    next.side = Side::Outward;
    const Wavefront twice =
        propagate_front(f.data, to_front(propagate_front(f.data, f.front, 1.0, f.settings), f.data), 1.0, next);
    const auto a = slice_wavefront(once, plane), b = slice_wavefront(twice, plane);
    const double d = a.empty() || b.empty() ? INFINITY : hausdorff(a, b);
    const double tol = std::max(2 * f.slice->spacing(), 1e-3);
    pass = pass && d <= tol;
    detail += std::string(name) + " " + fmt(d) + "; ";
  }
  return {pass, detail};
}

Outcome criterion6() {
  const ZermeloData data = fixtures::example2_data(fixtures::kExample2DefaultK);
  test_support::Gen gen(606);
  double drift = 0.0, factor = INFINITY;
  for (int i = 0; i < 16; ++i) {
    GeodesicProblem p;
    p.mode = RayMode::General;
    p.data = data;
    p.p = gen.point(1.0);
    p.v = unit_f_direction(data, p.p, gen.vec());
    p.horizon = 1.0;
    const Trajectory t = trace_wave_ray(p);
    for (std::size_t k = 0; k < t.size(); ++k)
      drift = std::max(drift, std::abs(eval_randers(data, t.x[k], t.v[k]) - 1.0));
    auto end_at = [&](double dt) {
      GeodesicProblem q = p;
      q.dt = dt;
      q.record_stride = 1u << 30;
      return trace_wave_ray(q).end_point();
    };
    const Point3 ref = end_at(1.0 / 640);
    const double e20 = (end_at(1.0 / 20) - ref).norm(), e40 = (end_at(1.0 / 40) - ref).norm();
    factor = std::min(factor, e20 / e40);
  }
  return {drift <= 1e-5 && factor >= 8.0, "F drift " + fmt(drift) + ", worst self-convergence factor " + fmt(factor)};
}

Outcome criterion7() {
  const ZermeloData c = fixtures::example1_data();
  test_support::Gen gen(707);
  double straight = 0.0;
  for (int i = 0; i < 16; ++i) {
    GeodesicProblem p;
    p.mode = RayMode::General;
    p.data = c;
    p.p = gen.point(2.0);
    p.v = unit_f_direction(c, p.p, gen.vec());
    p.horizon = 2.0;
    const Trajectory t = trace_wave_ray(p);
    for (std::size_t k = 0; k < t.size(); ++k) straight = std::max(straight, (t.x[k] - (p.p + t.t[k] * p.v)).norm());
  }
  const Fixture f = load_fixture("example2_case1");
  const Box box = reach_box(f.data, f.front.sample(f.settings.sampling).centroid(), 1.0);
  const KillingReport k = is_killing(f.data.wind(), f.data.metric(), box);
  std::string detail = "constant-wind deviation " + fmt(straight) + "; example 2 Killing test ";
  bool pass = straight <= 1e-6;
  if (k.killing) {
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
      GeodesicProblem p;
      p.data = f.data;
      p.p = gen.point(0.5);
      p.v = unit_f_direction(f.data, p.p, gen.vec());
      p.mode = RayMode::Killing;
      const Point3 a = trace_wave_ray(p).end_point();
      p.mode = RayMode::General;
      worst = std::max(worst, (a - trace_wave_ray(p).end_point()).norm());
    }
    pass = pass && worst <= 1e-4;
    detail += "passed, Killing vs general " + fmt(worst);
  } else {
    const RunReport r = run_scenario(f.scenario, RunOptions{false});
    const bool general = !r.segments.empty() && r.segments[0].mode == RayMode::General && r.segments[0].killing &&
                         !r.segments[0].killing->killing;
    pass = pass && general;
    detail += "failed (residual " + fmt(k.max_residual) + " > " + fmt(k.threshold) + "), run used " +
              (r.segments.empty() ? "nothing" : to_string(r.segments[0].mode)) + " mode";
  }
  return {pass, detail};
}

Outcome criterion8() {
  const Fixture f = load_fixture("example1_case1");
  StrategySettings s;
  s.propagation = f.settings;
  const StrategicResult r = strategic_path_all_equal(f.data, f.front, 10.0, s);
  const SpdMatrix3 h = f.data.metric().at(Point3::Zero());
  const Mat3 root_inv = h.inverse_sqrt();
  const Vec3 w = f.data.wind().at(Point3::Zero());
  test_support::Gen gen(808);
  Vec3 best_x = Vec3::UnitX();
  double best = -1.0;
  for (int i = 0; i < 100000; ++i) {
    const Vec3 x = gen.unit();
    const double n = (w + root_inv * x).norm();
    if (n > best) {
      best = n;
      best_x = x;
    }
  }
  // Compare on the unit sphere that parametrizes the fan.
  const Mat3 root = h.matrix() * root_inv;
  const Vec3 fan_x = (root * (r.launch.v - w)).normalized();
  const double angle = std::acos(std::clamp(fan_x.dot(best_x), -1.0, 1.0));
  const SphereGrid grid = SphereGrid::for_count(f.settings.sampling.sphere_points);
  const double resolution = std::max(std::numbers::pi / static_cast<double>(grid.rows - 1),
                                     2 * std::numbers::pi / static_cast<double>(grid.cols));
  const double speed_gap = best - r.launch.v.norm();

  const ZermeloData euclid(MetricField(), WindField::constant(Vec3(0, 0.25, 0)));
  const StrategicResult e = strategic_path_all_equal(euclid, FrontGeometry::point(Point3::Zero()), 1.0);
  const double euclid_err = (e.launch.v - Vec3(0, 1.25, 0)).norm();
  return {angle <= resolution && speed_gap <= 1e-2 * best && euclid_err <= 1e-12,
          "angle to brute force " + fmt(angle) + " <= " + fmt(resolution) + ", |V| gap " + fmt(speed_gap) +
              ", Euclidean error " + fmt(euclid_err)};
}

Outcome criterion9() {
  const ZermeloData data = fixtures::example1_data();
  const SpdMatrix3 h = data.metric().at(Point3::Zero());
  const Vec3 w = fixtures::example1_wind();
  double worst = 0.0;
  for (const Point3& q : {Point3(1, 2, 0), Point3(-0.5, -1, 1), Point3(0, 3, -2), Point3(0.7, 0, 0)}) {
    const StrategicResult r = strategic_path_to_point(data, FrontGeometry::point(Point3::Zero()), q);
    worst = std::max(worst, std::abs(h.norm(q - r.tau * w) - r.tau));
  }
  const StrategicResult b =
      strategic_path_to_region(ZermeloData(), FrontGeometry::point(Point3::Zero()), Region::ball(Point3(0, 0, 5), 1));
  const double qerr = (b.contact - Point3(0, 0, 4)).norm(), terr = std::abs(b.tau - 4.0);
  return {worst <= 1e-6 && qerr <= 1e-9 && terr <= 1e-9,
          "sphere residual " + fmt(worst) + ", ball q* error " + fmt(qerr) + ", tau* error " + fmt(terr)};
}

Outcome criterion10() {
  bool pass = true;
  std::string detail;
  for (const char* name : {"example1_case1", "example1_case2", "example1_case3"}) {
    const Scenario s = load_scenario(scenario_path(name));
    const RunReport r = run_scenario(s);
    std::size_t fronts = 0, closed = 0;
    for (const auto& f : r.fronts) {
      ++fronts;
      closed += !f.slice.empty() && f.slice[0].closed && f.slice[0].points.front() == f.slice[0].points.back();
    }
    bool nested = false, drift = false, straight = false;
    for (const auto& c : r.checks) {
      nested = nested || (c.kind == "nesting" && c.passed);
      drift = drift || (c.kind == "wind_drift" && c.passed);
      straight = straight || (c.kind == "straight_path" && c.passed);
    }
    std::string svg;
    try {
      svg = render_slice_svg(r, *r.slice_plane);
    } catch (const Error&) {
    }
    const bool ok = fronts == 10 && closed == 10 && nested && drift && straight && r.errors.empty() &&
                    svg.find("strategic-path") != std::string::npos;
    pass = pass && ok;
    detail += std::string(name) + (ok ? " ok" : " failed") + " (" + std::to_string(closed) + "/" +
              std::to_string(fronts) + " closed); ";
  }
  return {pass, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"metric reconstruction", criterion1},   {"Zermelo identity", criterion2},
      {"indicatrix translation", criterion3},  {"envelope equals ray shooting", criterion4},
      {"semigroup", criterion5},               {"geodesic integrity", criterion6},
      {"mode cross-check", criterion7},        {"strategy oracle", criterion8},
      {"target queries", criterion9},          {"figure-level properties", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
