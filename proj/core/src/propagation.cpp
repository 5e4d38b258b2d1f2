#include "wildfront/propagation.hpp"

#include "wildfront/indicatrix.hpp"
#include "launch_frames.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

namespace wildfront {

namespace detail {

// h-unit vectors u, h-orthogonal to the curve tangent, swept by angle from the outward direction.
std::vector<Vec3> curve_normals(const SpdMatrix3& h, const FrontSample& s, const Vec3& outward,
                                const std::vector<double>& angles) {
  const Vec3& T = s.t1;
  if (!(T.norm() > 0.0)) throw Error(ErrorCode::DegenerateTangent, "curve tangent vanishes");
  const Vec3 hT = h.matrix() * T;
  const Vec3 o = s.normal ? *s.normal : outward;
  Vec3 e1 = o - (o.dot(hT) / T.dot(hT)) * T;
  const double e1n = h.norm(e1);
  if (e1n > 1e-12 * std::max(h.norm(o), 1e-300) && std::isfinite(e1n)) {
    e1 /= e1n;
  } else {
    e1 = h_orthonormal_complement(h, T).first;
  }
  Vec3 e2 = h.inverse() * T.cross(e1);
  e2 /= h.norm(e2);
  std::vector<Vec3> out;
  out.reserve(angles.size());
  for (double a : angles) out.push_back(std::cos(a) * e1 + std::sin(a) * e2);
  return out;
}

// h-unit normal of a surface sample oriented by its stored direction or the outward hint.
Vec3 surface_normal(const SpdMatrix3& h, const FrontSample& s, const Vec3& outward) {
  if (s.normal) {
    const double n = h.norm(*s.normal);
    if (!(n > 0.0)) throw Error(ErrorCode::DegenerateTangent, "front normal vanishes");
    return *s.normal / n;
  }
  const Vec3 c = s.t1.cross(s.t2);
  if (!(c.norm() > 1e-12 * s.t1.norm() * s.t2.norm()) || !(c.norm() > 0.0))
    throw Error(ErrorCode::DegenerateTangent, "surface tangents are linearly dependent");
  Vec3 u = h.inverse() * c;
  u /= h.norm(u);
  if (h.inner(u, outward) < 0.0) u = -u;
  return u;
}

}  // namespace detail

namespace {

using detail::curve_normals;
using detail::surface_normal;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t steps_for(double T, double dt) {
  if (dt <= 0.0) return 1000;
  return static_cast<std::size_t>(std::max(1.0, std::ceil(T / dt - 1e-9)));
}

std::vector<double> normal_angles(Side side, std::size_t m) {
  const double pi = std::numbers::pi;
  m = std::max<std::size_t>(m, side == Side::Both ? 3 : 2);
  switch (side) {
    case Side::Outward: return parameter_samples(-0.5 * pi, 0.5 * pi, m, false);
    case Side::Inward: return parameter_samples(0.5 * pi, 1.5 * pi, m, false);
    case Side::Both: return parameter_samples(0.0, 2.0 * pi, m, true);
  }
  return {};
}

std::vector<Vec3> sample_normals(const SpdMatrix3& h, const FrontSample& s, int dimension, const Vec3& outward,
                                 const PropagationSettings& settings) {
  if (dimension == 1) return curve_normals(h, s, outward, normal_angles(settings.side, settings.sampling.normal_samples));
  const Vec3 u = surface_normal(h, s, outward);
  switch (settings.side) {
    case Side::Outward: return {u};
    case Side::Inward: return {-u};
    case Side::Both: return {u, -u};
  }
  return {u};
}

Box front_region(const ZermeloData& data, const SampledFront& sampled, double tau) {
  Point3 lo = sampled.samples.front().x, hi = lo;
  for (const auto& s : sampled.samples) {
    lo = lo.cwiseMin(s.x);
    hi = hi.cwiseMax(s.x);
  }
  const Box reach = reach_box(data, sampled.samples.front().x, std::max(tau, 1e-3));
  const Vec3 half = 0.5 * (reach.hi - reach.lo);
  return Box{lo - half, hi + half, 5};
}

}  // namespace

std::vector<Point3> Wavefront::positions() const {
  std::vector<Point3> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.x);
  return out;
}

std::vector<Vec3> launch_directions(const ZermeloData& data, const FrontGeometry& front,
                                    std::array<double, 2> params, const PropagationSettings& settings) {
  const FrontSample s = front.sample_at(params);
  const RandersEval e = data.at(s.x);
  std::vector<Vec3> out;
  if (front.dimension() == 0) {
    const Mat3 m = e.h().inverse_sqrt();
    for (const Vec3& d : SphereGrid::for_count(settings.sampling.sphere_points).directions())
      out.push_back(e.wind() + m * d);
    return out;
  }
  const Point3 centroid = front.sample(settings.sampling).centroid();
  for (const Vec3& u : sample_normals(e.h(), s, front.dimension(), front.outward_hint(s.x, centroid), settings))
    out.push_back(e.wind() + u);
  return out;
}

LaunchPlan plan_launches(const ZermeloData& data, const FrontGeometry& front, const PropagationSettings& settings) {
  LaunchPlan plan;
  const SampledFront sampled = front.sample(settings.sampling);
  if (front.dimension() == 0) {
    const Point3 p = sampled.samples.front().x;
    const RandersEval e = data.at(p);
    const Mat3 m = e.h().inverse_sqrt();
    const SphereGrid grid = SphereGrid::for_count(settings.sampling.sphere_points);
    for (std::size_t i = 0; i < grid.rows; ++i)
      for (std::size_t j = 0; j < grid.cols; ++j)
        plan.launches.push_back(Launch{p, e.wind() + m * grid.direction(i, j), 0, {grid.latitude(i), grid.longitude(j)}});
    plan.patches.push_back(GridTopology{0, grid.rows, grid.cols, false, true});
    return plan;
  }

  const Point3 centroid = sampled.centroid();
  const int dim = front.dimension();
  const auto angles = normal_angles(settings.side, settings.sampling.normal_samples);
  for (const GridTopology& patch : sampled.patches) {
    if (dim == 1) {
      // Each sample of a curve patch becomes a row; columns sweep the normal plane.
      const std::size_t offset = plan.launches.size();
      for (std::size_t k = 0; k < patch.size(); ++k) {
        const std::size_t idx = patch.offset + k;
        const FrontSample& s = sampled.samples[idx];
        const RandersEval e = data.at(s.x);
        const auto normals = curve_normals(e.h(), s, front.outward_hint(s.x, centroid), angles);
        for (std::size_t j = 0; j < normals.size(); ++j)
          plan.launches.push_back(Launch{s.x, e.wind() + normals[j], idx, {s.params[0], angles[j]}});
      }
      plan.patches.push_back(
          GridTopology{offset, patch.size(), angles.size(), patch.wrap_rows, settings.side == Side::Both});
      continue;
    }
    const int copies = settings.side == Side::Both ? 2 : 1;
    for (int copy = 0; copy < copies; ++copy) {
      const std::size_t offset = plan.launches.size();
      for (std::size_t k = 0; k < patch.size(); ++k) {
        const std::size_t idx = patch.offset + k;
        const FrontSample& s = sampled.samples[idx];
        const RandersEval e = data.at(s.x);
        Vec3 u = surface_normal(e.h(), s, front.outward_hint(s.x, centroid));
        if (settings.side == Side::Inward || copy == 1) u = -u;
        plan.launches.push_back(Launch{s.x, e.wind() + u, idx, s.params});
      }
      GridTopology t = patch;
      t.offset = offset;
      plan.patches.push_back(t);
    }
  }
  return plan;
}

ModeSelection resolve_mode(const ZermeloData& data, const FrontGeometry& front, double tau,
                           const PropagationSettings& settings) {
  ModeSelection sel;
  if (settings.mode && *settings.mode == RayMode::Constant) {
    if (!data.is_constant()) throw Error(ErrorCode::ModeMismatch, "constant mode needs a constant metric and wind");
    sel.mode = RayMode::Constant;
    return sel;
  }
  if (settings.mode && *settings.mode == RayMode::General) {
    sel.mode = RayMode::General;
    return sel;
  }
  if (!settings.mode && data.is_constant()) {
    sel.mode = RayMode::Constant;
    return sel;
  }
  const Box region = settings.killing_region ? *settings.killing_region
                                             : front_region(data, front.sample(settings.sampling), tau);
  sel = select_mode(data, region);
  if (settings.mode && *settings.mode == RayMode::Killing) {
    if (sel.mode == RayMode::Constant) return ModeSelection{RayMode::Killing, std::nullopt};
    if (sel.mode != RayMode::Killing)
      throw Error(ErrorCode::ModeMismatch, "wind is not a Killing field for h (residual " +
                                               format_number(sel.killing->max_residual) + ")");
  }
  return sel;
}

std::vector<Trajectory> trace_fan(const ZermeloData& data, std::span<const Launch> launches, double T, RayMode mode,
                                  const PropagationSettings& settings, std::size_t record_stride) {
  const std::size_t n = steps_for(T, settings.dt);
  std::vector<Trajectory> out(launches.size());
  detail::parallel_for(launches.size(), settings.threads, [&](std::size_t i) {
    GeodesicProblem pr;
    pr.mode = mode;
    pr.data = data;
    pr.p = launches[i].origin;
    pr.v = launches[i].v;
    pr.horizon = T;
    pr.dt = T / static_cast<double>(n);
    pr.record_stride = record_stride == 0 ? n : record_stride;
    pr.killing_verified = true;
    out[i] = trace_wave_ray(pr);
  });
  return out;
}

Wavefront propagate_front(const ZermeloData& data, const FrontGeometry& front, double tau,
                          const PropagationSettings& settings) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw Error(ErrorCode::InvalidArgument, "tau must be non-negative");
  const LaunchPlan plan = plan_launches(data, front, settings);
  Wavefront out;
  out.tau = tau;
  out.patches = plan.patches;
  out.samples.resize(plan.launches.size());
  auto fill = [&](std::size_t i, const Point3& x, const Vec3& v_end) {
    const Launch& l = plan.launches[i];
    out.samples[i] = WavefrontSample{x, l.origin, l.v, v_end, l.source, l.params};
  };
  if (tau == 0.0) {
    out.mode = data.is_constant() ? RayMode::Constant : RayMode::General;
    for (std::size_t i = 0; i < plan.launches.size(); ++i) fill(i, plan.launches[i].origin, plan.launches[i].v);
    return out;
  }
  out.mode = resolve_mode(data, front, tau, settings).mode;
  const auto rays = trace_fan(data, plan.launches, tau, out.mode, settings);
  for (std::size_t i = 0; i < rays.size(); ++i) fill(i, rays[i].end_point(), rays[i].v.back());
  return out;
}

Wavefront spherical_wavefront(const ZermeloData& data, const Point3& p, double tau, std::size_t n,
                              const PropagationSettings& settings) {
  if (!(tau > 0.0)) throw Error(ErrorCode::InvalidArgument, "tau must be positive");
  PropagationSettings s = settings;
  s.sampling.sphere_points = n;
  return propagate_front(data, FrontGeometry::point(p), tau, s);
}

FrontGeometry to_front(const Wavefront& front, const ZermeloData& data) {
  std::vector<FrontSample> samples;
  samples.reserve(front.samples.size());
  for (const auto& w : front.samples) {
    const RandersEval e = data.at(w.x);
    const Vec3 n = w.v_end - e.wind();
    const auto [t1, t2] = h_orthonormal_complement(e.h(), n);
    FrontSample s;
    s.x = w.x;
    s.t1 = t1;
    s.t2 = t2;
    s.normal = n;
    samples.push_back(s);
  }
  return FrontGeometry::sampled(std::move(samples), front.patches, 2);
}

std::vector<Polyline> slice_wavefront(const Wavefront& front, const Plane& plane) {
  const auto positions = front.positions();
  std::vector<double> values;
  values.reserve(positions.size());
  for (const Point3& p : positions) values.push_back(plane.signed_distance(p));
  std::vector<Polyline> out;
  for (const auto& patch : front.patches) {
    auto lines = marching_squares(values, positions, patch, 0.0);
    out.insert(out.end(), std::make_move_iterator(lines.begin()), std::make_move_iterator(lines.end()));
  }
  return out;
}

namespace {

template <class F>
void for_neighbors(const SliceGrid& g, std::size_t idx, F&& f) {
  const std::size_t r = idx / g.nu, c = idx % g.nu;
  if (c > 0) f(idx - 1);
  if (c + 1 < g.nu) f(idx + 1);
  if (r > 0) f(idx - g.nu);
  if (r + 1 < g.nv) f(idx + g.nu);
}

template <class F>
void for_neighbors(const BoxGrid& g, std::size_t idx, F&& f) {
  const std::size_t i = idx % g.nx, j = (idx / g.nx) % g.ny, k = idx / (g.nx * g.ny);
  const std::size_t sy = g.nx, sz = g.nx * g.ny;
  if (i > 0) f(idx - 1);
  if (i + 1 < g.nx) f(idx + 1);
  if (j > 0) f(idx - sy);
  if (j + 1 < g.ny) f(idx + sy);
  if (k > 0) f(idx - sz);
  if (k + 1 < g.nz) f(idx + sz);
}

// Forward edges only, so each grid edge appears once.
template <class F>
void for_forward_edges(const SliceGrid& g, F&& f) {
  for (std::size_t r = 0; r < g.nv; ++r)
    for (std::size_t c = 0; c < g.nu; ++c) {
      const std::size_t i = r * g.nu + c;
      if (c + 1 < g.nu) f(i, i + 1);
      if (r + 1 < g.nv) f(i, i + g.nu);
    }
}

template <class F>
void for_forward_edges(const BoxGrid& g, F&& f) {
  for (std::size_t k = 0; k < g.nz; ++k)
    for (std::size_t j = 0; j < g.ny; ++j)
      for (std::size_t i = 0; i < g.nx; ++i) {
        const std::size_t idx = g.index(i, j, k);
        if (i + 1 < g.nx) f(idx, idx + 1);
        if (j + 1 < g.ny) f(idx, idx + g.nx);
        if (k + 1 < g.nz) f(idx, idx + g.nx * g.ny);
      }
}

// Time-stamped points along traced rays.
struct TimedPoint {
  double t;
  Point3 y;
};

double max_semi_axis(const SpdMatrix3& h) { return std::sqrt(h.inverse().diagonal().maxCoeff()); }

// Largest distance between neighbouring ray end points and between consecutive samples on a ray.
double fan_gap(const std::vector<Trajectory>& rays, const std::vector<GridTopology>& patches) {
  double gap = 0.0;
  for (const auto& r : rays)
    for (std::size_t k = 1; k < r.size(); ++k) gap = std::max(gap, (r.x[k] - r.x[k - 1]).norm());
  for (const auto& p : patches) {
    for (std::size_t i = 0; i < p.rows; ++i)
      for (std::size_t j = 0; j < p.cols; ++j) {
        const Point3& a = rays[p.index(i, j)].end_point();
        if (j + 1 < p.cols || p.wrap_cols) gap = std::max(gap, (a - rays[p.index(i, (j + 1) % p.cols)].end_point()).norm());
        if (i + 1 < p.rows || p.wrap_rows) gap = std::max(gap, (a - rays[p.index((i + 1) % p.rows, j)].end_point()).norm());
      }
  }
  return gap;
}

// values[node] = min over samples near the node of t_k + F_{y_k}(node - y_k).
template <class Grid>
void rasterize_samples(const ZermeloData& data, const std::vector<TimedPoint>& samples, const Grid& grid,
                       const std::vector<Point3>& nodes, double radius, std::vector<double>& values) {
  const bool constant = data.is_constant();
  std::optional<RandersEval> fixed;
  if (constant && !samples.empty()) fixed.emplace(data.at(samples.front().y));
  for (const TimedPoint& s : samples) {
    const RandersEval e = constant ? *fixed : data.at(s.y);
    grid.for_nodes_near(s.y, radius, [&](std::size_t idx) {
      const double v = s.t + e.F(nodes[idx] - s.y);
      if (v < values[idx]) values[idx] = v;
    });
  }
}

template <class Grid>
Envelope huygens_impl(const ZermeloData& data, std::span<const Point3> seeds, double r, const Grid& grid,
                      const HuygensSettings& settings) {
  grid.validate();
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::InvalidArgument, "envelope radius must be positive");
  if (seeds.empty()) throw Error(ErrorCode::EmptyFan, "no seeds for the envelope");
  const std::vector<Point3> nodes = grid.nodes();
  const double spacing = grid.spacing();
  std::vector<double> values(nodes.size(), kInf);

  RayMode mode = RayMode::Constant;
  if (settings.mode) {
    mode = *settings.mode;
  } else if (!data.is_constant()) {
    Point3 lo = seeds.front(), hi = lo;
    for (const Point3& s : seeds) {
      lo = lo.cwiseMin(s);
      hi = hi.cwiseMax(s);
    }
    const Box reach = reach_box(data, seeds.front(), r);
    const Vec3 half = 0.5 * (reach.hi - reach.lo);
    mode = select_mode(data, Box{lo - half, hi + half, 5}).mode;
  }

  if (mode == RayMode::Constant) {
    if (!data.is_constant()) throw Error(ErrorCode::ModeMismatch, "constant mode needs a constant metric and wind");
    const RandersEval e = data.at(seeds.front());
    const double reach = (r + 2.0 * spacing) * (max_semi_axis(e.h()) + e.wind().norm()) + 2.0 * spacing;
    for (const Point3& p : seeds) {
      grid.for_nodes_near(p, reach, [&](std::size_t idx) {
        const double v = e.F(nodes[idx] - p);
        if (v < values[idx]) values[idx] = v;
      });
    }
  } else {
    PropagationSettings ps;
    ps.sampling.sphere_points = settings.seed_fan;
    ps.dt = settings.dt;
    ps.threads = settings.threads;
    const std::size_t n = steps_for(r, settings.dt);
    const std::size_t stride = std::max<std::size_t>(1, n / std::max<std::size_t>(1, settings.time_samples));
    for (const Point3& p : seeds) {
      const LaunchPlan plan = plan_launches(data, FrontGeometry::point(p), ps);
      const auto rays = trace_fan(data, plan.launches, r, mode, ps, stride);
      std::vector<TimedPoint> pts;
      for (const auto& ray : rays)
        for (std::size_t k = 0; k < ray.size(); ++k) pts.push_back({ray.t[k], ray.x[k]});
      const double radius =
          settings.search_radius > 0.0 ? settings.search_radius : std::max(2.0 * spacing, 1.5 * fan_gap(rays, plan.patches));
      rasterize_samples(data, pts, grid, nodes, radius, values);
    }
  }

  Envelope env;
  env.r = r;
  env.spacing = spacing;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (values[i] <= r) {
      ++env.covered_nodes;
      if (grid.on_border(i))
        throw Error(ErrorCode::GridTooCoarse, "envelope reaches the grid boundary; enlarge the grid");
    }
  }
  const double cap = r + std::max(r, spacing);
  for (double& v : values) v = std::min(v, cap);

  // Everything not connected to the boundary through uncovered nodes is inside.
  std::vector<char> exterior(nodes.size(), 0);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (grid.on_border(i)) {
      exterior[i] = 1;
      queue.push_back(i);
    }
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for_neighbors(grid, i, [&](std::size_t j) {
      if (!exterior[j] && values[j] > r) {
        exterior[j] = 1;
        queue.push_back(j);
      }
    });
  }
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!exterior[i] && values[i] > r) values[i] = 0.0;

  if constexpr (std::is_same_v<Grid, SliceGrid>) {
    env.contours = marching_squares(values, nodes, grid.topology(), r);
    for (std::size_t a = 0; a < env.contours.size(); ++a) {
      if (polyline_self_intersects(env.contours[a], grid.plane))
        throw Error(ErrorCode::GridTooCoarse, "extracted envelope self-intersects at grid scale");
      for (std::size_t b = a + 1; b < env.contours.size(); ++b)
        if (polylines_cross(env.contours[a], env.contours[b], grid.plane))
          throw Error(ErrorCode::GridTooCoarse, "extracted envelope contours cross at grid scale");
    }
    for (const auto& c : env.contours)
      env.points.insert(env.points.end(), c.points.begin(), c.points.end() - (c.closed ? 1 : 0));
  } else {
    for_forward_edges(grid, [&](std::size_t a, std::size_t b) {
      const double fa = values[a] - r, fb = values[b] - r;
      if ((fa <= 0.0) == (fb <= 0.0)) return;
      const double t = fa / (fa - fb);
      env.points.push_back(nodes[a] + t * (nodes[b] - nodes[a]));
    });
  }
  return env;
}

template <class Grid>
ArrivalField arrival_impl(const ZermeloData& data, const FrontGeometry& front, const Grid& grid, double horizon,
                          const ArrivalSettings& settings) {
  grid.validate();
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw Error(ErrorCode::InvalidArgument, "horizon must be positive");
  ArrivalField field;
  field.grid = grid;
  field.nodes = grid.nodes();
  field.values.assign(field.nodes.size(), kInf);
  field.horizon = horizon;

  const auto& ps = settings.propagation;
  const LaunchPlan plan = plan_launches(data, front, ps);
  if (plan.launches.empty()) throw Error(ErrorCode::EmptyFan, "front produced no rays");
  const RayMode mode = resolve_mode(data, front, horizon, ps).mode;
  const std::size_t n = steps_for(horizon, ps.dt);
  const std::size_t stride = std::max<std::size_t>(1, n / std::max<std::size_t>(1, settings.time_samples));
  const auto rays = trace_fan(data, plan.launches, horizon, mode, ps, stride);

  std::vector<TimedPoint> pts;
  for (const auto& ray : rays)
    for (std::size_t k = 0; k < ray.size(); ++k) pts.push_back({ray.t[k], ray.x[k]});
  const double radius = settings.search_radius > 0.0 ? settings.search_radius
                                                     : std::max(2.0 * grid.spacing(), 1.5 * fan_gap(rays, plan.patches));
  rasterize_samples(data, pts, grid, field.nodes, radius, field.values);
  for (double& v : field.values)
    if (v > horizon) v = kInf;
  return field;
}

}  // namespace

Envelope huygens_step(const ZermeloData& data, std::span<const Point3> seeds, double r, const SliceGrid& grid,
                      const HuygensSettings& settings) {
  return huygens_impl(data, seeds, r, grid, settings);
}

Envelope huygens_step(const ZermeloData& data, std::span<const Point3> seeds, double r, const BoxGrid& grid,
                      const HuygensSettings& settings) {
  return huygens_impl(data, seeds, r, grid, settings);
}

ArrivalField arrival_time_field(const ZermeloData& data, const FrontGeometry& front, const SliceGrid& grid,
                                double horizon, const ArrivalSettings& settings) {
  return arrival_impl(data, front, grid, horizon, settings);
}

ArrivalField arrival_time_field(const ZermeloData& data, const FrontGeometry& front, const BoxGrid& grid,
                                double horizon, const ArrivalSettings& settings) {
  return arrival_impl(data, front, grid, horizon, settings);
}

double ArrivalField::spacing() const {
  return std::visit([](const auto& g) { return g.spacing(); }, grid);
}

std::vector<Polyline> ArrivalField::level_set(double t) const {
  const auto* slice = std::get_if<SliceGrid>(&grid);
  if (!slice) throw Error(ErrorCode::InvalidArgument, "level sets are traced on slice grids only");
  std::vector<double> capped(values);
  const double cap = std::max(horizon, t) + 1.0;
  for (double& v : capped) v = std::min(v, cap);
  return marching_squares(capped, nodes, slice->topology(), t);
}

std::vector<std::pair<std::size_t, std::size_t>> ArrivalField::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::visit([&](const auto& g) { for_forward_edges(g, [&](std::size_t a, std::size_t b) { out.emplace_back(a, b); }); },
             grid);
  return out;
}

LipschitzReport check_lipschitz(const ArrivalField& field, const ZermeloData& data, double tol) {
  LipschitzReport rep;
  for (const auto& [a, b] : field.edges()) {
    const double ra = field.values[a], rb = field.values[b];
    if (!std::isfinite(ra) || !std::isfinite(rb)) continue;
    ++rep.edges_checked;
    const double e1 = rb - ra - data.at(field.nodes[a]).F(field.nodes[b] - field.nodes[a]);
    const double e2 = ra - rb - data.at(field.nodes[b]).F(field.nodes[a] - field.nodes[b]);
    const double excess = std::max(e1, e2);
    rep.worst_excess = std::max(rep.worst_excess, excess);
    if (excess > tol) ++rep.violations;
  }
  return rep;
}

}  // namespace wildfront
