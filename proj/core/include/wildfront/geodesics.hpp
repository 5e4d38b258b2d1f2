#pragma once

#include "wildfront/randers.hpp"

#include <array>
#include <optional>
#include <vector>

namespace wildfront {

// Sampled curve with velocities; position() and velocity() interpolate with
// cubic Hermite segments between samples.
struct Trajectory {
  std::vector<double> t;
  std::vector<Point3> x;
  std::vector<Vec3> v;

  std::size_t size() const noexcept { return t.size(); }
  bool empty() const noexcept { return t.empty(); }
  double start_time() const { return t.front(); }
  double end_time() const { return t.back(); }
  const Point3& origin() const { return x.front(); }
  const Point3& end_point() const { return x.back(); }

  // Throws OutOfHorizon outside [start_time, end_time].
  Point3 position(double time) const;
  Vec3 velocity(double time) const;
};

enum class RayMode { Constant, Killing, General };
const char* to_string(RayMode mode);

struct GeodesicProblem {
  RayMode mode = RayMode::General;
  ZermeloData data;
  Point3 p = Point3::Zero();
  Vec3 v = Vec3::UnitX();  // F-unit at p
  double horizon = 1.0;
  double dt = 0.0;  // 0 selects horizon / 1000
  std::size_t record_stride = 1;
  // Killing mode checks the wind on this box (default: a box around p sized by the
  // horizon) unless the caller has already verified it.
  std::optional<Box> killing_region;
  bool killing_verified = false;
};

// Gamma^i_jk = 1/2 h^il (d_j h_lk + d_k h_lj - d_l h_jk); symbols[i](j, k).
struct Christoffel {
  std::array<Mat3, 3> symbols{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};

  double operator()(int i, int j, int k) const { return symbols[static_cast<std::size_t>(i)](j, k); }
  // Gamma^i_jk u^j u^k.
  Vec3 contract(const Vec3& u) const;
};

Christoffel christoffel(const MetricField& metric, const Point3& p);

// Unit-speed h-geodesic from p with initial velocity u0 (|u0|_h = 1), RK4.
Trajectory integrate_h_geodesic(const MetricField& metric, const Point3& p, const Vec3& u0, double T,
                                double dt = 0.0, std::size_t record_stride = 1);

Trajectory trace_wave_ray(const GeodesicProblem& problem);

struct ModeSelection {
  RayMode mode = RayMode::General;
  std::optional<KillingReport> killing;  // present when the Killing test ran
};

// Constant data -> Constant; wind Killing for h on the region -> Killing; else General.
ModeSelection select_mode(const ZermeloData& data, const Box& region, double killing_rel_tol = 1e-6);

// Box centred at p large enough to hold rays of duration T.
Box reach_box(const ZermeloData& data, const Point3& p, double T);

}  // namespace wildfront
