#pragma once

#include "wildfront/contour.hpp"
#include "wildfront/front.hpp"
#include "wildfront/geodesics.hpp"
#include "wildfront/grid.hpp"
#include "wildfront/randers.hpp"

#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace wildfront {

struct PropagationSettings {
  FrontSampling sampling;
  Side side = Side::Outward;
  std::optional<RayMode> mode;  // selected automatically when empty
  double dt = 0.0;              // ray step; 0 selects horizon / 1000
  std::optional<Box> killing_region;
  std::size_t threads = 0;  // 0 uses all hardware threads
};

struct WavefrontSample {
  Point3 x = Point3::Zero();
  Point3 origin = Point3::Zero();
  Vec3 v0 = Vec3::Zero();     // launch velocity, F-unit at origin
  Vec3 v_end = Vec3::Zero();  // ray velocity at time tau
  std::size_t source = 0;     // index of the front sample the ray started from
  std::array<double, 2> params{0.0, 0.0};
};

struct Wavefront {
  double tau = 0.0;
  RayMode mode = RayMode::Constant;
  std::vector<WavefrontSample> samples;
  std::vector<GridTopology> patches;

  std::vector<Point3> positions() const;
};

// One ray to launch: where, with which F-unit velocity, and its parameters.
struct Launch {
  Point3 origin = Point3::Zero();
  Vec3 v = Vec3::Zero();
  std::size_t source = 0;
  std::array<double, 2> params{0.0, 0.0};
};

struct LaunchPlan {
  std::vector<Launch> launches;
  std::vector<GridTopology> patches;
};

// F-unit velocities V = W + u with u h-unit and h-orthogonal to the front's tangents
// at the parameter (every u for a point front).
std::vector<Vec3> launch_directions(const ZermeloData& data, const FrontGeometry& front,
                                    std::array<double, 2> params, const PropagationSettings& settings = {});
LaunchPlan plan_launches(const ZermeloData& data, const FrontGeometry& front,
                         const PropagationSettings& settings = {});

// Mode used for rays of duration tau from this front: settings.mode if set
// (Killing is verified), otherwise constant -> Killing -> general.
ModeSelection resolve_mode(const ZermeloData& data, const FrontGeometry& front, double tau,
                           const PropagationSettings& settings);

// Traces every launch for time T; samples every `record_stride` steps.
std::vector<Trajectory> trace_fan(const ZermeloData& data, std::span<const Launch> launches, double T,
                                  RayMode mode, const PropagationSettings& settings,
                                  std::size_t record_stride = 0);

Wavefront spherical_wavefront(const ZermeloData& data, const Point3& p, double tau, std::size_t n,
                              const PropagationSettings& settings = {});
Wavefront propagate_front(const ZermeloData& data, const FrontGeometry& front, double tau,
                          const PropagationSettings& settings = {});

// The wavefront as a sampled front: tangents span the h-orthogonal complement of
// v_end - W, which is also kept as the propagation direction.
FrontGeometry to_front(const Wavefront& front, const ZermeloData& data);

// Intersection of the sampled front with a plane, traced on the front's sample grid.
std::vector<Polyline> slice_wavefront(const Wavefront& front, const Plane& plane);

struct HuygensSettings {
  std::size_t seed_fan = 256;       // rays per seed in non-constant modes
  std::size_t time_samples = 40;    // samples per seed ray
  double search_radius = 0.0;       // 0 selects from grid spacing and fan density
  std::size_t threads = 0;
  std::optional<RayMode> mode;
  double dt = 0.0;
};

// Outer boundary of the union of radius-r spherical wavefronts seeded at the given points.
struct Envelope {
  double r = 0.0;
  double spacing = 0.0;
  std::vector<Polyline> contours;  // slice grids
  std::vector<Point3> points;      // contour vertices (slice) or iso-surface points (box)
  std::size_t covered_nodes = 0;
};

Envelope huygens_step(const ZermeloData& data, std::span<const Point3> seeds, double r, const SliceGrid& grid,
                      const HuygensSettings& settings = {});
Envelope huygens_step(const ZermeloData& data, std::span<const Point3> seeds, double r, const BoxGrid& grid,
                      const HuygensSettings& settings = {});

struct ArrivalSettings {
  PropagationSettings propagation;
  std::size_t time_samples = 100;  // samples per ray over the horizon
  double search_radius = 0.0;      // 0 selects from grid spacing and fan density
};

// Arrival time rho = d(A, x) at each grid node (+inf when not reached by the horizon).
struct ArrivalField {
  std::variant<SliceGrid, BoxGrid> grid;
  std::vector<Point3> nodes;
  std::vector<double> values;
  double horizon = 0.0;

  double spacing() const;
  // Level set rho = t on a slice grid.
  std::vector<Polyline> level_set(double t) const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
};

ArrivalField arrival_time_field(const ZermeloData& data, const FrontGeometry& front, const SliceGrid& grid,
                                double horizon, const ArrivalSettings& settings = {});
ArrivalField arrival_time_field(const ZermeloData& data, const FrontGeometry& front, const BoxGrid& grid,
                                double horizon, const ArrivalSettings& settings = {});

struct LipschitzReport {
  std::size_t edges_checked = 0;
  std::size_t violations = 0;
  double worst_excess = 0.0;  // max of rho(b) - rho(a) - F_a(b - a)
};

// Discrete 1-Lipschitz test along grid edges: rho(b) <= rho(a) + F_a(b - a) + tol.
LipschitzReport check_lipschitz(const ArrivalField& field, const ZermeloData& data, double tol);

}  // namespace wildfront
