#pragma once

#include "wildfront/propagation.hpp"
#include "wildfront/region.hpp"

#include <string>
#include <vector>

namespace wildfront {

struct StrategySettings {
  PropagationSettings propagation;
  double horizon = 20.0;         // longest time searched by target queries
  double tolerance = 1e-10;      // miss distance accepted by point queries (relative to |q|, min 1)
  std::size_t scan_samples = 200;  // samples per fan ray while scanning
  std::size_t candidates = 6;    // fan rays refined by point queries
  std::size_t runner_ups = 3;
  std::size_t max_iterations = 60;
};

struct RankedRay {
  Launch launch;
  double score = 0.0;  // displacement for all-equal queries, arrival time otherwise
};

struct StrategicResult {
  std::string query;  // "all_equal", "point" or "region"
  RayMode mode = RayMode::Constant;
  Launch launch;
  Trajectory ray;  // from the front to the contact point (or to tau)
  double tau = 0.0;
  Point3 contact = Point3::Zero();
  double miss = 0.0;
  std::vector<RankedRay> runner_ups;
};

// Fan ray of maximal spread: largest |V| for constant data, largest Euclidean
// displacement |gamma(tau) - gamma(0)| otherwise. Ties go to the smallest fan index.
StrategicResult strategic_path_all_equal(const ZermeloData& data, const FrontGeometry& front, double tau,
                                         const StrategySettings& settings = {});
// Earliest wave ray through q (fan scan, then Newton shooting on launch parameters and time).
StrategicResult strategic_path_to_point(const ZermeloData& data, const FrontGeometry& front, const Point3& q,
                                        const StrategySettings& settings = {});
// First contact of the front with the region (fan scan, bisection on hit times, then
// pattern search on launch parameters).
StrategicResult strategic_path_to_region(const ZermeloData& data, const FrontGeometry& front, const Region& region,
                                         const StrategySettings& settings = {});

// Positions along the strategic ray at the given deployment times.
std::vector<Point3> strategic_points(const StrategicResult& result, const std::vector<double>& times);

}  // namespace wildfront
