#pragma once

#include "wildfront/fixtures.hpp"
#include "wildfront/propagation.hpp"
#include "wildfront/region.hpp"
#include "wildfront/strategy.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wildfront {

inline constexpr const char* kScenarioSchema = "wildfront.scenario.v1";

// A number given either literally or as an expression over the scenario
// parameters ("pi/6", "2*k"). `text` keeps the source form for round trips.
struct Number {
  std::string text;
  double value = 0.0;

  static Number of(double v);
  bool operator==(const Number&) const = default;
};

using Number3 = std::array<Number, 3>;

struct EllipsoidConfig {
  // Expressions in x, y, z and the scenario parameters.
  std::string a = "1", b = "1", c = "1", alpha = "0", beta = "0", theta = "0";
  bool operator==(const EllipsoidConfig&) const = default;
};

struct WindSegmentConfig {
  Number start, end;
  std::string type = "constant";  // constant | affine | expression | grid
  Number3 value;                  // constant value, or affine offset
  std::array<Number3, 3> matrix;  // affine: W = value + matrix * p
  std::array<std::string, 3> components{"0", "0", "0"};  // expression in x, y, z
  std::string file;                                      // grid
  std::string format = "text";                           // grid: text | binary
  bool operator==(const WindSegmentConfig&) const = default;
};

struct FrontConfig {
  std::string type = "point";  // point | curve | surface | sampled
  Number3 point;
  std::array<std::string, 3> components{"0", "0", "0"};  // in s (curve) or s1, s2 (surface)
  std::array<Number, 2> range1, range2;
  bool wrap1 = false;  // closed curve / periodic first surface parameter
  bool wrap2 = false;
  std::string side = "outward";
  std::string file;  // sampled: rows of x y z t1x t1y t1z t2x t2y t2z
  std::size_t rows = 0, cols = 0;
  bool wrap_rows = false, wrap_cols = false;
  bool operator==(const FrontConfig&) const = default;
};

struct SamplingConfig {
  std::size_t sphere_points = 33 * 64;
  std::size_t curve_samples = 256;
  std::size_t normal_samples = 17;
  std::size_t surface_s1 = 64;
  std::size_t surface_s2 = 32;
  double dt = 0.0;
  std::string mode = "auto";  // auto | constant | killing | general
  std::size_t threads = 0;
  bool operator==(const SamplingConfig&) const = default;
};

struct SliceConfig {
  int axis = 2;
  Number offset;
  std::array<Number, 2> lo, hi;
  std::array<std::size_t, 2> nodes{256, 256};
  bool operator==(const SliceConfig&) const = default;
};

struct DomainConfig {
  Number3 lo, hi;
  bool operator==(const DomainConfig&) const = default;
};

struct RegionConfig {
  std::string type = "ball";  // ball | half_space | implicit | triangles
  Number3 center;
  Number radius = Number::of(1.0);
  Number3 point;
  Number3 normal;
  std::string expression;
  std::string file;  // triangles: rows of 9 numbers
  bool operator==(const RegionConfig&) const = default;
};

struct StrategyConfig {
  std::string type = "all_equal";  // all_equal | point | region
  Number tau = Number::of(1.0);
  Number3 target;
  RegionConfig region;
  std::vector<Number> deploy;  // deployment times for strategic points
  bool operator==(const StrategyConfig&) const = default;
};

struct CheckConfig {
  // nesting | wind_drift | semigroup | envelope | f_speed | straight_path |
  // orthogonal_launch | lipschitz | indicatrix_equation
  std::string kind;
  std::optional<double> tolerance;
  std::optional<double> tau;
  bool operator==(const CheckConfig&) const = default;
};

struct OutputConfig {
  std::string directory = "out";
  std::string fronts_csv = "fronts.csv";
  std::string report_json = "report.json";
  std::string trajectories_csv = "trajectories.csv";
  std::string strategy_json = "strategy.json";
  std::string svg = "slice.svg";
  bool operator==(const OutputConfig&) const = default;
};

struct Scenario {
  std::string name = "scenario";
  std::string constants = "derived";
  std::map<std::string, double> parameters;
  EllipsoidConfig ellipsoid;
  std::vector<WindSegmentConfig> wind;
  FrontConfig front;
  std::vector<Number> times;
  SamplingConfig sampling;
  std::optional<SliceConfig> slice;
  std::optional<DomainConfig> domain;
  std::vector<StrategyConfig> strategies;
  std::vector<CheckConfig> checks;
  OutputConfig output;
  std::filesystem::path base_dir;  // for relative file references; not serialized

  bool operator==(const Scenario& o) const {
    return name == o.name && constants == o.constants && parameters == o.parameters && ellipsoid == o.ellipsoid &&
           wind == o.wind && front == o.front && times == o.times && sampling == o.sampling && slice == o.slice &&
           domain == o.domain && strategies == o.strategies && checks == o.checks && output == o.output;
  }
};

// Parses and validates a scenario. Malformed JSON raises ParseError with the
// 1-based line and column; semantic problems raise ValidationError naming the field.
Scenario parse_scenario(const std::string& text, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);
// Canonical JSON; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& s);
void validate_scenario(const Scenario& s);

// Builders from the configuration.
EllipsoidSpec build_ellipsoid(const Scenario& s);
std::vector<WindSegment> build_wind(const Scenario& s);
FrontGeometry build_front(const Scenario& s);
PropagationSettings build_propagation_settings(const Scenario& s);
std::optional<SliceGrid> build_slice(const Scenario& s);
Region build_region(const Scenario& s, const RegionConfig& r);
Box build_domain(const Scenario& s);

struct SegmentRecord {
  std::size_t index = 0;
  double start = 0.0, end = 0.0;
  RayMode mode = RayMode::Constant;
  std::optional<KillingReport> killing;
};

struct FrontRecord {
  double tau = 0.0;
  std::size_t segment = 0;
  RayMode mode = RayMode::Constant;
  Wavefront front;
  std::vector<Polyline> slice;
};

struct StrategyRecord {
  StrategyConfig config;
  std::optional<StrategicResult> result;
  std::vector<Point3> deploy_points;
  std::string error;
};

struct CheckOutcome {
  std::string kind;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct RunReport {
  std::string scenario;
  std::string constants;
  std::optional<Plane> slice_plane;
  double slice_spacing = 0.0;
  std::vector<SegmentRecord> segments;
  std::vector<FrontRecord> fronts;
  std::vector<StrategyRecord> strategies;
  std::vector<CheckOutcome> checks;
  std::vector<std::string> errors;
  double wall_seconds = 0.0;  // not written to the JSON report

  bool checks_passed() const;
};

struct RunOptions {
  bool run_checks = true;
};

RunReport run_scenario(const Scenario& s, const RunOptions& options = {});

}  // namespace wildfront
