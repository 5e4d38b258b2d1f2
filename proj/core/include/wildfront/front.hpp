#pragma once

#include "wildfront/contour.hpp"
#include "wildfront/expression.hpp"
#include "wildfront/linalg.hpp"

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace wildfront {

enum class FrontKind { Point, Curve, Surface, Sampled };
// Which of the two sides of a curve or surface burns. Point fronts ignore it.
enum class Side { Outward, Inward, Both };

const char* to_string(FrontKind kind);
const char* to_string(Side side);
Side side_from_string(const std::string& text);

struct FrontSample {
  Point3 x = Point3::Zero();
  Vec3 t1 = Vec3::Zero();  // zero for point fronts
  Vec3 t2 = Vec3::Zero();  // zero for curves
  // Known propagation direction (an h-normal of the front), e.g. V - W of the ray
  // that produced this sample. Overrides the tangent-based normal and its sign.
  std::optional<Vec3> normal;
  std::array<double, 2> params{0.0, 0.0};
};

struct FrontSampling {
  std::size_t sphere_points = 33 * 64;  // point fronts, via SphereGrid::for_count
  std::size_t curve_samples = 256;
  std::size_t normal_samples = 17;  // directions per curve sample in the normal plane
  std::size_t surface_s1 = 64;
  std::size_t surface_s2 = 32;
};

struct SampledFront {
  std::vector<FrontSample> samples;
  std::vector<GridTopology> patches;
  int dimension = 0;

  std::vector<Point3> positions() const;
  Point3 centroid() const;
};

// Initial front A: a point, a parametric curve s -> C(s), a parametric surface
// (s1, s2) -> S(s1, s2), or a sampled front with tangent frames.
class FrontGeometry {
 public:
  using CurveFn = std::function<Point3(double)>;
  using CurveDerivative = std::function<Vec3(double)>;
  using SurfaceFn = std::function<Point3(double, double)>;
  using SurfaceDerivative = std::function<std::pair<Vec3, Vec3>(double, double)>;
  using NormalField = std::function<Vec3(const Point3&)>;

  FrontGeometry();  // the origin as a point front

  static FrontGeometry point(const Point3& p);
  static FrontGeometry curve(CurveFn c, CurveDerivative dc, double s0, double s1, bool closed);
  // Components are expressions in the variable s; tangents are exact.
  static FrontGeometry curve(const std::array<Expression, 3>& c, double s0, double s1, bool closed);
  static FrontGeometry surface(SurfaceFn f, SurfaceDerivative df, std::array<double, 2> range1,
                               std::array<double, 2> range2, bool wrap1, bool wrap2);
  // Components are expressions in s1 and s2.
  static FrontGeometry surface(const std::array<Expression, 3>& f, std::array<double, 2> range1,
                               std::array<double, 2> range2, bool wrap1, bool wrap2);
  // Each patch is a structured grid of samples; dimension 1 (curve-like, one
  // tangent per sample) or 2 (surface-like).
  static FrontGeometry sampled(std::vector<FrontSample> samples, std::vector<GridTopology> patches,
                               int dimension);

  // Outward normal hint used to choose the burning side; default points away
  // from the centroid of the sampled front.
  FrontGeometry with_outward(NormalField field) const;

  FrontKind kind() const noexcept;
  int dimension() const noexcept;
  std::array<double, 2> range1() const;
  std::array<double, 2> range2() const;
  bool wraps1() const noexcept;
  bool wraps2() const noexcept;

  // Position and tangents at a parameter; for sampled fronts params[0] is the sample index.
  FrontSample sample_at(std::array<double, 2> params) const;
  SampledFront sample(const FrontSampling& sampling) const;
  Vec3 outward_hint(const Point3& x, const Point3& centroid) const;

 private:
  struct Impl;
  explicit FrontGeometry(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Evenly spaced parameters over [a, b]; the end point is dropped for periodic ranges.
std::vector<double> parameter_samples(double a, double b, std::size_t n, bool periodic);

}  // namespace wildfront
