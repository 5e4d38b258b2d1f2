#pragma once

#include "wildfront/linalg.hpp"
#include "wildfront/metric_field.hpp"

#include <array>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace wildfront {

// Wind sampled on a rectilinear lattice. Trilinear interpolation inside,
// clamp-to-edge outside.
class WindGrid {
 public:
  WindGrid(std::vector<double> xs, std::vector<double> ys, std::vector<double> zs,
           std::vector<Vec3> values);

  // Rows of "x y z wx wy wz"; blank lines and '#' comments are ignored.
  static WindGrid load_text(const std::filesystem::path& path);
  // Packed little-endian float64 rows of (x, y, z, wx, wy, wz).
  static WindGrid load_binary(const std::filesystem::path& path);
  static WindGrid from_rows(std::span<const std::array<double, 6>> rows);

  Vec3 at(const Point3& p) const;

  const std::vector<double>& axis(int k) const { return axes_[static_cast<std::size_t>(k)]; }
  const std::vector<Vec3>& values() const { return values_; }

 private:
  std::array<std::vector<double>, 3> axes_;
  std::vector<Vec3> values_;  // x fastest
};

class WindField {
 public:
  enum class Kind { Constant, Analytic, Grid };
  using Function = std::function<Vec3(const Point3&)>;
  using FlowFunction = std::function<Point3(double, const Point3&)>;
  using DifferentialFunction = std::function<Vec3(double, const Point3&, const Vec3&)>;

  WindField();  // calm
  static WindField constant(const Vec3& w);
  // W(p) = offset + jacobian * p, with exact flow through the matrix exponential.
  static WindField affine(const Vec3& offset, const Mat3& jacobian);
  static WindField analytic(Function f, FlowFunction flow = {}, DifferentialFunction differential = {});
  static WindField grid(WindGrid g);

  Vec3 at(const Point3& p) const;
  Kind kind() const noexcept;
  bool is_constant() const noexcept;
  bool has_closed_form_flow() const noexcept;

  std::optional<Point3> closed_form_flow(double t, const Point3& p) const;
  std::optional<Vec3> closed_form_differential(double t, const Point3& p, const Vec3& u) const;
  std::optional<std::pair<Vec3, Mat3>> affine_coefficients() const;
  const WindGrid* grid_data() const noexcept;

  // J(k, i) = dW^k/dx_i by central differences (exact for affine fields).
  Mat3 jacobian(const Point3& p) const;

 private:
  struct Impl;
  explicit WindField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct FlowSettings {
  double max_step = 0.05;
  double tolerance = 1e-12;
  double horizon = 1e4;
};

// phi(t, p): the integral curve of W through p evaluated at time t.
Point3 flow(const WindField& field, double t, const Point3& p, const FlowSettings& settings = {});
// d(phi_t)_p u.
Vec3 flow_differential(const WindField& field, double t, const Point3& p, const Vec3& u,
                       const FlowSettings& settings = {});

// (L_W h)_ij = W^k d_k h_ij + h_kj d_i W^k + h_ik d_j W^k.
Mat3 lie_derivative_h(const WindField& field, const MetricField& metric, const Point3& p);

struct Box {
  Point3 lo = Point3::Constant(-1.0);
  Point3 hi = Point3::Constant(1.0);
  int samples = 5;  // per axis
};

struct KillingReport {
  bool killing = false;
  double max_residual = 0.0;  // max Frobenius norm of L_W h over the samples
  double threshold = 0.0;     // tolerance at the worst sample
  Point3 worst = Point3::Zero();
};

// Residual is tested per sample against rel_tol * |h(p)|_F.
KillingReport is_killing(const WindField& field, const MetricField& metric, const Box& region,
                         double rel_tol = 1e-6);

// Piecewise time-independent wind: W^i on [t_start, t_end].
struct WindSegment {
  double t_start = 0.0;
  double t_end = 0.0;
  WindField field;
};

// Segments must be sorted, non-empty, non-overlapping and contiguous from 0.
void validate_schedule(std::span<const WindSegment> segments);

}  // namespace wildfront
