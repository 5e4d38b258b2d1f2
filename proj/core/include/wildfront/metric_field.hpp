#pragma once

#include "wildfront/linalg.hpp"

#include <functional>
#include <memory>

namespace wildfront {

// Riemannian metric field h: point -> SPD matrix. Immutable; copies share state.
class MetricField {
 public:
  using Function = std::function<SpdMatrix3(const Point3&)>;

  MetricField();  // Euclidean
  static MetricField constant(const SpdMatrix3& h);
  static MetricField from_function(Function f);

  SpdMatrix3 at(const Point3& p) const;
  bool is_constant() const noexcept;

  // Central-difference partial derivative dh/dx_k at p.
  Mat3 partial(const Point3& p, int k, double step = 1e-5) const;

 private:
  struct Impl;
  explicit MetricField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Finite-difference step used for spatial derivatives of fields near p.
double fd_step(const Point3& p, double relative = 1e-5);

}  // namespace wildfront
