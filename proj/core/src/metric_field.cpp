#include "wildfront/metric_field.hpp"

#include <cmath>
#include <optional>

namespace wildfront {

struct MetricField::Impl {
  std::optional<SpdMatrix3> constant;
  Function fn;
};

MetricField::MetricField() : MetricField(constant(SpdMatrix3::identity())) {}

MetricField MetricField::constant(const SpdMatrix3& h) {
  auto impl = std::make_shared<Impl>();
  impl->constant = h;
  return MetricField(std::move(impl));
}

MetricField MetricField::from_function(Function f) {
  if (!f) throw Error(ErrorCode::InvalidArgument, "metric function is empty");
  auto impl = std::make_shared<Impl>();
  impl->fn = std::move(f);
  return MetricField(std::move(impl));
}

SpdMatrix3 MetricField::at(const Point3& p) const {
  if (impl_->constant) return *impl_->constant;
  return impl_->fn(p);
}

bool MetricField::is_constant() const noexcept { return impl_->constant.has_value(); }

Mat3 MetricField::partial(const Point3& p, int k, double step) const {
  if (is_constant()) return Mat3::Zero();
  Point3 a = p, b = p;
  a[k] += step;
  b[k] -= step;
  return (at(a).matrix() - at(b).matrix()) / (2.0 * step);
}

double fd_step(const Point3& p, double relative) {
  return relative * std::max(1.0, p.cwiseAbs().maxCoeff());
}

}  // namespace wildfront
