#include "wildfront/front.hpp"

#include <cmath>

namespace wildfront {

const char* to_string(FrontKind kind) {
  switch (kind) {
    case FrontKind::Point: return "point";
    case FrontKind::Curve: return "curve";
    case FrontKind::Surface: return "surface";
    case FrontKind::Sampled: return "sampled";
  }
  return "point";
}

const char* to_string(Side side) {
  switch (side) {
    case Side::Outward: return "outward";
    case Side::Inward: return "inward";
    case Side::Both: return "both";
  }
  return "outward";
}

Side side_from_string(const std::string& text) {
  if (text == "outward") return Side::Outward;
  if (text == "inward") return Side::Inward;
  if (text == "both") return Side::Both;
  throw Error(ErrorCode::ValidationError, "unknown front side '" + text + "'");
}

std::vector<Point3> SampledFront::positions() const {
  std::vector<Point3> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.x);
  return out;
}

Point3 SampledFront::centroid() const {
  Point3 c = Point3::Zero();
  if (samples.empty()) return c;
  for (const auto& s : samples) c += s.x;
  return c / static_cast<double>(samples.size());
}

std::vector<double> parameter_samples(double a, double b, std::size_t n, bool periodic) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "sample count must be positive");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = periodic ? a : 0.5 * (a + b);
    return out;
  }
  const double denom = static_cast<double>(periodic ? n : n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / denom;
  return out;
}

struct FrontGeometry::Impl {
  FrontKind kind = FrontKind::Point;
  Point3 point = Point3::Zero();
  CurveFn curve;
  CurveDerivative curve_d;
  SurfaceFn surface;
  SurfaceDerivative surface_d;
  std::array<double, 2> r1{0.0, 0.0};
  std::array<double, 2> r2{0.0, 0.0};
  bool wrap1 = false;
  bool wrap2 = false;
  std::vector<FrontSample> samples;
  std::vector<GridTopology> patches;
  int sampled_dimension = 0;
  std::optional<NormalField> outward;
};

FrontGeometry::FrontGeometry() : impl_(std::make_shared<const Impl>()) {}

FrontGeometry FrontGeometry::point(const Point3& p) {
  if (!p.allFinite()) throw Error(ErrorCode::InvalidArgument, "point front must be finite");
  auto impl = std::make_shared<Impl>();
  impl->point = p;
  return FrontGeometry(std::move(impl));
}

namespace {
void check_range(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(b > a))
    throw Error(ErrorCode::ValidationError, "parameter range must be finite with start < end");
}
}  // namespace

FrontGeometry FrontGeometry::curve(CurveFn c, CurveDerivative dc, double s0, double s1, bool closed) {
  check_range(s0, s1);
  if (!c || !dc) throw Error(ErrorCode::InvalidArgument, "curve front needs a map and its derivative");
  auto impl = std::make_shared<Impl>();
  impl->kind = FrontKind::Curve;
  impl->curve = std::move(c);
  impl->curve_d = std::move(dc);
  impl->r1 = {s0, s1};
  impl->wrap1 = closed;
  return FrontGeometry(std::move(impl));
}

FrontGeometry FrontGeometry::curve(const std::array<Expression, 3>& c, double s0, double s1, bool closed) {
  auto f = [c](double s) {
    const double v[1] = {s};
    return Point3(c[0].eval(v), c[1].eval(v), c[2].eval(v));
  };
  auto df = [c](double s) {
    const double v[1] = {s};
    return Vec3(c[0].eval_with_derivative(v, 0).second, c[1].eval_with_derivative(v, 0).second,
                c[2].eval_with_derivative(v, 0).second);
  };
  return curve(f, df, s0, s1, closed);
}

FrontGeometry FrontGeometry::surface(SurfaceFn f, SurfaceDerivative df, std::array<double, 2> range1,
                                     std::array<double, 2> range2, bool wrap1, bool wrap2) {
  check_range(range1[0], range1[1]);
  check_range(range2[0], range2[1]);
  if (!f || !df) throw Error(ErrorCode::InvalidArgument, "surface front needs a map and its derivatives");
  auto impl = std::make_shared<Impl>();
  impl->kind = FrontKind::Surface;
  impl->surface = std::move(f);
  impl->surface_d = std::move(df);
  impl->r1 = range1;
  impl->r2 = range2;
  impl->wrap1 = wrap1;
  impl->wrap2 = wrap2;
  return FrontGeometry(std::move(impl));
}

FrontGeometry FrontGeometry::surface(const std::array<Expression, 3>& f, std::array<double, 2> range1,
                                     std::array<double, 2> range2, bool wrap1, bool wrap2) {
  auto map = [f](double a, double b) {
    const double v[2] = {a, b};
    return Point3(f[0].eval(v), f[1].eval(v), f[2].eval(v));
  };
  auto dmap = [f](double a, double b) {
    const double v[2] = {a, b};
    Vec3 d1, d2;
    for (int k = 0; k < 3; ++k) {
      d1[k] = f[static_cast<std::size_t>(k)].eval_with_derivative(v, 0).second;
      d2[k] = f[static_cast<std::size_t>(k)].eval_with_derivative(v, 1).second;
    }
    return std::make_pair(d1, d2);
  };
  return surface(map, dmap, range1, range2, wrap1, wrap2);
}

FrontGeometry FrontGeometry::sampled(std::vector<FrontSample> samples, std::vector<GridTopology> patches,
                                     int dimension) {
  if (dimension != 1 && dimension != 2)
    throw Error(ErrorCode::ValidationError, "sampled fronts must be curve-like (1) or surface-like (2)");
  if (samples.empty()) throw Error(ErrorCode::ValidationError, "sampled front has no samples");
  if (patches.empty()) patches.push_back(GridTopology{0, samples.size(), 1, false, false});
  for (const auto& p : patches)
    if (p.offset + p.size() > samples.size())
      throw Error(ErrorCode::ValidationError, "sampled front patch exceeds the sample list");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    auto& s = samples[i];
    if (!s.x.allFinite() || !s.t1.allFinite() || !s.t2.allFinite())
      throw Error(ErrorCode::ValidationError, "sampled front has non-finite data");
    s.params = {static_cast<double>(i), 0.0};
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = FrontKind::Sampled;
  impl->samples = std::move(samples);
  impl->patches = std::move(patches);
  impl->sampled_dimension = dimension;
  return FrontGeometry(std::move(impl));
}

FrontGeometry FrontGeometry::with_outward(NormalField field) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->outward = std::move(field);
  return FrontGeometry(std::move(impl));
}

FrontKind FrontGeometry::kind() const noexcept { return impl_->kind; }

int FrontGeometry::dimension() const noexcept {
  switch (impl_->kind) {
    case FrontKind::Point: return 0;
    case FrontKind::Curve: return 1;
    case FrontKind::Surface: return 2;
    case FrontKind::Sampled: return impl_->sampled_dimension;
  }
  return 0;
}

std::array<double, 2> FrontGeometry::range1() const { return impl_->r1; }
std::array<double, 2> FrontGeometry::range2() const { return impl_->r2; }
bool FrontGeometry::wraps1() const noexcept { return impl_->wrap1; }
bool FrontGeometry::wraps2() const noexcept { return impl_->wrap2; }

FrontSample FrontGeometry::sample_at(std::array<double, 2> params) const {
  FrontSample s;
  s.params = params;
  switch (impl_->kind) {
    case FrontKind::Point:
      s.x = impl_->point;
      break;
    case FrontKind::Curve:
      s.x = impl_->curve(params[0]);
      s.t1 = impl_->curve_d(params[0]);
      break;
    case FrontKind::Surface: {
      s.x = impl_->surface(params[0], params[1]);
      const auto [d1, d2] = impl_->surface_d(params[0], params[1]);
      s.t1 = d1;
      s.t2 = d2;
      break;
    }
    case FrontKind::Sampled: {
      const double i = params[0];
      if (!(i >= 0.0) || i >= static_cast<double>(impl_->samples.size()) || i != std::floor(i))
        throw Error(ErrorCode::InvalidArgument, "sample index out of range");
      s = impl_->samples[static_cast<std::size_t>(i)];
      break;
    }
  }
  if (!s.x.allFinite() || !s.t1.allFinite() || !s.t2.allFinite())
    throw Error(ErrorCode::InvalidArgument, "front parametrization is not finite at the parameter");
  return s;
}

SampledFront FrontGeometry::sample(const FrontSampling& sampling) const {
  SampledFront out;
  out.dimension = dimension();
  switch (impl_->kind) {
    case FrontKind::Point:
      out.samples.push_back(sample_at({0.0, 0.0}));
      out.patches.push_back(GridTopology{0, 1, 1, false, false});
      break;
    case FrontKind::Curve: {
      const auto s = parameter_samples(impl_->r1[0], impl_->r1[1], sampling.curve_samples, impl_->wrap1);
      for (double v : s) out.samples.push_back(sample_at({v, 0.0}));
      out.patches.push_back(GridTopology{0, s.size(), 1, impl_->wrap1, false});
      break;
    }
    case FrontKind::Surface: {
      const auto a = parameter_samples(impl_->r1[0], impl_->r1[1], sampling.surface_s1, impl_->wrap1);
      const auto b = parameter_samples(impl_->r2[0], impl_->r2[1], sampling.surface_s2, impl_->wrap2);
      for (double u : a)
        for (double v : b) out.samples.push_back(sample_at({u, v}));
      out.patches.push_back(GridTopology{0, a.size(), b.size(), impl_->wrap1, impl_->wrap2});
      break;
    }
    case FrontKind::Sampled:
      out.samples = impl_->samples;
      out.patches = impl_->patches;
      break;
  }
  return out;
}

Vec3 FrontGeometry::outward_hint(const Point3& x, const Point3& centroid) const {
  if (impl_->outward) return (*impl_->outward)(x);
  return x - centroid;
}

}  // namespace wildfront
