#include "wildfront/wind.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cstring>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace wildfront {

namespace {

std::size_t bracket(const std::vector<double>& axis, double x, double& frac) {
  if (axis.size() == 1) {
    frac = 0.0;
    return 0;
  }
  if (x <= axis.front()) {
    frac = 0.0;
    return 0;
  }
  if (x >= axis.back()) {
    frac = 1.0;
    return axis.size() - 2;
  }
  const auto it = std::upper_bound(axis.begin(), axis.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - axis.begin()) - 1;
  frac = (x - axis[i]) / (axis[i + 1] - axis[i]);
  return i;
}

}  // namespace

WindGrid::WindGrid(std::vector<double> xs, std::vector<double> ys, std::vector<double> zs,
                   std::vector<Vec3> values)
    : axes_{std::move(xs), std::move(ys), std::move(zs)}, values_(std::move(values)) {
  std::size_t n = 1;
  for (const auto& a : axes_) {
    if (a.empty()) throw Error(ErrorCode::ValidationError, "wind grid axis is empty");
    if (!std::is_sorted(a.begin(), a.end()) || std::adjacent_find(a.begin(), a.end()) != a.end())
      throw Error(ErrorCode::ValidationError, "wind grid axis must be strictly increasing");
    n *= a.size();
  }
  if (values_.size() != n)
    throw Error(ErrorCode::ValidationError, "wind grid has " + std::to_string(values_.size()) +
                                                " values, expected " + std::to_string(n));
}

WindGrid WindGrid::from_rows(std::span<const std::array<double, 6>> rows) {
  std::array<std::vector<double>, 3> axes;
  for (int k = 0; k < 3; ++k) {
    for (const auto& r : rows) axes[k].push_back(r[static_cast<std::size_t>(k)]);
    std::sort(axes[k].begin(), axes[k].end());
    axes[k].erase(std::unique(axes[k].begin(), axes[k].end()), axes[k].end());
  }
  const std::size_t nx = axes[0].size(), ny = axes[1].size(), nz = axes[2].size();
  if (rows.size() != nx * ny * nz)
    throw Error(ErrorCode::ValidationError, "wind grid rows do not form a complete lattice");
  std::vector<Vec3> values(rows.size());
  std::vector<char> seen(rows.size(), 0);
  auto index_of = [](const std::vector<double>& a, double v) {
    return static_cast<std::size_t>(std::lower_bound(a.begin(), a.end(), v) - a.begin());
  };
  for (const auto& r : rows) {
    const std::size_t i = index_of(axes[0], r[0]), j = index_of(axes[1], r[1]), k = index_of(axes[2], r[2]);
    const std::size_t idx = (k * ny + j) * nx + i;
    if (seen[idx]) throw Error(ErrorCode::ValidationError, "wind grid has a duplicate lattice point");
    seen[idx] = 1;
    values[idx] = Vec3(r[3], r[4], r[5]);
  }
  return WindGrid(std::move(axes[0]), std::move(axes[1]), std::move(axes[2]), std::move(values));
}

WindGrid WindGrid::load_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open wind grid " + path.string());
  std::vector<std::array<double, 6>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::array<double, 6> r{};
    if (!(ls >> r[0])) continue;
    for (std::size_t k = 1; k < 6; ++k) {
      if (!(ls >> r[k])) throw ParseError("wind grid row needs 6 numbers", lineno, 1);
    }
    rows.push_back(r);
  }
  return from_rows(rows);
}

WindGrid WindGrid::load_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open wind grid " + path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() % (6 * sizeof(double)) != 0)
    throw Error(ErrorCode::ValidationError, "binary wind grid size is not a multiple of 48 bytes");
  std::vector<std::array<double, 6>> rows(bytes.size() / (6 * sizeof(double)));
  std::memcpy(rows.data(), bytes.data(), bytes.size());
  return from_rows(rows);
}

Vec3 WindGrid::at(const Point3& p) const {
  double fx = 0, fy = 0, fz = 0;
  const std::size_t i = bracket(axes_[0], p.x(), fx);
  const std::size_t j = bracket(axes_[1], p.y(), fy);
  const std::size_t k = bracket(axes_[2], p.z(), fz);
  const std::size_t nx = axes_[0].size(), ny = axes_[1].size(), nz = axes_[2].size();
  auto v = [&](std::size_t a, std::size_t b, std::size_t c) -> const Vec3& {
    return values_[(std::min(c, nz - 1) * ny + std::min(b, ny - 1)) * nx + std::min(a, nx - 1)];
  };
  Vec3 out = Vec3::Zero();
  for (int dc = 0; dc < 2; ++dc)
    for (int db = 0; db < 2; ++db)
      for (int da = 0; da < 2; ++da) {
        const double w = (da ? fx : 1 - fx) * (db ? fy : 1 - fy) * (dc ? fz : 1 - fz);
        if (w != 0.0) out += w * v(i + da, j + db, k + dc);
      }
  return out;
}

struct WindField::Impl {
  Kind kind = Kind::Constant;
  Vec3 constant = Vec3::Zero();
  std::optional<std::pair<Vec3, Mat3>> affine;
  Function fn;
  FlowFunction flow;
  DifferentialFunction differential;
  std::optional<WindGrid> grid;
};

WindField::WindField() : WindField(constant(Vec3::Zero())) {}

WindField WindField::constant(const Vec3& w) {
  if (!w.allFinite()) throw Error(ErrorCode::InvalidArgument, "wind must be finite");
  auto impl = std::make_shared<Impl>();
  impl->constant = w;
  return WindField(std::move(impl));
}

WindField WindField::affine(const Vec3& offset, const Mat3& jacobian) {
  if (jacobian.isZero(0.0)) return constant(offset);
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Analytic;
  impl->affine = std::make_pair(offset, jacobian);
  impl->fn = [offset, jacobian](const Point3& p) -> Vec3 { return offset + jacobian * p; };
  // Augmented generator [[J, b], [0, 0]] so that exp(tA) [p; 1] = [phi(t, p); 1].
  Eigen::Matrix4d gen = Eigen::Matrix4d::Zero();
  gen.topLeftCorner<3, 3>() = jacobian;
  gen.topRightCorner<3, 1>() = offset;
  impl->flow = [gen](double t, const Point3& p) -> Point3 {
    const Eigen::Matrix4d e = (t * gen).exp();
    return e.topLeftCorner<3, 3>() * p + e.topRightCorner<3, 1>();
  };
  impl->differential = [jacobian](double t, const Point3&, const Vec3& u) -> Vec3 {
    const Mat3 e = (t * jacobian).exp();
    return e * u;
  };
  return WindField(std::move(impl));
}

WindField WindField::analytic(Function f, FlowFunction flow_fn, DifferentialFunction differential) {
  if (!f) throw Error(ErrorCode::InvalidArgument, "wind function is empty");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Analytic;
  impl->fn = std::move(f);
  impl->flow = std::move(flow_fn);
  impl->differential = std::move(differential);
  return WindField(std::move(impl));
}

WindField WindField::grid(WindGrid g) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Grid;
  impl->grid = std::move(g);
  return WindField(std::move(impl));
}

Vec3 WindField::at(const Point3& p) const {
  switch (impl_->kind) {
    case Kind::Constant: return impl_->constant;
    case Kind::Analytic: return impl_->fn(p);
    case Kind::Grid: return impl_->grid->at(p);
  }
  return Vec3::Zero();
}

WindField::Kind WindField::kind() const noexcept { return impl_->kind; }
bool WindField::is_constant() const noexcept { return impl_->kind == Kind::Constant; }
bool WindField::has_closed_form_flow() const noexcept {
  return impl_->kind == Kind::Constant || static_cast<bool>(impl_->flow);
}

std::optional<Point3> WindField::closed_form_flow(double t, const Point3& p) const {
  if (impl_->kind == Kind::Constant) return Point3(p + t * impl_->constant);
  if (impl_->flow) return impl_->flow(t, p);
  return std::nullopt;
}

std::optional<Vec3> WindField::closed_form_differential(double t, const Point3& p, const Vec3& u) const {
  if (impl_->kind == Kind::Constant) return u;
  if (impl_->differential) return impl_->differential(t, p, u);
  return std::nullopt;
}

std::optional<std::pair<Vec3, Mat3>> WindField::affine_coefficients() const {
  if (impl_->kind == Kind::Constant) return std::make_pair(impl_->constant, Mat3::Zero().eval());
  return impl_->affine;
}

const WindGrid* WindField::grid_data() const noexcept {
  return impl_->grid ? &*impl_->grid : nullptr;
}

Mat3 WindField::jacobian(const Point3& p) const {
  if (impl_->kind == Kind::Constant) return Mat3::Zero();
  if (impl_->affine) return impl_->affine->second;
  const double h = fd_step(p);
  Mat3 j;
  for (int i = 0; i < 3; ++i) {
    Point3 a = p, b = p;
    a[i] += h;
    b[i] -= h;
    j.col(i) = (at(a) - at(b)) / (2.0 * h);
  }
  return j;
}

namespace {

Point3 rk4_step(const WindField& f, const Point3& y, double h) {
  const Vec3 k1 = f.at(y);
  const Vec3 k2 = f.at(y + 0.5 * h * k1);
  const Vec3 k3 = f.at(y + 0.5 * h * k2);
  const Vec3 k4 = f.at(y + h * k3);
  return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// RK4 with step doubling; local error estimate |y2 - y1| / 15.
Point3 integrate_flow(const WindField& f, double t, const Point3& p, const FlowSettings& s) {
  const double dir = t < 0 ? -1.0 : 1.0;
  const double total = std::abs(t);
  double done = 0.0;
  double h = std::min(s.max_step, total);
  Point3 y = p;
  for (int iter = 0; done < total; ++iter) {
    if (iter > 10'000'000) throw Error(ErrorCode::StepFailure, "flow integration did not finish");
    h = std::min(h, total - done);
    const Point3 full = rk4_step(f, y, dir * h);
    const Point3 half = rk4_step(f, rk4_step(f, y, 0.5 * dir * h), 0.5 * dir * h);
    if (!half.allFinite()) throw Error(ErrorCode::StepFailure, "flow integration diverged");
    const double err = (half - full).norm() / 15.0;
    const double allowed = s.tolerance * std::max(1.0, half.norm());
    if (err <= allowed || h < 1e-14 * std::max(1.0, total)) {
      y = half + (half - full) / 15.0;
      done += h;
      const double grow = err > 0 ? 0.9 * std::pow(allowed / err, 0.2) : 2.0;
      h = std::min(s.max_step, h * std::clamp(grow, 0.2, 2.0));
    } else {
      h *= std::clamp(0.9 * std::pow(allowed / err, 0.2), 0.1, 0.5);
    }
  }
  return y;
}

}  // namespace

Point3 flow(const WindField& field, double t, const Point3& p, const FlowSettings& settings) {
  if (!(std::abs(t) <= settings.horizon))
    throw Error(ErrorCode::InvalidArgument, "flow time outside the configured horizon");
  if (t == 0.0) return p;
  if (auto closed = field.closed_form_flow(t, p)) {
    if (!closed->allFinite()) throw Error(ErrorCode::StepFailure, "closed-form flow is not finite");
    return *closed;
  }
  return integrate_flow(field, t, p, settings);
}

Vec3 flow_differential(const WindField& field, double t, const Point3& p, const Vec3& u,
                       const FlowSettings& settings) {
  if (t == 0.0) return u;
  if (auto closed = field.closed_form_differential(t, p, u)) return *closed;
  const double un = u.norm();
  if (un == 0.0) return Vec3::Zero();
  const double eps = fd_step(p, 1e-5) / un;
  const Point3 a = flow(field, t, p + eps * u, settings);
  const Point3 b = flow(field, t, p - eps * u, settings);
  return (a - b) / (2.0 * eps);
}

Mat3 lie_derivative_h(const WindField& field, const MetricField& metric, const Point3& p) {
  const Vec3 w = field.at(p);
  const Mat3 h = metric.at(p).matrix();
  const Mat3 j = field.jacobian(p);
  const double step = fd_step(p);
  Mat3 transport = Mat3::Zero();
  for (int k = 0; k < 3; ++k) {
    if (w[k] != 0.0) transport += w[k] * metric.partial(p, k, step);
  }
  return transport + j.transpose() * h + h * j;
}

KillingReport is_killing(const WindField& field, const MetricField& metric, const Box& region,
                         double rel_tol) {
  KillingReport report;
  report.killing = true;
  const int n = std::max(1, region.samples);
  double worst_ratio = -1.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const Vec3 f(n == 1 ? 0.5 : double(a) / (n - 1), n == 1 ? 0.5 : double(b) / (n - 1),
                     n == 1 ? 0.5 : double(c) / (n - 1));
        const Point3 p = region.lo + (region.hi - region.lo).cwiseProduct(f);
        const double residual = lie_derivative_h(field, metric, p).norm();
        const double threshold = rel_tol * metric.at(p).matrix().norm();
        const double ratio = residual / threshold;
        if (residual > report.max_residual) report.max_residual = residual;
        if (ratio > worst_ratio) {
          worst_ratio = ratio;
          report.worst = p;
          report.threshold = threshold;
        }
        if (residual > threshold) report.killing = false;
      }
  return report;
}

void validate_schedule(std::span<const WindSegment> segments) {
  if (segments.empty()) throw Error(ErrorCode::ValidationError, "wind schedule is empty");
  double expected = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    if (!(s.t_end > s.t_start))
      throw Error(ErrorCode::ValidationError,
                  "wind segment " + std::to_string(i) + " has t_end <= t_start");
    if (s.t_start < expected - 1e-12)
      throw Error(ErrorCode::ValidationError,
                  "wind segments " + std::to_string(i - 1) + " and " + std::to_string(i) + " overlap");
    if (s.t_start > expected + 1e-12)
      throw Error(ErrorCode::ValidationError,
                  "wind segments leave a gap before segment " + std::to_string(i));
    expected = s.t_end;
  }
}

}  // namespace wildfront
