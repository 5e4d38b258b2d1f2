#pragma once

#include "wildfront/contour.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace wildfront {

// Node lattice on a rectangle [lo, hi] of a plane, nu x nv nodes (row = v index).
struct SliceGrid {
  Plane plane = Plane::axis(2, 0.0);
  Vec2 lo = Vec2(-1, -1);
  Vec2 hi = Vec2(1, 1);
  std::size_t nu = 256;
  std::size_t nv = 256;

  void validate() const;
  std::size_t size() const noexcept { return nu * nv; }
  double du() const { return (hi.x() - lo.x()) / static_cast<double>(nu - 1); }
  double dv() const { return (hi.y() - lo.y()) / static_cast<double>(nv - 1); }
  double spacing() const { return std::max(du(), dv()); }
  Point3 node(std::size_t row, std::size_t col) const {
    return plane.lift(Vec2(lo.x() + static_cast<double>(col) * du(), lo.y() + static_cast<double>(row) * dv()));
  }
  std::vector<Point3> nodes() const;
  GridTopology topology() const { return GridTopology{0, nv, nu, false, false}; }
  bool on_border(std::size_t index) const {
    const std::size_t r = index / nu, c = index % nu;
    return r == 0 || c == 0 || r + 1 == nv || c + 1 == nu;
  }
  // Calls f(index) for nodes within `radius` (box metric) of p.
  template <class F>
  void for_nodes_near(const Point3& p, double radius, F&& f) const {
    if (std::abs(plane.signed_distance(p)) > radius) return;
    const Vec2 q = plane.project(p);
    const auto range = [](double c, double r, double lo, double d, std::size_t n) {
      const double a = std::ceil((c - r - lo) / d), b = std::floor((c + r - lo) / d);
      const double hi = static_cast<double>(n - 1);
      return std::pair<long, long>(static_cast<long>(std::clamp(a, 0.0, hi + 1)),
                                   static_cast<long>(std::clamp(b, -1.0, hi)));
    };
    const auto [c0, c1] = range(q.x(), radius, lo.x(), du(), nu);
    const auto [r0, r1] = range(q.y(), radius, lo.y(), dv(), nv);
    for (long r = r0; r <= r1; ++r)
      for (long c = c0; c <= c1; ++c) f(static_cast<std::size_t>(r) * nu + static_cast<std::size_t>(c));
  }
};

// Axis-aligned 3-D node lattice, x fastest.
struct BoxGrid {
  Point3 lo = Point3::Constant(-1);
  Point3 hi = Point3::Constant(1);
  std::size_t nx = 64;
  std::size_t ny = 64;
  std::size_t nz = 64;

  void validate() const;
  std::size_t size() const noexcept { return nx * ny * nz; }
  Vec3 step() const {
    return Vec3((hi.x() - lo.x()) / static_cast<double>(nx - 1), (hi.y() - lo.y()) / static_cast<double>(ny - 1),
                (hi.z() - lo.z()) / static_cast<double>(nz - 1));
  }
  double spacing() const { return step().maxCoeff(); }
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return (k * ny + j) * nx + i; }
  Point3 node(std::size_t i, std::size_t j, std::size_t k) const {
    return lo + step().cwiseProduct(Vec3(static_cast<double>(i), static_cast<double>(j), static_cast<double>(k)));
  }
  std::vector<Point3> nodes() const;
  bool on_border(std::size_t index) const {
    const std::size_t i = index % nx, j = (index / nx) % ny, k = index / (nx * ny);
    return i == 0 || j == 0 || k == 0 || i + 1 == nx || j + 1 == ny || k + 1 == nz;
  }
  template <class F>
  void for_nodes_near(const Point3& p, double radius, F&& f) const {
    const Vec3 d = step();
    long lo_i[3], hi_i[3];
    const std::size_t n[3] = {nx, ny, nz};
    for (int a = 0; a < 3; ++a) {
      const double top = static_cast<double>(n[a] - 1);
      lo_i[a] = static_cast<long>(std::clamp(std::ceil((p[a] - radius - lo[a]) / d[a]), 0.0, top + 1));
      hi_i[a] = static_cast<long>(std::clamp(std::floor((p[a] + radius - lo[a]) / d[a]), -1.0, top));
    }
    for (long k = lo_i[2]; k <= hi_i[2]; ++k)
      for (long j = lo_i[1]; j <= hi_i[1]; ++j)
        for (long i = lo_i[0]; i <= hi_i[0]; ++i)
          f(index(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(k)));
  }
};

}  // namespace wildfront
