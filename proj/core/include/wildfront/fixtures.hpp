#pragma once

#include "wildfront/front.hpp"
#include "wildfront/indicatrix.hpp"
#include "wildfront/randers.hpp"

#include <string>

// The two worked examples: a constant wind over a rotated ellipsoid, and a
// shear wind k(y, 0, 0) over an ellipsoid that turns with y. Where the printed
// constants and the derived ones disagree, both are available.
namespace wildfront::fixtures {

enum class Constants { Derived, Printed };
Constants constants_from_string(const std::string& text);
const char* to_string(Constants c);

// a = 1/2, b = 1, c = 2, alpha = pi/6; W = (0, 1/3, 1/6).
EllipsoidSpec example1_spec();
Vec3 example1_wind();
ZermeloData example1_data();
// [[4, 0, 0], [0, 13/16, -3 sqrt(3)/16], [0, -3 sqrt(3)/16, 7/16]]
Mat3 example1_metric();

// C(s) = (cos s (cos s + 6) / 4, 4 sin s (3 - sin s) / 13, 0), s in [0, 2 pi].
std::array<std::string, 3> example1_curve_text();
FrontGeometry example1_curve();
// S(s1, s2) = (C(s1)_x, C(s1)_y, s2), s1 in [0, 2 pi], s2 in [0, 2].
std::array<std::string, 3> example1_surface_text();
FrontGeometry example1_surface();

// uu u^2 + vv v^2 + ww w^2 + vw v w + u_ u + v_ v + w_ w = rhs
struct ImplicitQuadric {
  double uu, vv, ww, vw, u, v, w, rhs;
  double residual(const Point3& p) const;
};
// Unit Randers indicatrix of example 1 written out as a quadric in (u, v, w), scaled by 16.
ImplicitQuadric example1_indicatrix_equation(Constants c);

// First equation of the launch system along C, written out in coordinates:
// -v1 (sin 2s + 6 sin s) + (13/16 (v2 - 1/3) - 3 sqrt(3)/16 (v3 - 1/6)) k (3 cos s - sin 2s),
// with k = 4/13 (derived) or 1/13 (printed).
double example1_curve_orthogonality(double s, const Vec3& V, Constants c);

// a = 1, b = 1/2, c = 2, beta = y (derived), or the axes implied by the printed
// D = diag(1, 1/2, 2).
EllipsoidSpec example2_spec(Constants c = Constants::Derived);
Vec3 example2_diagonal(Constants c);
WindField example2_wind(double k);
ZermeloData example2_data(double k, Constants c = Constants::Derived);
constexpr double kExample2DefaultK = 0.1;
// Largest h(W, W) over |y| <= y_max for the derived example-2 data; the origin of
// each tangent space stays inside the indicatrix while this is below 1.
double example2_max_wind_norm_sq(double k, double y_max);

// h-geodesic of example 2 from p with initial velocity V - W(p), where
// c1 = v1 - k y. Derived: exact solution of x'' = -y' z', y'' = 0, z'' = x' y';
// printed: the form with t cos(v2) and the opposite z offset. v2 = 0 uses the
// straight-line form for both.
Point3 example2_closed_form(const Point3& p, const Vec3& V, double k, double t, Constants c);

}  // namespace wildfront::fixtures
