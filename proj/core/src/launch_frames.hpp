#pragma once

#include "wildfront/front.hpp"

#include <vector>

namespace wildfront::detail {

// h-unit vectors h-orthogonal to the curve tangent s.t1, at the given angles
// from the outward direction (or from s.normal when present).
std::vector<Vec3> curve_normals(const SpdMatrix3& h, const FrontSample& s, const Vec3& outward,
                                const std::vector<double>& angles);
// h-unit normal of a surface sample, oriented by s.normal or the outward hint.
Vec3 surface_normal(const SpdMatrix3& h, const FrontSample& s, const Vec3& outward);

}  // namespace wildfront::detail
