#pragma once

#include "wildfront/contour.hpp"
#include "wildfront/scenario.hpp"

#include <filesystem>
#include <string>

namespace wildfront {

inline constexpr const char* kSliceSchema = "wildfront.slice.v1";

// SVG of the fronts' intersections with the plane, one polyline per contour,
// with the strategic rays projected onto the plane.
std::string render_slice_svg(const RunReport& report, const Plane& plane);
void render_slice(const RunReport& report, const Plane& plane, const std::filesystem::path& out);

}  // namespace wildfront
