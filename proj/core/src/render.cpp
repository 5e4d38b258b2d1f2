#include "wildfront/render.hpp"

#include "wildfront/propagation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace wildfront {

namespace {

constexpr double kWidth = 800.0;
constexpr double kMargin = 24.0;

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// Orange for early fronts to dark red for late ones.
std::string front_colour(std::size_t i, std::size_t n) {
  const double f = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 1.0;
  const int r = static_cast<int>(std::lround(245 - 110 * f));
  const int g = static_cast<int>(std::lround(160 - 150 * f));
  const int b = static_cast<int>(std::lround(40 - 20 * f));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string render_slice_svg(const RunReport& report, const Plane& plane) {
  if (report.fronts.empty()) throw Error(ErrorCode::EmptyIntersection, "report has no fronts");

  std::vector<std::pair<double, std::vector<Polyline>>> contours;
  for (const auto& f : report.fronts) {
    std::vector<Polyline> lines;
    if (report.slice_plane && report.slice_plane->origin.isApprox(plane.origin) &&
        report.slice_plane->normal.isApprox(plane.normal))
      lines = f.slice;
    else if (!f.front.samples.empty())
      lines = slice_wavefront(f.front, plane);
    if (!lines.empty()) contours.emplace_back(f.tau, std::move(lines));
  }
  if (contours.empty()) throw Error(ErrorCode::EmptyIntersection, "no front meets the plane");

  Vec2 lo = Vec2::Constant(std::numeric_limits<double>::infinity());
  Vec2 hi = -lo;
  auto grow = [&](const Point3& p) {
    const Vec2 q = plane.project(p);
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
  };
  for (const auto& [tau, lines] : contours)
    for (const auto& l : lines)
      for (const auto& p : l.points) grow(p);
  for (const auto& s : report.strategies)
    if (s.result)
      for (const auto& p : s.result->ray.x) grow(p);

  const double span = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-9});
  const double scale = (kWidth - 2 * kMargin) / span;
  const double height = (hi.y() - lo.y()) * scale + 2 * kMargin;
  auto px = [&](const Point3& p) {
    const Vec2 q = plane.project(p);
    return fixed(kMargin + (q.x() - lo.x()) * scale) + "," + fixed(height - kMargin - (q.y() - lo.y()) * scale);
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<!-- schema: " << kSliceSchema << " -->\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(kWidth) << "\" height=\"" << fixed(height)
      << "\" viewBox=\"0 0 " << fixed(kWidth) << ' ' << fixed(height) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!report.scenario.empty()) svg << "<title>" << report.scenario << "</title>\n";
  for (std::size_t i = 0; i < contours.size(); ++i) {
    const auto& [tau, lines] = contours[i];
    svg << "<g class=\"front\" data-tau=\"" << format_number(tau) << "\" stroke=\"" << front_colour(i, contours.size())
        << "\" fill=\"none\" stroke-width=\"1.5\">\n";
    for (const auto& l : lines) {
      svg << (l.closed ? "<polygon" : "<polyline") << " points=\"";
      const std::size_t n = l.closed && l.points.size() > 1 ? l.points.size() - 1 : l.points.size();
      for (std::size_t k = 0; k < n; ++k) svg << (k ? " " : "") << px(l.points[k]);
      svg << "\"/>\n";
    }
    svg << "</g>\n";
  }
  for (const auto& s : report.strategies) {
    if (!s.result || s.result->ray.empty()) continue;
    svg << "<g class=\"strategic-path\" data-query=\"" << s.config.type
        << "\" stroke=\"#7b2cbf\" fill=\"none\" stroke-width=\"2\">\n<polyline points=\"";
    for (std::size_t k = 0; k < s.result->ray.size(); ++k) svg << (k ? " " : "") << px(s.result->ray.x[k]);
    svg << "\"/>\n";
    for (const auto& p : s.deploy_points) {
      const std::string xy = px(p);
      const auto comma = xy.find(',');
      svg << "<circle cx=\"" << xy.substr(0, comma) << "\" cy=\"" << xy.substr(comma + 1)
          << "\" r=\"4\" fill=\"#7b2cbf\"/>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void render_slice(const RunReport& report, const Plane& plane, const std::filesystem::path& out) {
  const std::string text = render_slice_svg(report, plane);
  std::ofstream file(out, std::ios::binary);
  file << text;
  file.close();
  if (!file) throw Error(ErrorCode::IoError, "cannot write " + out.string());
}

}  // namespace wildfront
