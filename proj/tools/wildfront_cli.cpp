#include "wildfront/render.hpp"
#include "wildfront/report.hpp"
#include "wildfront/scenario.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>

namespace {

struct Overrides {
  std::string out;
  std::optional<std::size_t> grid;
  std::optional<std::size_t> fan;
  std::optional<double> dt;
  std::optional<std::size_t> threads;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--out", o.out, "Output directory (defaults to the scenario's)");
  cmd->add_option("--grid", o.grid, "Slice grid nodes per direction")->check(CLI::Range(2, 8192));
  cmd->add_option("--fan", o.fan, "Rays per point front and samples per curve")->check(CLI::Range(8, 1000000));
  cmd->add_option("--dt", o.dt, "Ray integration step")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

void apply(const Overrides& o, wildfront::Scenario& s) {
  if (o.grid && s.slice) s.slice->nodes = {*o.grid, *o.grid};
  if (o.fan) {
    s.sampling.sphere_points = *o.fan;
    s.sampling.curve_samples = *o.fan;
  }
  if (o.dt) s.sampling.dt = *o.dt;
  if (o.threads) s.sampling.threads = *o.threads;
}

void print_checks(const wildfront::RunReport& r) {
  for (const auto& c : r.checks)
    std::printf("%-20s %s  value=%-14s tol=%-10s %s\n", c.kind.c_str(), c.passed ? "PASS" : "FAIL",
                wildfront::format_number(c.value).c_str(), wildfront::format_number(c.tolerance).c_str(),
                c.detail.c_str());
}

int run(const std::string& path, const Overrides& o, bool checks_only) {
  const auto start = std::chrono::steady_clock::now();
  wildfront::Scenario s = wildfront::load_scenario(path);
  apply(o, s);
  wildfront::validate_scenario(s);
  const wildfront::RunReport report = wildfront::run_scenario(s);
  for (const auto& e : report.errors) std::cerr << "error: " << e << "\n";
  if (!checks_only) {
    for (const auto& p : wildfront::write_outputs(report, s, o.out)) std::cout << "wrote " << p.string() << "\n";
  }
  for (const auto& seg : report.segments) {
    std::printf("segment %zu [%s, %s]: %s mode", seg.index, wildfront::format_number(seg.start).c_str(),
                wildfront::format_number(seg.end).c_str(), wildfront::to_string(seg.mode));
    if (seg.killing && !seg.killing->killing)
      std::printf(" (not Killing, residual %s)", wildfront::format_number(seg.killing->max_residual).c_str());
    std::printf("\n");
  }
  print_checks(report);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("wall time: %.3f s\n", seconds);
  if (!report.errors.empty()) return 2;
  return report.checks_passed() ? 0 : 1;
}

int render(const std::string& path, const std::string& out, const std::optional<std::string>& axis, double offset) {
  const wildfront::RunReport report = wildfront::load_report(path);
  wildfront::Plane plane;
  if (axis) {
    const int a = *axis == "x" ? 0 : *axis == "y" ? 1 : 2;
    plane = wildfront::Plane::axis(a, offset);
  } else if (report.slice_plane) {
    plane = *report.slice_plane;
  } else {
    plane = wildfront::Plane::axis(2, offset);
  }
  wildfront::render_slice(report, plane, out);
  std::cout << "wrote " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wildfire front propagation under wind"};
  app.require_subcommand(1);

  std::string scenario;
  Overrides run_opts, check_opts;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario and write its outputs");
  run_cmd->add_option("scenario", scenario, "Scenario JSON file")->required();
  add_overrides(run_cmd, run_opts);

  auto* check_cmd = app.add_subcommand("check", "Run a scenario's invariant checks");
  check_cmd->add_option("scenario", scenario, "Scenario JSON file")->required();
  add_overrides(check_cmd, check_opts);

  std::string report_path, svg_out = "slice.svg";
  std::optional<std::string> axis;
  double offset = 0.0;
  auto* render_cmd = app.add_subcommand("render", "Render a report's slice as SVG");
  render_cmd->add_option("report", report_path, "Report JSON file")->required();
  render_cmd->add_option("-o,--out", svg_out, "SVG file to write");
  render_cmd->add_option("--axis", axis, "Slice axis")->check(CLI::IsMember({"x", "y", "z"}));
  render_cmd->add_option("--offset", offset, "Slice offset along the axis");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run_cmd) return run(scenario, run_opts, false);
    if (*check_cmd) return run(scenario, check_opts, true);
    return render(report_path, svg_out, axis, offset);
  } catch (const wildfront::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const wildfront::Error& e) {
    std::cerr << wildfront::to_string(e.code()) << ": " << e.what() << "\n";
  }
  return 2;
}
