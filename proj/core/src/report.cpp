#include "wildfront/report.hpp"

#include "wildfront/render.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace wildfront {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

namespace {

ordered_json vec_json(const Vec3& v) { return ordered_json::array({v.x(), v.y(), v.z()}); }

Vec3 vec_from(const json& j) { return Vec3(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()); }

ordered_json polyline_json(const Polyline& l) {
  ordered_json pts = ordered_json::array();
  for (const auto& p : l.points) pts.push_back(vec_json(p));
  return {{"closed", l.closed}, {"points", pts}};
}

ordered_json result_json(const StrategicResult& r) {
  ordered_json path = ordered_json::array();
  for (std::size_t k = 0; k < r.ray.size(); ++k)
    path.push_back(ordered_json::array({r.ray.t[k], r.ray.x[k].x(), r.ray.x[k].y(), r.ray.x[k].z()}));
  ordered_json runners = ordered_json::array();
  for (const auto& ru : r.runner_ups)
    runners.push_back({{"origin", vec_json(ru.launch.origin)},
                       {"velocity", vec_json(ru.launch.v)},
                       {"score", ru.score}});
  return {{"query", r.query},
          {"mode", to_string(r.mode)},
          {"tau", r.tau},
          {"contact", vec_json(r.contact)},
          {"miss", r.miss},
          {"origin", vec_json(r.launch.origin)},
          {"velocity", vec_json(r.launch.v)},
          {"params", {r.launch.params[0], r.launch.params[1]}},
          {"runner_ups", runners},
          {"path", path}};
}

ordered_json strategies_json(const RunReport& report) {
  ordered_json list = ordered_json::array();
  for (const auto& s : report.strategies) {
    ordered_json o;
    o["type"] = s.config.type;
    if (s.result) o["result"] = result_json(*s.result);
    ordered_json deploy = ordered_json::array();
    for (std::size_t k = 0; k < s.deploy_points.size(); ++k)
      deploy.push_back({{"t", s.config.deploy[k].value}, {"x", vec_json(s.deploy_points[k])}});
    o["deploy"] = deploy;
    if (!s.error.empty()) o["error"] = s.error;
    list.push_back(o);
  }
  return list;
}

void number_json(ordered_json& o, const char* key, double v) {
  if (std::isfinite(v)) o[key] = v;
  else o[key] = nullptr;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
}

}  // namespace

void write_fronts_csv(const RunReport& report, std::ostream& out) {
  out << "# schema: " << kFrontsSchema << "\n";
  out << "tau,sample_id,x,y,z,vx0,vy0,vz0\n";
  for (const auto& f : report.fronts) {
    const std::string tau = format_number(f.tau);
    for (std::size_t i = 0; i < f.front.samples.size(); ++i) {
      const auto& s = f.front.samples[i];
      out << tau << ',' << i << ',' << format_number(s.x.x()) << ',' << format_number(s.x.y()) << ','
          << format_number(s.x.z()) << ',' << format_number(s.v0.x()) << ',' << format_number(s.v0.y()) << ','
          << format_number(s.v0.z()) << '\n';
    }
  }
}

void write_trajectories_csv(const RunReport& report, std::ostream& out) {
  out << "# schema: " << kTrajectoriesSchema << "\n";
  out << "query,t,x,y,z,vx,vy,vz\n";
  for (std::size_t q = 0; q < report.strategies.size(); ++q) {
    const auto& s = report.strategies[q];
    if (!s.result) continue;
    const Trajectory& ray = s.result->ray;
    for (std::size_t k = 0; k < ray.size(); ++k) {
      out << q << ',' << format_number(ray.t[k]) << ',' << format_number(ray.x[k].x()) << ','
          << format_number(ray.x[k].y()) << ',' << format_number(ray.x[k].z()) << ',' << format_number(ray.v[k].x())
          << ',' << format_number(ray.v[k].y()) << ',' << format_number(ray.v[k].z()) << '\n';
    }
  }
}

std::string report_json(const RunReport& report) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["scenario"] = report.scenario;
  j["constants"] = report.constants;
  if (report.slice_plane) {
    const Plane& p = *report.slice_plane;
    j["slice"] = {{"origin", vec_json(p.origin)},
                  {"normal", vec_json(p.normal)},
                  {"u", vec_json(p.u)},
                  {"v", vec_json(p.v)},
                  {"spacing", report.slice_spacing}};
  }
  ordered_json segments = ordered_json::array();
  for (const auto& s : report.segments) {
    ordered_json o{{"index", s.index}, {"start", s.start}, {"end", s.end}, {"mode", to_string(s.mode)}};
    if (s.killing)
      o["killing"] = {{"killing", s.killing->killing},
                      {"max_residual", s.killing->max_residual},
                      {"threshold", s.killing->threshold},
                      {"worst", vec_json(s.killing->worst)}};
    segments.push_back(o);
  }
  j["segments"] = segments;
  ordered_json fronts = ordered_json::array();
  for (const auto& f : report.fronts) {
    ordered_json slice = ordered_json::array();
    for (const auto& l : f.slice) slice.push_back(polyline_json(l));
    ordered_json o{{"tau", f.tau},
                   {"segment", f.segment},
                   {"mode", to_string(f.mode)},
                   {"samples", f.front.samples.size()},
                   {"slice", slice}};
    if (!f.front.samples.empty()) {
      SampledFront sf;
      for (const auto& s : f.front.samples) sf.samples.push_back(FrontSample{s.x, Vec3::Zero(), Vec3::Zero(), {}, {}});
      o["centroid"] = vec_json(sf.centroid());
    }
    fronts.push_back(o);
  }
  j["fronts"] = fronts;
  j["strategies"] = strategies_json(report);
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json o{{"kind", c.kind}, {"passed", c.passed}};
    number_json(o, "value", c.value);
    number_json(o, "tolerance", c.tolerance);
    o["detail"] = c.detail;
    checks.push_back(o);
  }
  j["checks"] = checks;
  j["errors"] = report.errors;
  return j.dump(2) + "\n";
}

std::string strategy_json(const RunReport& report) {
  ordered_json j;
  j["schema"] = kStrategySchema;
  j["scenario"] = report.scenario;
  j["strategies"] = strategies_json(report);
  return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), 1, static_cast<int>(e.byte));
  }
  RunReport r;
  try {
    if (j.value("schema", std::string()) != kReportSchema)
      throw Error(ErrorCode::ValidationError, std::string("report schema must be ") + kReportSchema);
    r.scenario = j.value("scenario", std::string());
    r.constants = j.value("constants", std::string("derived"));
    if (j.contains("slice")) {
      const json& s = j.at("slice");
      Plane p;
      p.origin = vec_from(s.at("origin"));
      p.normal = vec_from(s.at("normal"));
      p.u = vec_from(s.at("u"));
      p.v = vec_from(s.at("v"));
      r.slice_plane = p;
      r.slice_spacing = s.value("spacing", 0.0);
    }
    for (const auto& f : j.at("fronts")) {
      FrontRecord rec;
      rec.tau = f.at("tau").get<double>();
      rec.front.tau = rec.tau;
      rec.segment = f.value("segment", std::size_t{0});
      for (const auto& l : f.at("slice")) {
        Polyline pl;
        pl.closed = l.at("closed").get<bool>();
        for (const auto& p : l.at("points")) pl.points.push_back(vec_from(p));
        rec.slice.push_back(std::move(pl));
      }
      r.fronts.push_back(std::move(rec));
    }
    for (const auto& s : j.at("strategies")) {
      StrategyRecord rec;
      rec.config.type = s.at("type").get<std::string>();
      if (s.contains("result")) {
        StrategicResult res;
        const json& o = s.at("result");
        res.query = o.value("query", rec.config.type);
        res.tau = o.value("tau", 0.0);
        res.contact = vec_from(o.at("contact"));
        for (const auto& p : o.at("path")) {
          res.ray.t.push_back(p.at(0).get<double>());
          res.ray.x.push_back(Point3(p.at(1).get<double>(), p.at(2).get<double>(), p.at(3).get<double>()));
          res.ray.v.push_back(Vec3::Zero());
        }
        rec.result = std::move(res);
      }
      for (const auto& d : s.at("deploy")) rec.deploy_points.push_back(vec_from(d.at("x")));
      r.strategies.push_back(std::move(rec));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ValidationError, std::string("malformed report: ") + e.what());
  }
  return r;
}

RunReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read report " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return report_from_json(buf.str());
}

std::vector<std::filesystem::path> write_outputs(const RunReport& report, const Scenario& s,
                                                 const std::filesystem::path& directory) {
  std::filesystem::path dir = directory.empty() ? std::filesystem::path(s.output.directory) : directory;
  if (dir.is_relative() && directory.empty()) dir = s.base_dir / dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, const std::string& text) {
    if (name.empty()) return;
    write_file(dir / name, text);
    written.push_back(dir / name);
  };
  {
    std::ostringstream out;
    write_fronts_csv(report, out);
    emit(s.output.fronts_csv, out.str());
  }
  emit(s.output.report_json, report_json(report));
  {
    std::ostringstream out;
    write_trajectories_csv(report, out);
    emit(s.output.trajectories_csv, out.str());
  }
  emit(s.output.strategy_json, strategy_json(report));
  if (!s.output.svg.empty() && report.slice_plane) {
    try {
      emit(s.output.svg, render_slice_svg(report, *report.slice_plane));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyIntersection) throw;
    }
  }
  return written;
}

}  // namespace wildfront
