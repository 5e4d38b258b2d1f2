#include "wildfront/scenario.hpp"

#include "wildfront/contour.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <regex>
#include <set>
#include <sstream>

namespace wildfront {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

Number Number::of(double v) { return Number{format_number(v), v}; }

namespace {

const std::set<std::string> kReservedNames = {"x", "y", "z", "s", "s1", "s2", "pi", "e"};

[[noreturn]] void invalid(const std::string& field, const std::string& message) {
  throw Error(ErrorCode::ValidationError, field + ": " + message);
}

std::vector<std::string> parameter_names(const std::map<std::string, double>& params) {
  std::vector<std::string> names;
  for (const auto& [k, v] : params) names.push_back(k);
  return names;
}

std::vector<double> parameter_values(const std::map<std::string, double>& params) {
  std::vector<double> values;
  for (const auto& [k, v] : params) values.push_back(v);
  return values;
}

// Replaces scenario parameter names by their values so that field expressions
// only see their own variables.
std::string substitute(const std::string& text, const std::map<std::string, double>& params) {
  std::string out = text;
  for (const auto& [name, value] : params) {
    const std::regex word("\\b" + name + "\\b");
    out = std::regex_replace(out, word, "(" + format_number(value) + ")");
  }
  return out;
}

Expression field_expression(const std::string& field, const std::string& text, const std::vector<std::string>& vars,
                            const std::map<std::string, double>& params) {
  try {
    return Expression::parse(substitute(text, params), vars);
  } catch (const Error& e) {
    invalid(field, std::string("bad expression '") + text + "': " + e.what());
  }
}

class Reader {
 public:
  explicit Reader(const std::map<std::string, double>& params) : params_(params) {}

  void expect_keys(const json& j, const std::string& field, std::initializer_list<const char*> allowed) const {
    if (!j.is_object()) invalid(field, "expected an object");
    for (const auto& [key, value] : j.items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) invalid(field, "unknown key '" + key + "'");
    }
  }

  Number number(const json& j, const std::string& field) const {
    if (j.is_number()) {
      const double v = j.get<double>();
      if (!std::isfinite(v)) invalid(field, "number must be finite");
      return Number::of(v);
    }
    if (j.is_string()) {
      const std::string text = j.get<std::string>();
      try {
        const double v = Expression::parse(text, parameter_names(params_)).eval(parameter_values(params_));
        if (!std::isfinite(v)) invalid(field, "expression '" + text + "' is not finite");
        return Number{text, v};
      } catch (const Error& e) {
        if (e.code() == ErrorCode::ValidationError) throw;
        invalid(field, "bad expression '" + text + "': " + e.what());
      }
    }
    invalid(field, "expected a number or an expression string");
  }

  Number3 number3(const json& j, const std::string& field) const {
    if (!j.is_array() || j.size() != 3) invalid(field, "expected an array of 3 numbers");
    return {number(j[0], field + "[0]"), number(j[1], field + "[1]"), number(j[2], field + "[2]")};
  }

  std::array<Number, 2> number2(const json& j, const std::string& field) const {
    if (!j.is_array() || j.size() != 2) invalid(field, "expected an array of 2 numbers");
    return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
  }

  static std::string text(const json& j, const std::string& field) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number()) return format_number(j.get<double>());
    invalid(field, "expected a string or a number");
  }

  static std::size_t count(const json& j, const std::string& field) {
    if (!j.is_number_integer() || j.get<long long>() < 0) invalid(field, "expected a non-negative integer");
    return j.get<std::size_t>();
  }

  static bool boolean(const json& j, const std::string& field) {
    if (!j.is_boolean()) invalid(field, "expected true or false");
    return j.get<bool>();
  }

  static std::string string(const json& j, const std::string& field) {
    if (!j.is_string()) invalid(field, "expected a string");
    return j.get<std::string>();
  }

 private:
  const std::map<std::string, double>& params_;
};

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

ordered_json number_json(const Number& n) {
  if (n.text == format_number(n.value)) return n.value;
  return n.text;
}

ordered_json number3_json(const Number3& n) {
  return ordered_json::array({number_json(n[0]), number_json(n[1]), number_json(n[2])});
}

ordered_json number2_json(const std::array<Number, 2>& n) {
  return ordered_json::array({number_json(n[0]), number_json(n[1])});
}

RegionConfig parse_region(const Reader& r, const json& j, const std::string& f) {
  r.expect_keys(j, f, {"type", "center", "radius", "point", "normal", "expression", "file"});
  RegionConfig c;
  c.type = Reader::string(j.at("type"), f + ".type");
  if (c.type == "ball") {
    c.center = r.number3(j.at("center"), f + ".center");
    c.radius = r.number(j.at("radius"), f + ".radius");
  } else if (c.type == "half_space") {
    c.point = r.number3(j.at("point"), f + ".point");
    c.normal = r.number3(j.at("normal"), f + ".normal");
  } else if (c.type == "implicit") {
    c.expression = Reader::text(j.at("expression"), f + ".expression");
  } else if (c.type == "triangles") {
    c.file = Reader::string(j.at("file"), f + ".file");
  } else {
    invalid(f + ".type", "unknown region type '" + c.type + "'");
  }
  return c;
}

ordered_json region_json(const RegionConfig& c) {
  ordered_json j;
  j["type"] = c.type;
  if (c.type == "ball") {
    j["center"] = number3_json(c.center);
    j["radius"] = number_json(c.radius);
  } else if (c.type == "half_space") {
    j["point"] = number3_json(c.point);
    j["normal"] = number3_json(c.normal);
  } else if (c.type == "implicit") {
    j["expression"] = c.expression;
  } else {
    j["file"] = c.file;
  }
  return j;
}

Scenario parse_json(const json& root, const std::filesystem::path& base_dir) {
  Scenario s;
  s.base_dir = base_dir;
  if (!root.is_object()) invalid("scenario", "top level must be an object");
  {
    const std::map<std::string, double> none;
    Reader r(none);
    r.expect_keys(root, "scenario",
                  {"schema", "name", "constants", "parameters", "ellipsoid", "wind", "front", "times", "sampling",
                   "slice", "domain", "strategy", "checks", "output"});
  }
  if (root.contains("schema") && root.at("schema") != kScenarioSchema)
    invalid("schema", std::string("expected '") + kScenarioSchema + "'");
  if (root.contains("name")) s.name = Reader::string(root.at("name"), "name");
  if (root.contains("constants")) s.constants = Reader::string(root.at("constants"), "constants");
  if (root.contains("parameters")) {
    const json& p = root.at("parameters");
    if (!p.is_object()) invalid("parameters", "expected an object of numbers");
    for (const auto& [k, v] : p.items()) {
      if (!std::regex_match(k, std::regex("[A-Za-z_][A-Za-z0-9_]*")) || kReservedNames.count(k))
        invalid("parameters." + k, "not a usable parameter name");
      if (!v.is_number()) invalid("parameters." + k, "expected a number");
      s.parameters[k] = v.get<double>();
    }
  }
  const Reader r(s.parameters);

  if (!root.contains("ellipsoid")) invalid("ellipsoid", "missing");
  {
    const json& e = root.at("ellipsoid");
    r.expect_keys(e, "ellipsoid", {"a", "b", "c", "alpha", "beta", "theta"});
    auto get = [&](const char* key, std::string& out) {
      if (e.contains(key)) out = Reader::text(e.at(key), std::string("ellipsoid.") + key);
    };
    get("a", s.ellipsoid.a);
    get("b", s.ellipsoid.b);
    get("c", s.ellipsoid.c);
    get("alpha", s.ellipsoid.alpha);
    get("beta", s.ellipsoid.beta);
    get("theta", s.ellipsoid.theta);
  }

  if (!root.contains("wind")) invalid("wind", "missing");
  const json& wind = root.at("wind");
  if (!wind.is_array()) invalid("wind", "expected an array of segments");
  for (std::size_t i = 0; i < wind.size(); ++i) {
    const std::string f = "wind[" + std::to_string(i) + "]";
    const json& w = wind[i];
    r.expect_keys(w, f, {"start", "end", "type", "value", "offset", "matrix", "components", "file", "format"});
    WindSegmentConfig c;
    c.start = r.number(w.at("start"), f + ".start");
    c.end = r.number(w.at("end"), f + ".end");
    c.type = Reader::string(w.at("type"), f + ".type");
    for (auto& row : c.matrix) row = {Number::of(0), Number::of(0), Number::of(0)};
    c.value = {Number::of(0), Number::of(0), Number::of(0)};
    if (c.type == "constant") {
      c.value = r.number3(w.at("value"), f + ".value");
    } else if (c.type == "affine") {
      if (w.contains("offset")) c.value = r.number3(w.at("offset"), f + ".offset");
      const json& m = w.at("matrix");
      if (!m.is_array() || m.size() != 3) invalid(f + ".matrix", "expected a 3x3 array");
      for (std::size_t k = 0; k < 3; ++k) c.matrix[k] = r.number3(m[k], f + ".matrix[" + std::to_string(k) + "]");
    } else if (c.type == "expression") {
      const json& comp = w.at("components");
      if (!comp.is_array() || comp.size() != 3) invalid(f + ".components", "expected 3 expressions");
      for (std::size_t k = 0; k < 3; ++k) c.components[k] = Reader::text(comp[k], f + ".components");
    } else if (c.type == "grid") {
      c.file = Reader::string(w.at("file"), f + ".file");
      if (w.contains("format")) c.format = Reader::string(w.at("format"), f + ".format");
    } else {
      invalid(f + ".type", "unknown wind type '" + c.type + "'");
    }
    s.wind.push_back(std::move(c));
  }

  if (!root.contains("front")) invalid("front", "missing");
  {
    const json& j = root.at("front");
    r.expect_keys(j, "front",
                  {"type", "point", "components", "range", "range1", "range2", "closed", "wrap1", "wrap2", "side",
                   "file", "rows", "cols", "wrap_rows", "wrap_cols"});
    FrontConfig& c = s.front;
    c.type = Reader::string(j.at("type"), "front.type");
    c.point = {Number::of(0), Number::of(0), Number::of(0)};
    c.range1 = {Number::of(0), Number::of(0)};
    c.range2 = {Number::of(0), Number::of(0)};
    if (j.contains("side")) c.side = Reader::string(j.at("side"), "front.side");
    auto comps = [&] {
      const json& comp = j.at("components");
      if (!comp.is_array() || comp.size() != 3) invalid("front.components", "expected 3 expressions");
      for (std::size_t k = 0; k < 3; ++k) c.components[k] = Reader::text(comp[k], "front.components");
    };
    if (c.type == "point") {
      c.point = r.number3(j.at("point"), "front.point");
    } else if (c.type == "curve") {
      comps();
      c.range1 = r.number2(j.at("range"), "front.range");
      if (j.contains("closed")) c.wrap1 = Reader::boolean(j.at("closed"), "front.closed");
    } else if (c.type == "surface") {
      comps();
      c.range1 = r.number2(j.at("range1"), "front.range1");
      c.range2 = r.number2(j.at("range2"), "front.range2");
      if (j.contains("wrap1")) c.wrap1 = Reader::boolean(j.at("wrap1"), "front.wrap1");
      if (j.contains("wrap2")) c.wrap2 = Reader::boolean(j.at("wrap2"), "front.wrap2");
    } else if (c.type == "sampled") {
      c.file = Reader::string(j.at("file"), "front.file");
      c.rows = Reader::count(j.at("rows"), "front.rows");
      c.cols = Reader::count(j.at("cols"), "front.cols");
      if (j.contains("wrap_rows")) c.wrap_rows = Reader::boolean(j.at("wrap_rows"), "front.wrap_rows");
      if (j.contains("wrap_cols")) c.wrap_cols = Reader::boolean(j.at("wrap_cols"), "front.wrap_cols");
    } else {
      invalid("front.type", "unknown front type '" + c.type + "'");
    }
  }

  if (!root.contains("times")) invalid("times", "missing");
  {
    const json& t = root.at("times");
    if (t.is_array()) {
      for (std::size_t i = 0; i < t.size(); ++i) s.times.push_back(r.number(t[i], "times[" + std::to_string(i) + "]"));
    } else if (t.is_object()) {
      r.expect_keys(t, "times", {"start", "stop", "step"});
      const double a = r.number(t.at("start"), "times.start").value;
      const double b = r.number(t.at("stop"), "times.stop").value;
      const double h = r.number(t.at("step"), "times.step").value;
      if (!(h > 0.0) || b < a) invalid("times", "need start <= stop and step > 0");
      const auto n = static_cast<long>(std::floor((b - a) / h + 1e-9));
      if (n > 100000) invalid("times", "too many time steps");
      for (long i = 0; i <= n; ++i) s.times.push_back(Number::of(a + h * static_cast<double>(i)));
    } else {
      invalid("times", "expected an array or {start, stop, step}");
    }
  }

  if (root.contains("sampling")) {
    const json& j = root.at("sampling");
    r.expect_keys(j, "sampling",
                  {"sphere_points", "curve_samples", "normal_samples", "surface_s1", "surface_s2", "dt", "mode", "threads"});
    auto& c = s.sampling;
    if (j.contains("sphere_points")) c.sphere_points = Reader::count(j.at("sphere_points"), "sampling.sphere_points");
    if (j.contains("curve_samples")) c.curve_samples = Reader::count(j.at("curve_samples"), "sampling.curve_samples");
    if (j.contains("normal_samples")) c.normal_samples = Reader::count(j.at("normal_samples"), "sampling.normal_samples");
    if (j.contains("surface_s1")) c.surface_s1 = Reader::count(j.at("surface_s1"), "sampling.surface_s1");
    if (j.contains("surface_s2")) c.surface_s2 = Reader::count(j.at("surface_s2"), "sampling.surface_s2");
    if (j.contains("dt")) c.dt = r.number(j.at("dt"), "sampling.dt").value;
    if (j.contains("mode")) c.mode = Reader::string(j.at("mode"), "sampling.mode");
    if (j.contains("threads")) c.threads = Reader::count(j.at("threads"), "sampling.threads");
  }

  if (root.contains("slice")) {
    const json& j = root.at("slice");
    r.expect_keys(j, "slice", {"axis", "offset", "lo", "hi", "nodes"});
    SliceConfig c;
    const std::string axis = Reader::string(j.at("axis"), "slice.axis");
    if (axis == "x") c.axis = 0;
    else if (axis == "y") c.axis = 1;
    else if (axis == "z") c.axis = 2;
    else invalid("slice.axis", "expected x, y or z");
    c.offset = j.contains("offset") ? r.number(j.at("offset"), "slice.offset") : Number::of(0);
    c.lo = r.number2(j.at("lo"), "slice.lo");
    c.hi = r.number2(j.at("hi"), "slice.hi");
    if (j.contains("nodes")) {
      const json& n = j.at("nodes");
      if (n.is_number_integer()) {
        c.nodes = {Reader::count(n, "slice.nodes"), Reader::count(n, "slice.nodes")};
      } else if (n.is_array() && n.size() == 2) {
        c.nodes = {Reader::count(n[0], "slice.nodes[0]"), Reader::count(n[1], "slice.nodes[1]")};
      } else {
        invalid("slice.nodes", "expected an integer or [nu, nv]");
      }
    }
    s.slice = c;
  }

  if (root.contains("domain")) {
    const json& j = root.at("domain");
    r.expect_keys(j, "domain", {"lo", "hi"});
    s.domain = DomainConfig{r.number3(j.at("lo"), "domain.lo"), r.number3(j.at("hi"), "domain.hi")};
  }

  if (root.contains("strategy")) {
    const json& list = root.at("strategy");
    if (!list.is_array()) invalid("strategy", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string f = "strategy[" + std::to_string(i) + "]";
      const json& j = list[i];
      r.expect_keys(j, f, {"type", "tau", "target", "region", "deploy"});
      StrategyConfig c;
      c.type = Reader::string(j.at("type"), f + ".type");
      c.target = {Number::of(0), Number::of(0), Number::of(0)};
      c.region.center = c.region.point = c.region.normal = c.target;
      if (c.type == "all_equal") {
        c.tau = r.number(j.at("tau"), f + ".tau");
      } else if (c.type == "point") {
        c.target = r.number3(j.at("target"), f + ".target");
      } else if (c.type == "region") {
        c.region = parse_region(r, j.at("region"), f + ".region");
        for (Number3* n : {&c.region.center, &c.region.point, &c.region.normal})
          for (auto& x : *n)
            if (x.text.empty()) x = Number::of(0);
      } else {
        invalid(f + ".type", "unknown strategy type '" + c.type + "'");
      }
      if (j.contains("deploy")) {
        const json& d = j.at("deploy");
        if (!d.is_array()) invalid(f + ".deploy", "expected an array of times");
        for (std::size_t k = 0; k < d.size(); ++k) c.deploy.push_back(r.number(d[k], f + ".deploy"));
      }
      s.strategies.push_back(std::move(c));
    }
  }

  if (root.contains("checks")) {
    const json& list = root.at("checks");
    if (!list.is_array()) invalid("checks", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string f = "checks[" + std::to_string(i) + "]";
      const json& j = list[i];
      CheckConfig c;
      if (j.is_string()) {
        c.kind = j.get<std::string>();
      } else {
        r.expect_keys(j, f, {"kind", "tolerance", "tau"});
        c.kind = Reader::string(j.at("kind"), f + ".kind");
        if (j.contains("tolerance")) c.tolerance = r.number(j.at("tolerance"), f + ".tolerance").value;
        if (j.contains("tau")) c.tau = r.number(j.at("tau"), f + ".tau").value;
      }
      s.checks.push_back(std::move(c));
    }
  }

  if (root.contains("output")) {
    const json& j = root.at("output");
    r.expect_keys(j, "output", {"directory", "fronts_csv", "report_json", "trajectories_csv", "strategy_json", "svg"});
    auto get = [&](const char* key, std::string& out) {
      if (j.contains(key)) out = Reader::string(j.at(key), std::string("output.") + key);
    };
    get("directory", s.output.directory);
    get("fronts_csv", s.output.fronts_csv);
    get("report_json", s.output.report_json);
    get("trajectories_csv", s.output.trajectories_csv);
    get("strategy_json", s.output.strategy_json);
    get("svg", s.output.svg);
  }
  return s;
}

const std::set<std::string> kCheckKinds = {"nesting",       "wind_drift",        "semigroup", "envelope",
                                           "f_speed",       "straight_path",     "orthogonal_launch",
                                           "lipschitz",     "indicatrix_equation"};

std::filesystem::path resolve(const Scenario& s, const std::string& file) {
  const std::filesystem::path p(file);
  return p.is_absolute() ? p : s.base_dir / p;
}

Vec3 vec(const Number3& n) { return Vec3(n[0].value, n[1].value, n[2].value); }

}  // namespace

Scenario parse_scenario(const std::string& text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    std::string message = e.what();
    const auto pos = message.find(": ");
    if (pos != std::string::npos) message = message.substr(pos + 2);
    throw ParseError(message, line, col);
  }
  Scenario s = parse_json(root, base_dir);
  validate_scenario(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.parent_path());
}

std::string serialize_scenario(const Scenario& s) {
  ordered_json j;
  j["schema"] = kScenarioSchema;
  j["name"] = s.name;
  j["constants"] = s.constants;
  if (!s.parameters.empty()) {
    ordered_json p = ordered_json::object();
    for (const auto& [k, v] : s.parameters) p[k] = v;
    j["parameters"] = p;
  }
  j["ellipsoid"] = {{"a", s.ellipsoid.a},         {"b", s.ellipsoid.b},       {"c", s.ellipsoid.c},
                    {"alpha", s.ellipsoid.alpha}, {"beta", s.ellipsoid.beta}, {"theta", s.ellipsoid.theta}};
  ordered_json wind = ordered_json::array();
  for (const auto& w : s.wind) {
    ordered_json o;
    o["start"] = number_json(w.start);
    o["end"] = number_json(w.end);
    o["type"] = w.type;
    if (w.type == "constant") {
      o["value"] = number3_json(w.value);
    } else if (w.type == "affine") {
      o["offset"] = number3_json(w.value);
      o["matrix"] = ordered_json::array({number3_json(w.matrix[0]), number3_json(w.matrix[1]), number3_json(w.matrix[2])});
    } else if (w.type == "expression") {
      o["components"] = w.components;
    } else {
      o["file"] = w.file;
      o["format"] = w.format;
    }
    wind.push_back(o);
  }
  j["wind"] = wind;
  {
    const auto& f = s.front;
    ordered_json o;
    o["type"] = f.type;
    if (f.type == "point") {
      o["point"] = number3_json(f.point);
    } else if (f.type == "curve") {
      o["components"] = f.components;
      o["range"] = number2_json(f.range1);
      o["closed"] = f.wrap1;
    } else if (f.type == "surface") {
      o["components"] = f.components;
      o["range1"] = number2_json(f.range1);
      o["range2"] = number2_json(f.range2);
      o["wrap1"] = f.wrap1;
      o["wrap2"] = f.wrap2;
    } else {
      o["file"] = f.file;
      o["rows"] = f.rows;
      o["cols"] = f.cols;
      o["wrap_rows"] = f.wrap_rows;
      o["wrap_cols"] = f.wrap_cols;
    }
    o["side"] = f.side;
    j["front"] = o;
  }
  ordered_json times = ordered_json::array();
  for (const auto& t : s.times) times.push_back(number_json(t));
  j["times"] = times;
  j["sampling"] = {{"sphere_points", s.sampling.sphere_points},
                   {"curve_samples", s.sampling.curve_samples},
                   {"normal_samples", s.sampling.normal_samples},
                   {"surface_s1", s.sampling.surface_s1},
                   {"surface_s2", s.sampling.surface_s2},
                   {"dt", s.sampling.dt},
                   {"mode", s.sampling.mode},
                   {"threads", s.sampling.threads}};
  if (s.slice) {
    const char* axes[3] = {"x", "y", "z"};
    j["slice"] = {{"axis", axes[s.slice->axis]},
                  {"offset", number_json(s.slice->offset)},
                  {"lo", number2_json(s.slice->lo)},
                  {"hi", number2_json(s.slice->hi)},
                  {"nodes", {s.slice->nodes[0], s.slice->nodes[1]}}};
  }
  if (s.domain) j["domain"] = {{"lo", number3_json(s.domain->lo)}, {"hi", number3_json(s.domain->hi)}};
  if (!s.strategies.empty()) {
    ordered_json list = ordered_json::array();
    for (const auto& st : s.strategies) {
      ordered_json o;
      o["type"] = st.type;
      if (st.type == "all_equal") o["tau"] = number_json(st.tau);
      if (st.type == "point") o["target"] = number3_json(st.target);
      if (st.type == "region") o["region"] = region_json(st.region);
      if (!st.deploy.empty()) {
        ordered_json d = ordered_json::array();
        for (const auto& t : st.deploy) d.push_back(number_json(t));
        o["deploy"] = d;
      }
      list.push_back(o);
    }
    j["strategy"] = list;
  }
  if (!s.checks.empty()) {
    ordered_json list = ordered_json::array();
    for (const auto& c : s.checks) {
      if (!c.tolerance && !c.tau) {
        list.push_back(c.kind);
        continue;
      }
      ordered_json o;
      o["kind"] = c.kind;
      if (c.tolerance) o["tolerance"] = *c.tolerance;
      if (c.tau) o["tau"] = *c.tau;
      list.push_back(o);
    }
    j["checks"] = list;
  }
  j["output"] = {{"directory", s.output.directory},         {"fronts_csv", s.output.fronts_csv},
                 {"report_json", s.output.report_json},     {"trajectories_csv", s.output.trajectories_csv},
                 {"strategy_json", s.output.strategy_json}, {"svg", s.output.svg}};
  return j.dump(2) + "\n";
}

EllipsoidSpec build_ellipsoid(const Scenario& s) {
  const std::vector<std::string> xyz{"x", "y", "z"};
  EllipsoidSpec e;
  e.a = field_expression("ellipsoid.a", s.ellipsoid.a, xyz, s.parameters);
  e.b = field_expression("ellipsoid.b", s.ellipsoid.b, xyz, s.parameters);
  e.c = field_expression("ellipsoid.c", s.ellipsoid.c, xyz, s.parameters);
  e.alpha = field_expression("ellipsoid.alpha", s.ellipsoid.alpha, xyz, s.parameters);
  e.beta = field_expression("ellipsoid.beta", s.ellipsoid.beta, xyz, s.parameters);
  e.theta = field_expression("ellipsoid.theta", s.ellipsoid.theta, xyz, s.parameters);
  return e;
}

std::vector<WindSegment> build_wind(const Scenario& s) {
  std::vector<WindSegment> out;
  for (std::size_t i = 0; i < s.wind.size(); ++i) {
    const auto& w = s.wind[i];
    const std::string f = "wind[" + std::to_string(i) + "]";
    WindSegment seg;
    seg.t_start = w.start.value;
    seg.t_end = w.end.value;
    if (w.type == "constant") {
      seg.field = WindField::constant(vec(w.value));
    } else if (w.type == "affine") {
      Mat3 m;
      for (int r = 0; r < 3; ++r) m.row(r) = vec(w.matrix[static_cast<std::size_t>(r)]).transpose();
      seg.field = WindField::affine(vec(w.value), m);
    } else if (w.type == "expression") {
      const std::vector<std::string> xyz{"x", "y", "z"};
      std::array<Expression, 3> c;
      for (std::size_t k = 0; k < 3; ++k) c[k] = field_expression(f + ".components", w.components[k], xyz, s.parameters);
      if (c[0].is_constant() && c[1].is_constant() && c[2].is_constant()) {
        seg.field = WindField::constant(Vec3(c[0].eval(), c[1].eval(), c[2].eval()));
      } else {
        seg.field = WindField::analytic([c](const Point3& p) {
          const double v[3] = {p.x(), p.y(), p.z()};
          return Vec3(c[0].eval(v), c[1].eval(v), c[2].eval(v));
        });
      }
    } else {
      const auto path = resolve(s, w.file);
      seg.field = WindField::grid(w.format == "binary" ? WindGrid::load_binary(path) : WindGrid::load_text(path));
    }
    out.push_back(std::move(seg));
  }
  return out;
}

namespace {

FrontGeometry load_sampled_front(const Scenario& s) {
  const auto path = resolve(s, s.front.file);
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read sampled front " + path.string());
  std::vector<FrontSample> samples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<double> v;
    double d;
    while (ls >> d) v.push_back(d);
    if (v.empty()) continue;
    if (v.size() != 9 && v.size() != 6)
      throw ParseError("sampled front rows need 6 or 9 numbers", line_no, 1);
    FrontSample fs;
    fs.x = Point3(v[0], v[1], v[2]);
    fs.t1 = Vec3(v[3], v[4], v[5]);
    if (v.size() == 9) fs.t2 = Vec3(v[6], v[7], v[8]);
    samples.push_back(fs);
  }
  const auto& f = s.front;
  if (f.rows * f.cols != samples.size())
    invalid("front.rows", "rows x cols must equal the number of samples in " + f.file);
  const bool surface = samples.front().t2.norm() > 0.0;
  return FrontGeometry::sampled(std::move(samples), {GridTopology{0, f.rows, f.cols, f.wrap_rows, f.wrap_cols}},
                                surface ? 2 : 1);
}

}  // namespace

FrontGeometry build_front(const Scenario& s) {
  const auto& f = s.front;
  if (f.type == "point") return FrontGeometry::point(vec(f.point));
  if (f.type == "curve") {
    std::array<Expression, 3> c;
    for (std::size_t k = 0; k < 3; ++k) c[k] = field_expression("front.components", f.components[k], {"s"}, s.parameters);
    return FrontGeometry::curve(c, f.range1[0].value, f.range1[1].value, f.wrap1);
  }
  if (f.type == "surface") {
    std::array<Expression, 3> c;
    for (std::size_t k = 0; k < 3; ++k)
      c[k] = field_expression("front.components", f.components[k], {"s1", "s2"}, s.parameters);
    return FrontGeometry::surface(c, {f.range1[0].value, f.range1[1].value}, {f.range2[0].value, f.range2[1].value},
                                  f.wrap1, f.wrap2);
  }
  return load_sampled_front(s);
}

PropagationSettings build_propagation_settings(const Scenario& s) {
  PropagationSettings p;
  p.sampling.sphere_points = s.sampling.sphere_points;
  p.sampling.curve_samples = s.sampling.curve_samples;
  p.sampling.normal_samples = s.sampling.normal_samples;
  p.sampling.surface_s1 = s.sampling.surface_s1;
  p.sampling.surface_s2 = s.sampling.surface_s2;
  p.side = side_from_string(s.front.side);
  p.dt = s.sampling.dt;
  p.threads = s.sampling.threads;
  if (s.sampling.mode == "constant") p.mode = RayMode::Constant;
  if (s.sampling.mode == "killing") p.mode = RayMode::Killing;
  if (s.sampling.mode == "general") p.mode = RayMode::General;
  return p;
}

std::optional<SliceGrid> build_slice(const Scenario& s) {
  if (!s.slice) return std::nullopt;
  SliceGrid g;
  g.plane = Plane::axis(s.slice->axis, s.slice->offset.value);
  g.lo = Vec2(s.slice->lo[0].value, s.slice->lo[1].value);
  g.hi = Vec2(s.slice->hi[0].value, s.slice->hi[1].value);
  g.nu = s.slice->nodes[0];
  g.nv = s.slice->nodes[1];
  return g;
}

Region build_region(const Scenario& s, const RegionConfig& r) {
  if (r.type == "ball") return Region::ball(vec(r.center), r.radius.value);
  if (r.type == "half_space") return Region::half_space(vec(r.point), vec(r.normal));
  if (r.type == "implicit")
    return Region::implicit(field_expression("region.expression", r.expression, {"x", "y", "z"}, s.parameters));
  const auto path = resolve(s, r.file);
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read triangle file " + path.string());
  std::vector<Triangle> soup;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<double> v;
    double d;
    while (ls >> d) v.push_back(d);
    if (v.empty()) continue;
    if (v.size() != 9) throw ParseError("triangle rows need 9 numbers", line_no, 1);
    soup.push_back({Point3(v[0], v[1], v[2]), Point3(v[3], v[4], v[5]), Point3(v[6], v[7], v[8])});
  }
  return Region::triangles(std::move(soup));
}

Box build_domain(const Scenario& s) {
  if (s.domain) return Box{vec(s.domain->lo), vec(s.domain->hi), 7};
  if (s.slice) {
    const SliceGrid g = *build_slice(s);
    const Point3 a = g.plane.lift(g.lo), b = g.plane.lift(g.hi);
    const double half = 0.5 * std::max(g.hi.x() - g.lo.x(), g.hi.y() - g.lo.y());
    return Box{a.cwiseMin(b) - half * g.plane.normal.cwiseAbs(), a.cwiseMax(b) + half * g.plane.normal.cwiseAbs(), 7};
  }
  const Point3 c = build_front(s).sample(build_propagation_settings(s).sampling).centroid();
  return Box{c - Vec3::Constant(10.0), c + Vec3::Constant(10.0), 7};
}

void validate_scenario(const Scenario& s) {
  fixtures::constants_from_string(s.constants);
  if (s.wind.empty()) invalid("wind", "at least one segment is required");
  if (!std::set<std::string>{"auto", "constant", "killing", "general"}.count(s.sampling.mode))
    invalid("sampling.mode", "expected auto, constant, killing or general");
  if (s.sampling.sphere_points < 8) invalid("sampling.sphere_points", "need at least 8");
  if (s.sampling.curve_samples < 2) invalid("sampling.curve_samples", "need at least 2");
  if (s.sampling.normal_samples < 2) invalid("sampling.normal_samples", "need at least 2");
  if (s.sampling.surface_s1 < 2 || s.sampling.surface_s2 < 2) invalid("sampling.surface_s1", "need at least 2 per direction");
  if (s.sampling.dt < 0.0) invalid("sampling.dt", "must be non-negative");
  side_from_string(s.front.side);

  const EllipsoidSpec spec = build_ellipsoid(s);
  std::vector<WindSegment> segments;
  try {
    segments = build_wind(s);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError) throw;
    invalid("wind", e.what());
  }
  try {
    validate_schedule(segments);
  } catch (const Error& e) {
    invalid("wind", e.what());
  }
  const double horizon = segments.back().t_end;

  if (s.times.empty()) invalid("times", "at least one time is required");
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    const double t = s.times[i].value;
    if (t < 0.0 || t > horizon + 1e-12) invalid("times[" + std::to_string(i) + "]", "outside [0, wind horizon]");
    if (i > 0 && !(t > s.times[i - 1].value)) invalid("times", "must be strictly increasing");
  }

  try {
    build_front(s);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError) throw;
    invalid("front", e.what());
  }
  if (s.slice) {
    if (s.slice->nodes[0] < 2 || s.slice->nodes[1] < 2) invalid("slice.nodes", "need at least 2 nodes per direction");
    if (!(s.slice->hi[0].value > s.slice->lo[0].value) || !(s.slice->hi[1].value > s.slice->lo[1].value))
      invalid("slice", "need lo < hi");
  }
  if (s.domain)
    for (int k = 0; k < 3; ++k)
      if (!(s.domain->hi[static_cast<std::size_t>(k)].value > s.domain->lo[static_cast<std::size_t>(k)].value))
        invalid("domain", "need lo < hi on every axis");

  // The ellipsoid must be valid and every wind navigable (h(W, W) < 1) over the domain.
  const Box domain = build_domain(s);
  const MetricField metric = metric_field(spec);
  const int n = domain.samples;
  for (std::size_t w = 0; w < segments.size(); ++w) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const Vec3 f(static_cast<double>(i) / (n - 1), static_cast<double>(j) / (n - 1), static_cast<double>(k) / (n - 1));
          const Point3 p = domain.lo + f.cwiseProduct(domain.hi - domain.lo);
          SpdMatrix3 h = SpdMatrix3::identity();
          try {
            h = metric.at(p);
          } catch (const Error& e) {
            invalid("ellipsoid", e.what());
          }
          worst = std::max(worst, h.norm_sq(segments[w].field.at(p)));
        }
    if (worst >= 1.0 - RandersEval::kMinLambda)
      invalid("wind[" + std::to_string(w) + "]",
              "h(W, W) reaches " + format_number(worst) + " in the domain; the wind must stay below 1");
  }

  for (std::size_t i = 0; i < s.strategies.size(); ++i) {
    const auto& st = s.strategies[i];
    const std::string f = "strategy[" + std::to_string(i) + "]";
    if (st.type == "all_equal" && !(st.tau.value > 0.0)) invalid(f + ".tau", "must be positive");
    if (st.type == "region") {
      try {
        build_region(s, st.region);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::ValidationError) throw;
        invalid(f + ".region", e.what());
      }
    }
    for (const auto& t : st.deploy)
      if (t.value < 0.0) invalid(f + ".deploy", "deployment times must be non-negative");
  }
  for (std::size_t i = 0; i < s.checks.size(); ++i) {
    if (!kCheckKinds.count(s.checks[i].kind))
      invalid("checks[" + std::to_string(i) + "]", "unknown check '" + s.checks[i].kind + "'");
    const auto& k = s.checks[i].kind;
    if ((k == "nesting" || k == "wind_drift" || k == "envelope") && !s.slice)
      invalid("checks[" + std::to_string(i) + "]", "check '" + k + "' needs a slice");
  }
}

bool RunReport::checks_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.passed; });
}

namespace {

struct Segment {
  double start = 0.0, end = 0.0;
  ZermeloData data;
  PropagationSettings settings;
  std::optional<FrontGeometry> front;  // initial front of the segment
  std::string error;
};

class Runner {
 public:
  explicit Runner(const Scenario& s) {
    spec_ = build_ellipsoid(s);
    metric_ = metric_field(spec_);
    front0_ = build_front(s);
    base_ = build_propagation_settings(s);
    slice_ = build_slice(s);
    for (auto& w : build_wind(s)) {
      Segment seg{w.t_start, w.t_end, ZermeloData(metric_, w.field), base_, std::nullopt, {}};
      if (!segments_.empty()) seg.settings.side = Side::Outward;
      segments_.push_back(std::move(seg));
    }
    segments_.front().front = front0_;
  }

  const Segment& segment(std::size_t i) { return segments_[i]; }
  std::size_t segment_count() const { return segments_.size(); }
  const FrontGeometry& initial_front() const { return front0_; }
  const PropagationSettings& settings() const { return base_; }
  const std::optional<SliceGrid>& slice() const { return slice_; }
  const EllipsoidSpec& spec() const { return spec_; }

  std::size_t segment_of(double t) const {
    for (std::size_t i = 0; i < segments_.size(); ++i)
      if (t <= segments_[i].end + 1e-12) return i;
    return segments_.size() - 1;
  }

  // Initial front of segment i, chaining the previous segments.
  const FrontGeometry& start_front(std::size_t i) {
    Segment& seg = segments_[i];
    if (seg.front) return *seg.front;
    if (!seg.error.empty()) throw Error(ErrorCode::InvalidArgument, seg.error);
    try {
      const FrontGeometry& prev = start_front(i - 1);
      const Segment& p = segments_[i - 1];
      const Wavefront w = propagate_front(p.data, prev, p.end - p.start, p.settings);
      seg.front = to_front(w, p.data);
    } catch (const Error& e) {
      seg.error = std::string("segment ") + std::to_string(i - 1) + " boundary at t=" + format_number(seg.start) +
                  ": " + e.what();
      throw Error(e.code(), seg.error);
    }
    return *seg.front;
  }

  Wavefront front_at(double t) {
    const std::size_t i = segment_of(t);
    const FrontGeometry& a = start_front(i);
    const Segment& seg = segments_[i];
    return propagate_front(seg.data, a, t - seg.start, seg.settings);
  }

  std::vector<Polyline> slice_of(const Wavefront& w) const {
    if (!slice_) return {};
    return slice_wavefront(w, slice_->plane);
  }

 private:
  EllipsoidSpec spec_;
  MetricField metric_ = MetricField::constant(SpdMatrix3::identity());
  FrontGeometry front0_;
  PropagationSettings base_;
  std::optional<SliceGrid> slice_;
  std::vector<Segment> segments_;
};

const Polyline* largest_closed(const std::vector<Polyline>& lines, const Plane& plane) {
  const Polyline* best = nullptr;
  double area = -1.0;
  for (const auto& l : lines) {
    if (!l.closed) continue;
    const double a = std::abs(enclosed_area(l, plane));
    if (a > area) {
      area = a;
      best = &l;
    }
  }
  return best;
}

std::vector<const FrontRecord*> positive_fronts(const RunReport& r) {
  std::vector<const FrontRecord*> out;
  for (const auto& f : r.fronts)
    if (f.tau > 0.0) out.push_back(&f);
  return out;
}

CheckOutcome check_nesting(const RunReport& r, const Plane& plane) {
  CheckOutcome out{"nesting", true, 0.0, 0.0, ""};
  const auto fronts = positive_fronts(r);
  std::size_t violations = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i + 1 < fronts.size(); ++i) {
    const Polyline* outer = largest_closed(fronts[i + 1]->slice, plane);
    if (!outer || fronts[i]->slice.empty()) {
      ++violations;
      out.detail = "missing closed slice contour at tau=" + format_number(fronts[i + 1]->tau);
      continue;
    }
    ++pairs;
    for (const auto& line : fronts[i]->slice) {
      bool inside = true;
      for (const auto& p : line.points) inside = inside && polygon_contains(*outer, plane, p);
      if (!inside || polylines_cross(line, *outer, plane)) {
        ++violations;
        out.detail = "front at tau=" + format_number(fronts[i]->tau) + " not nested in tau=" +
                     format_number(fronts[i + 1]->tau);
      }
    }
  }
  out.value = static_cast<double>(violations);
  out.passed = violations == 0 && fronts.size() >= 2;
  if (fronts.size() < 2) out.detail = "needs at least two fronts with positive time";
  if (out.passed) out.detail = std::to_string(fronts.size()) + " fronts, " + std::to_string(pairs) + " nested pairs";
  return out;
}

CheckOutcome check_wind_drift(const RunReport& r, Runner& run, const Plane& plane) {
  CheckOutcome out{"wind_drift", true, 0.0, 0.0, ""};
  const auto fronts = positive_fronts(r);
  if (fronts.size() < 2) {
    out.passed = false;
    out.detail = "needs at least two fronts with positive time";
    return out;
  }
  const Point3 c0 = run.initial_front().sample(run.settings().sampling).centroid();
  double worst = std::numeric_limits<double>::infinity();
  std::size_t steps = 0;
  for (std::size_t i = 0; i + 1 < fronts.size(); ++i) {
    const Polyline* a = largest_closed(fronts[i]->slice, plane);
    const Polyline* b = largest_closed(fronts[i + 1]->slice, plane);
    if (!a || !b) {
      out.passed = false;
      out.detail = "missing closed slice contour";
      return out;
    }
    const Vec3 w = run.segment(fronts[i + 1]->segment).data.wind().at(c0);
    const Vec2 w2(w.dot(plane.u), w.dot(plane.v));
    if (w2.norm() < 1e-12) continue;
    const Vec3 d = polygon_centroid(*b, plane) - polygon_centroid(*a, plane);
    const double along = Vec2(d.dot(plane.u), d.dot(plane.v)).dot(w2.normalized());
    worst = std::min(worst, along);
    ++steps;
  }
  if (steps == 0) {
    out.detail = "no in-plane wind; not applicable";
    return out;
  }
  out.value = worst;
  out.passed = worst > 0.0;
  out.detail = "smallest centroid step along the in-plane wind";
  return out;
}

double cloud_spacing(const std::vector<Point3>& pts) {
  if (pts.size() < 2) return 0.0;
  double sum = 0.0;
  const std::size_t stride = std::max<std::size_t>(1, pts.size() / 64);
  std::size_t n = 0;
  for (std::size_t i = 0; i < pts.size(); i += stride) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) best = std::min(best, (pts[j] - pts[i]).norm());
    sum += best;
    ++n;
  }
  return sum / static_cast<double>(n);
}

CheckOutcome check_semigroup(Runner& run, const CheckConfig& c) {
  CheckOutcome out{"semigroup", false, 0.0, 0.0, ""};
  const Segment& seg = run.segment(0);
  const double length = seg.end - seg.start;
  const double tau = std::min(c.tau.value_or(1.0), 0.5 * length);
  const FrontGeometry& a = run.start_front(0);
  const Wavefront once = propagate_front(seg.data, a, 2.0 * tau, seg.settings);
  PropagationSettings next = seg.settings;
  next.side = Side::Outward;
  const Wavefront half = propagate_front(seg.data, a, tau, seg.settings);
  const Wavefront twice = propagate_front(seg.data, to_front(half, seg.data), tau, next);
  if (run.slice()) {
    const auto la = run.slice_of(once), lb = run.slice_of(twice);
    if (!la.empty() && !lb.empty()) {
      out.tolerance = c.tolerance.value_or(std::max(2.0 * run.slice()->spacing(), 1e-3));
      out.value = hausdorff(la, lb);
      out.passed = out.value <= out.tolerance;
      out.detail = "slice Hausdorff distance, tau=" + format_number(tau) + " twice vs " + format_number(2.0 * tau);
      return out;
    }
  }
  const auto pa = once.positions(), pb = twice.positions();
  out.tolerance = c.tolerance.value_or(std::max(2.0 * std::max(cloud_spacing(pa), cloud_spacing(pb)), 1e-3));
  out.value = hausdorff_points(pa, pb);
  out.passed = out.value <= out.tolerance;
  out.detail = "sample Hausdorff distance, tau=" + format_number(tau) + " twice vs " + format_number(2.0 * tau);
  return out;
}

CheckOutcome check_envelope(Runner& run, const CheckConfig& c) {
  CheckOutcome out{"envelope", false, 0.0, 0.0, ""};
  const Segment& seg = run.segment(0);
  const double r = std::min(c.tau.value_or(1.0), seg.end - seg.start);
  const FrontGeometry& a = run.start_front(0);
  const auto seeds = a.sample(seg.settings.sampling).positions();
  HuygensSettings hs;
  hs.threads = seg.settings.threads;
  hs.mode = seg.settings.mode;
  hs.dt = seg.settings.dt;
  const Envelope env = huygens_step(seg.data, seeds, r, *run.slice(), hs);
  const auto rays = run.slice_of(propagate_front(seg.data, a, r, seg.settings));
  out.tolerance = c.tolerance.value_or(2.0 * run.slice()->spacing());
  if (env.contours.empty() || rays.empty()) {
    out.value = std::numeric_limits<double>::infinity();
    out.detail = "empty slice";
    return out;
  }
  out.value = hausdorff(env.contours, rays);
  out.passed = out.value <= out.tolerance;
  out.detail = "Huygens envelope vs ray front at r=" + format_number(r);
  return out;
}

std::vector<Launch> spread_launches(const LaunchPlan& plan, std::size_t count) {
  std::vector<Launch> out;
  const std::size_t n = plan.launches.size();
  for (std::size_t k = 0; k < std::min(count, n); ++k) out.push_back(plan.launches[k * n / std::min(count, n)]);
  return out;
}

CheckOutcome check_f_speed(Runner& run, const CheckConfig& c) {
  CheckOutcome out{"f_speed", false, 0.0, c.tolerance.value_or(1e-5), ""};
  const Segment& seg = run.segment(0);
  const double T = std::min(c.tau.value_or(seg.end - seg.start), seg.end - seg.start);
  const FrontGeometry& a = run.start_front(0);
  const auto launches = spread_launches(plan_launches(seg.data, a, seg.settings), 16);
  const ModeSelection mode = resolve_mode(seg.data, a, T, seg.settings);
  const auto rays = trace_fan(seg.data, launches, T, mode.mode, seg.settings, 1);
  double worst = 0.0;
  for (const auto& ray : rays)
    for (std::size_t k = 0; k < ray.size(); ++k)
      worst = std::max(worst, std::abs(eval_randers(seg.data, ray.x[k], ray.v[k]) - 1.0));
  out.value = worst;
  out.passed = worst <= out.tolerance;
  out.detail = std::to_string(rays.size()) + " rays over T=" + format_number(T) + " in " + to_string(mode.mode) +
               " mode";
  return out;
}

double chord_deviation(const Trajectory& ray) {
  const Point3 a = ray.x.front(), b = ray.x.back();
  const Vec3 d = b - a;
  const double len = d.norm();
  if (len == 0.0) return 0.0;
  double worst = 0.0;
  for (const auto& p : ray.x) worst = std::max(worst, (p - a).cross(d).norm() / len);
  return worst / len;
}

CheckOutcome check_straight_path(Runner& run, RunReport& report, const CheckConfig& c) {
  CheckOutcome out{"straight_path", false, 0.0, c.tolerance.value_or(1e-6), ""};
  const StrategicResult* result = nullptr;
  for (const auto& st : report.strategies)
    if (st.config.type == "all_equal" && st.result) {
      result = &*st.result;
      break;
    }
  std::optional<StrategicResult> own;
  if (!result) {
    const Segment& seg = run.segment(0);
    StrategySettings ss;
    ss.propagation = seg.settings;
    own = strategic_path_all_equal(seg.data, run.start_front(0), c.tau.value_or(seg.end - seg.start), ss);
    result = &*own;
  }
  out.value = chord_deviation(result->ray);
  out.passed = out.value <= out.tolerance;
  out.detail = "largest distance from the chord relative to its length";
  return out;
}

CheckOutcome check_orthogonal_launch(Runner& run, const CheckConfig& c) {
  CheckOutcome out{"orthogonal_launch", true, 0.0, c.tolerance.value_or(1e-8), ""};
  const Segment& seg = run.segment(0);
  const FrontGeometry& a = run.start_front(0);
  if (a.kind() == FrontKind::Point) {
    out.detail = "point front; not applicable";
    return out;
  }
  const SampledFront sampled = a.sample(seg.settings.sampling);
  const LaunchPlan plan = plan_launches(seg.data, a, seg.settings);
  double worst = 0.0;
  for (const auto& l : plan.launches) {
    const FrontSample& fs = sampled.samples[l.source];
    for (const Vec3& t : {fs.t1, fs.t2}) {
      if (t.norm() == 0.0) continue;
      worst = std::max(worst, std::abs(fundamental_tensor(seg.data, l.origin, l.v, l.v, t.normalized())));
    }
  }
  out.value = worst;
  out.passed = worst <= out.tolerance;
  out.detail = "largest |g_V(V, T)| over " + std::to_string(plan.launches.size()) + " launches";
  return out;
}

CheckOutcome check_lipschitz_field(Runner& run, const Scenario& s, const CheckConfig& c) {
  CheckOutcome out{"lipschitz", false, 0.0, 0.0, ""};
  const Segment& seg = run.segment(0);
  double horizon = seg.end - seg.start;
  for (const auto& t : s.times)
    if (t.value <= seg.end) horizon = std::max(1e-9, t.value);
  horizon = c.tau.value_or(horizon);
  ArrivalSettings as;
  as.propagation = seg.settings;
  const ArrivalField field = arrival_time_field(seg.data, run.start_front(0), *run.slice(), horizon, as);
  out.tolerance = c.tolerance.value_or(field.spacing());
  const LipschitzReport rep = check_lipschitz(field, seg.data, out.tolerance);
  out.value = rep.worst_excess;
  out.passed = rep.violations == 0;
  out.detail = std::to_string(rep.violations) + " of " + std::to_string(rep.edges_checked) + " grid edges violate";
  return out;
}

CheckOutcome check_indicatrix_equation(Runner& run, const Scenario& s, const CheckConfig& c) {
  CheckOutcome out{"indicatrix_equation", false, 0.0, c.tolerance.value_or(1e-9), ""};
  const auto quadric = fixtures::example1_indicatrix_equation(fixtures::constants_from_string(s.constants));
  const Segment& seg = run.segment(0);
  const Point3 p = run.initial_front().sample(seg.settings.sampling).centroid();
  const auto sample = sample_randers_indicatrix(run.spec(), seg.data.wind().at(p), p, 1.0, 512);
  double worst = 0.0;
  for (const auto& q : sample.points) worst = std::max(worst, std::abs(quadric.residual(q)));
  out.value = worst / std::max(1.0, std::abs(quadric.rhs));
  out.passed = out.value <= out.tolerance;
  out.detail = std::string("unit indicatrix against the example 1 quadric (") + fixtures::to_string(
                   fixtures::constants_from_string(s.constants)) + " constants)";
  return out;
}

}  // namespace

RunReport run_scenario(const Scenario& s, const RunOptions& options) {
  const auto clock_start = std::chrono::steady_clock::now();
  RunReport report;
  report.scenario = s.name;
  report.constants = s.constants;
  Runner run(s);
  if (run.slice()) {
    report.slice_plane = run.slice()->plane;
    report.slice_spacing = run.slice()->spacing();
  }

  for (std::size_t i = 0; i < run.segment_count(); ++i) {
    const Segment& seg = run.segment(i);
    SegmentRecord rec{i, seg.start, seg.end, RayMode::General, std::nullopt};
    try {
      const ModeSelection m = resolve_mode(seg.data, run.start_front(i), seg.end - seg.start, seg.settings);
      rec.mode = m.mode;
      rec.killing = m.killing;
    } catch (const Error& e) {
      report.errors.push_back("segment " + std::to_string(i) + ": " + e.what());
    }
    report.segments.push_back(rec);
  }

  for (const auto& t : s.times) {
    const std::size_t i = run.segment_of(t.value);
    try {
      FrontRecord rec;
      rec.tau = t.value;
      rec.segment = i;
      rec.front = run.front_at(t.value);
      rec.mode = rec.front.mode;
      rec.slice = run.slice_of(rec.front);
      report.fronts.push_back(std::move(rec));
    } catch (const Error& e) {
      report.errors.push_back("segment " + std::to_string(i) + ", tau=" + t.text + ": " + e.what());
    }
  }

  for (const auto& st : s.strategies) {
    StrategyRecord rec;
    rec.config = st;
    try {
      const Segment& seg = run.segment(0);
      StrategySettings ss;
      ss.propagation = seg.settings;
      ss.horizon = seg.end - seg.start;
      const FrontGeometry& a = run.start_front(0);
      if (st.type == "all_equal") {
        rec.result = strategic_path_all_equal(seg.data, a, st.tau.value, ss);
      } else if (st.type == "point") {
        rec.result = strategic_path_to_point(seg.data, a, vec(st.target), ss);
      } else {
        rec.result = strategic_path_to_region(seg.data, a, build_region(s, st.region), ss);
      }
      std::vector<double> times;
      for (const auto& d : st.deploy) times.push_back(d.value);
      if (!times.empty()) rec.deploy_points = strategic_points(*rec.result, times);
    } catch (const Error& e) {
      rec.error = e.what();
      report.errors.push_back("strategy " + st.type + ": " + e.what());
    }
    report.strategies.push_back(std::move(rec));
  }

  if (options.run_checks) {
    for (const auto& c : s.checks) {
      try {
        CheckOutcome o;
        if (c.kind == "nesting") o = check_nesting(report, run.slice()->plane);
        else if (c.kind == "wind_drift") o = check_wind_drift(report, run, run.slice()->plane);
        else if (c.kind == "semigroup") o = check_semigroup(run, c);
        else if (c.kind == "envelope") o = check_envelope(run, c);
        else if (c.kind == "f_speed") o = check_f_speed(run, c);
        else if (c.kind == "straight_path") o = check_straight_path(run, report, c);
        else if (c.kind == "orthogonal_launch") o = check_orthogonal_launch(run, c);
        else if (c.kind == "lipschitz") o = check_lipschitz_field(run, s, c);
        else o = check_indicatrix_equation(run, s, c);
        report.checks.push_back(o);
      } catch (const Error& e) {
        report.checks.push_back(CheckOutcome{c.kind, false, std::numeric_limits<double>::quiet_NaN(), 0.0, e.what()});
      }
    }
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
  return report;
}

}  // namespace wildfront
