#include "wildfront/report.hpp"
#include "wildfront/scenario.hpp"

#include <gtest/gtest.h>

#include <string>

using namespace wildfront;

namespace {

const char* kFixtures[] = {"example1_case1", "example1_case2", "example1_case3", "example2_case1", "example2_case2"};

std::string path_of(const std::string& name) { return std::string(WILDFRONT_SCENARIO_DIR) + "/" + name + ".json"; }

const std::string kMinimal = R"({
  "name": "unit",
  "ellipsoid": {"a": 1, "b": 1, "c": 1},
  "wind": [{"start": 0, "end": 2, "type": "constant", "value": [0, 0, 0]}],
  "front": {"type": "point", "point": [0, 0, 0]},
  "times": [1],
  "slice": {"axis": "z", "lo": [-2, -2], "hi": [2, 2], "nodes": 101}
})";

ErrorCode code_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorCode::InvalidArgument;
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST(Scenario, FixturesParseAndRoundTrip) {
  for (const char* name : kFixtures) {
    const Scenario s = load_scenario(path_of(name));
    EXPECT_EQ(s.name, name);
    const std::string text = serialize_scenario(s);
    const Scenario again = parse_scenario(text, s.base_dir);
    EXPECT_TRUE(s == again) << name;
    EXPECT_EQ(serialize_scenario(again), text) << name;
  }
}

TEST(Scenario, Example1Contents) {
  const Scenario s = load_scenario(path_of("example1_case1"));
  EXPECT_EQ(s.ellipsoid.a, "1/2");
  EXPECT_EQ(s.ellipsoid.alpha, "pi/6");
  ASSERT_EQ(s.wind.size(), 1u);
  EXPECT_DOUBLE_EQ(s.wind[0].value[1].value, 1.0 / 3);
  EXPECT_EQ(s.times.size(), 10u);
  EXPECT_DOUBLE_EQ(s.times.back().value, 10.0);
  const Scenario c = load_scenario(path_of("example1_case2"));
  EXPECT_EQ(c.front.type, "curve");
  EXPECT_EQ(c.front.components[0], "cos(s)*(cos(s)+6)/4");
}

TEST(Scenario, ParametersSubstitute) {
  const Scenario s = load_scenario(path_of("example2_case1"));
  EXPECT_DOUBLE_EQ(s.parameters.at("k"), 0.1);
  EXPECT_DOUBLE_EQ(s.wind[0].matrix[0][1].value, 0.1);
  EXPECT_EQ(s.wind[0].matrix[0][1].text, "k");
  const auto segments = build_wind(s);
  EXPECT_LT((segments[0].field.at(Point3(0, 2, 0)) - Vec3(0.2, 0, 0)).norm(), 1e-15);
}

TEST(Scenario, ParseErrorHasLocation) {
  try {
    parse_scenario("{\n  \"name\": \"x\",\n  \"times\": [1,, 2]\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_GT(e.column(), 1);
  }
}

TEST(Scenario, ValidationErrors) {
  EXPECT_EQ(code_of(replace(kMinimal, R"("end": 2, "type": "constant", "value": [0, 0, 0]})",
                            R"("end": 2, "type": "constant", "value": [0, 0, 0]},
                               {"start": 1, "end": 3, "type": "constant", "value": [0, 0, 0]})")),
            ErrorCode::ValidationError);
  EXPECT_EQ(code_of(replace(kMinimal, "\"name\"", "\"colour\": 1, \"name\"")), ErrorCode::ValidationError);
  EXPECT_EQ(code_of(replace(kMinimal, "\"value\": [0, 0, 0]", "\"value\": [1.5, 0, 0]")), ErrorCode::ValidationError);
  EXPECT_EQ(code_of(replace(kMinimal, "\"a\": 1", "\"a\": \"1 +\"")), ErrorCode::ValidationError);
  EXPECT_EQ(code_of(replace(kMinimal, "\"a\": 1", "\"a\": \"y - 5\"")), ErrorCode::ValidationError);
  EXPECT_EQ(code_of(replace(kMinimal, "\"times\": [1]", "\"times\": [3]")), ErrorCode::ValidationError);
  EXPECT_EQ(code_of(replace(kMinimal, "\"times\": [1]", "\"times\": [1, 0.5]")), ErrorCode::ValidationError);
  EXPECT_EQ(code_of(replace(kMinimal, "\"times\": [1]", "\"times\": [1], \"checks\": [\"colour\"]")),
            ErrorCode::ValidationError);
  EXPECT_EQ(code_of(replace(kMinimal, "\"name\"", "\"parameters\": {\"x\": 1}, \"name\"")),
            ErrorCode::ValidationError);
  EXPECT_EQ(code_of(replace(kMinimal, "\"point\": [0, 0, 0]", "\"point\": [0, 0]")), ErrorCode::ValidationError);
}

TEST(Scenario, FileScenarioRejectsOverlap) {
  try {
    load_scenario(std::string(WILDFRONT_SCENARIO_DIR) + "/../tests/data/overlapping_segments.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValidationError);
  }
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), Error);
}

TEST(Scenario, TrivialUnitSphere) {
  const Scenario s = parse_scenario(kMinimal);
  const RunReport r = run_scenario(s);
  EXPECT_TRUE(r.errors.empty());
  ASSERT_EQ(r.fronts.size(), 1u);
  EXPECT_EQ(r.fronts[0].mode, RayMode::Constant);
  for (const auto& p : r.fronts[0].front.samples) EXPECT_NEAR(p.x.norm(), 1.0, 1e-12);
  ASSERT_FALSE(r.fronts[0].slice.empty());
  EXPECT_TRUE(r.fronts[0].slice[0].closed);
}

TEST(Scenario, SegmentChainingMatchesSingleSegment) {
  const std::string base = replace(replace(kMinimal, "\"value\": [0, 0, 0]", "\"value\": [0.2, 0.1, 0]"),
                                   "\"times\": [1]", "\"times\": [2]");
  const std::string two = replace(base, R"({"start": 0, "end": 2, "type": "constant", "value": [0.2, 0.1, 0]})",
                                  R"({"start": 0, "end": 1, "type": "constant", "value": [0.2, 0.1, 0]},
                                     {"start": 1, "end": 2, "type": "constant", "value": [0.2, 0.1, 0]})");
  const std::string big = replace(base, R"("lo": [-2, -2], "hi": [2, 2])", R"("lo": [-3, -3], "hi": [3, 3])");
  const std::string big_two = replace(two, R"("lo": [-2, -2], "hi": [2, 2])", R"("lo": [-3, -3], "hi": [3, 3])");
  const RunReport a = run_scenario(parse_scenario(big));
  const RunReport b = run_scenario(parse_scenario(big_two));
  ASSERT_EQ(a.fronts.size(), 1u);
  ASSERT_EQ(b.fronts.size(), 1u);
  EXPECT_EQ(b.fronts[0].segment, 1u);
  EXPECT_LE(hausdorff(a.fronts[0].slice, b.fronts[0].slice), 2 * a.slice_spacing);
}

TEST(Scenario, ErrorsCarryContext) {
  const std::string text = replace(kMinimal, "\"times\": [1]",
                                   R"("times": [1], "strategy": [{"type": "point", "target": [0, 0, 50]}])");
  const RunReport r = run_scenario(parse_scenario(text));
  ASSERT_EQ(r.strategies.size(), 1u);
  EXPECT_FALSE(r.strategies[0].result.has_value());
  EXPECT_FALSE(r.strategies[0].error.empty());
  ASSERT_FALSE(r.errors.empty());
  EXPECT_NE(r.errors[0].find("strategy point"), std::string::npos);
}

TEST(Scenario, RunIsDeterministic) {
  const Scenario s = load_scenario(path_of("example1_case2"));
  const RunReport a = run_scenario(s), b = run_scenario(s);
  EXPECT_EQ(report_json(a), report_json(b));
  EXPECT_TRUE(a.checks_passed());
}

TEST(Scenario, ModeSelectedPerSegment) {
  const RunReport r = run_scenario(load_scenario(path_of("example2_case2")), RunOptions{false});
  ASSERT_EQ(r.segments.size(), 2u);
  for (const auto& seg : r.segments) {
    EXPECT_EQ(seg.mode, RayMode::General);
    ASSERT_TRUE(seg.killing.has_value());
    EXPECT_FALSE(seg.killing->killing);
  }
  EXPECT_TRUE(r.checks.empty());
}
