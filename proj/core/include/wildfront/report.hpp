#pragma once

#include "wildfront/scenario.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace wildfront {

inline constexpr const char* kFrontsSchema = "wildfront.fronts.v1";
inline constexpr const char* kReportSchema = "wildfront.report.v1";
inline constexpr const char* kTrajectoriesSchema = "wildfront.trajectories.v1";
inline constexpr const char* kStrategySchema = "wildfront.strategy.v1";

void write_fronts_csv(const RunReport& report, std::ostream& out);
void write_trajectories_csv(const RunReport& report, std::ostream& out);
std::string report_json(const RunReport& report);
std::string strategy_json(const RunReport& report);

// Reads back what rendering needs: slice plane, fronts with their slice contours
// and the strategic rays.
RunReport report_from_json(const std::string& text);
RunReport load_report(const std::filesystem::path& path);

// Writes every configured output into `directory` (the scenario's output directory
// when empty) and returns the paths written.
std::vector<std::filesystem::path> write_outputs(const RunReport& report, const Scenario& s,
                                                 const std::filesystem::path& directory = {});

}  // namespace wildfront
