#pragma once

// Scenario files: one named verification suite plus its parameters. Reports
// are plain JSON with sorted keys, so equal inputs give equal bytes.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fockmod {

inline constexpr int kReportVersion = 1;
inline constexpr double kDefaultTol = 1e-9;

/// Command-line overrides; unset fields fall back to the scenario, then defaults.
struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  bool parallel = false;
};

struct ScenarioOutcome {
  nlohmann::json report;
  bool pass = false;
  std::vector<std::string> lines;  // human-readable summary
};

/// JSON, or TOML when the extension is .toml. Throws ParseError.
nlohmann::json load_scenario_file(const std::filesystem::path& path);
nlohmann::json parse_scenario_text(const std::string& text, bool toml);

/// ParseError / UnsupportedKind for bad input; failures inside the checks
/// are recorded in the report instead of thrown.
ScenarioOutcome run_scenario(const nlohmann::json& scenario, const RunOptions& opts = {});

std::vector<std::string> scenario_kinds();
/// Kinds with their parameters, types and defaults.
nlohmann::json scenario_catalog();

}  // namespace fockmod
