#pragma once

#include <filesystem>

#include "rmpsim/sim.hpp"

namespace rmpsim {

struct OutputConfig {
  std::string dir = "out";
  bool plot = false;
};

/// Scenario plus its serialization envelope (robot ids, output options).
struct ScenarioFile {
  Scenario scenario;
  std::vector<int> robot_ids;  // external ids, ascending, one per robot
  OutputConfig outputs;
  std::string metadata;  // free-form provenance note
};

/// Parses a scenario document. Throws std::invalid_argument with a
/// field-anchored message on schema violations.
ScenarioFile parse_scenario(const std::string& json_text);
ScenarioFile load_scenario(const std::filesystem::path& path);

/// Inverse of parse_scenario, field for field.
std::string emit_scenario(const ScenarioFile& file);

/// Built-in scenarios: fig3a, fig3b, fig7, fig8-centralized,
/// fig8-decentralized, cyclic-pursuit.
ScenarioFile builtin_scenario(const std::string& name);
std::vector<std::string> builtin_names();

/// trajectory.csv: t, then per-robot x, y, vx, vy.
std::string emit_csv(const ScenarioFile& file, const TrajectoryLog& log);

/// summary.json: final diagnostics, Lyapunov and min-distance series,
/// convergence flags, termination record.
std::string emit_summary(const ScenarioFile& file, const TrajectoryLog& log);

}  // namespace rmpsim
