#pragma once

#include "rmpsim/scenario.hpp"

namespace rmpsim {

/// Deterministic trajectory plot: per-robot polylines, start markers, goal
/// stars, and the formation edges drawn at the first and last sample.
std::string render_trajectory_svg(const ScenarioFile& file,
                                  const TrajectoryLog& log,
                                  int width = 640, int height = 640);

}  // namespace rmpsim
