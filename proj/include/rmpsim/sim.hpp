#pragma once

#include <functional>
#include <optional>

#include "rmpsim/centralized.hpp"
#include "rmpsim/decentralized.hpp"

namespace rmpsim {

enum class Integrator { Rk4, SemiImplicitEuler };
enum class Mode { Centralized, Decentralized };

struct SimConfig {
  double dt = 0.01;
  double t_final = 10.0;
  Integrator integrator = Integrator::Rk4;
  Mode mode = Mode::Centralized;
  int cadence = 1;  // diagnostics every this many steps
  bool parallel = false;

  void validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("sim: dt must be > 0");
    if (!(t_final >= dt))
      throw std::invalid_argument("sim: t_final must be >= dt");
    if (cadence < 1) throw std::invalid_argument("sim: cadence must be >= 1");
  }
};

/// A goal that tracks a point moving along a circle; re-sampled once per
/// control step and held constant within the step.
struct OrbitGoal {
  int subtask = -1;  // index of a goal_attractor_a subtask
  Vec center;
  double radius = 1.0;
  double omega = 0.06;  // rad/s
  double phase = 0.0;
};

struct Scenario {
  std::string name;
  RobotTeamSpec team;
  std::vector<SubtaskAssignment> subtasks;
  State initial;
  // formation graph used by the edge-error diagnostic
  std::vector<std::pair<int, int>> formation_edges;
  std::vector<double> formation_dists;
  std::vector<OrbitGoal> orbits;
  SimConfig sim;

  /// Writes each orbit goal position for time t into its attractor.
  void update_goals(double t);
  Vec robot_position(const State& joint, int robot) const;
};

struct DiagnosticsRow {
  double t = 0.0;
  double lyapunov = 0.0;
  double min_distance = 0.0;   // min over all robot pairs
  double max_edge_error = 0.0; // max |dist - d_ij| over formation edges
  double max_speed = 0.0;
  double grad_norm = 0.0;      // max-norm of the total potential gradient
};

struct TrajectoryLog {
  std::vector<double> times;
  std::vector<State> states;  // joint states at the sampled times
  std::vector<DiagnosticsRow> diagnostics;
  // max over steps of V(step end) - V(step start), goals frozen per step
  double max_lyapunov_increase = -std::numeric_limits<double>::infinity();
  long steps_completed = 0;
  bool terminated_early = false;
  std::string termination_reason;
};

using Policy = std::function<Vec(const State&)>;  // joint accel from state

/// One fixed step of the configured integrator for qddot = policy(q, qdot).
State step(const Policy& policy, const State& s, double dt,
           Integrator integrator);

/// Full closed-loop rollout with diagnostics. Terminates early on barrier
/// domain errors or a non-finite state; the event is recorded in the log.
TrajectoryLog run(Scenario& scenario, const SimConfig& config);

/// Diagnostics for one joint state (Lyapunov field left empty).
DiagnosticsRow diagnostics(const Scenario& scenario, const State& joint);

/// Total leaf potential and its gradient on the root chart, shared by both
/// modes' Lyapunov monitors.
double total_potential(const RobotTeamSpec& team,
                       const std::vector<SubtaskAssignment>& subtasks,
                       const Vec& q);
Vec total_potential_grad(const RobotTeamSpec& team,
                         const std::vector<SubtaskAssignment>& subtasks,
                         const Vec& q);

}  // namespace rmpsim
