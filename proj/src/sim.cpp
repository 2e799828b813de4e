#include "rmpsim/sim.hpp"

#include <cmath>

namespace rmpsim {

void Scenario::update_goals(double t) {
  for (const auto& orbit : orbits) {
    auto& st = subtasks.at(orbit.subtask);
    auto* params = std::get_if<GoalAttractorAParams>(&st.params);
    if (!params || !params->goal)
      throw std::invalid_argument(name + ": orbit subtask " +
                                  std::to_string(orbit.subtask) +
                                  " is not a goal attractor");
    const double a = orbit.phase + orbit.omega * t;
    Vec g = orbit.center;
    g(0) += orbit.radius * std::cos(a);
    g(1) += orbit.radius * std::sin(a);
    *params->goal = g;
  }
}

Vec Scenario::robot_position(const State& joint, int robot) const {
  return joint.x.segment(team.offset(robot), team.dims[robot]);
}

State step(const Policy& policy, const State& s, double dt,
           Integrator integrator) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
  if (integrator == Integrator::SemiImplicitEuler) {
    Vec v = s.xdot + dt * policy(s);
    Vec x = s.x + dt * v;
    return State(std::move(x), std::move(v));
  }
  // Classical RK4 on the first-order system (q, qdot).
  const Vec a1 = policy(s);
  const State s2(s.x + 0.5 * dt * s.xdot, s.xdot + 0.5 * dt * a1);
  const Vec a2 = policy(s2);
  const State s3(s.x + 0.5 * dt * s2.xdot, s.xdot + 0.5 * dt * a2);
  const Vec a3 = policy(s3);
  const State s4(s.x + dt * s3.xdot, s.xdot + dt * a3);
  const Vec a4 = policy(s4);
  return State(
      s.x + dt / 6.0 * (s.xdot + 2.0 * s2.xdot + 2.0 * s3.xdot + s4.xdot),
      s.xdot + dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4));
}

double total_potential(const RobotTeamSpec& team,
                       const std::vector<SubtaskAssignment>& subtasks,
                       const Vec& q) {
  double phi = 0.0;
  for (const auto& st : subtasks) {
    LeafPolicy policy = instantiate_leaf(team, st);
    Vec qs(participant_dim(team, st));
    int off = 0;
    for (int r : st.participants) {
      qs.segment(off, team.dims[r]) = q.segment(team.offset(r), team.dims[r]);
      off += team.dims[r];
    }
    phi += policy.leaf.potential(policy.map.value(qs));
  }
  return phi;
}

Vec total_potential_grad(const RobotTeamSpec& team,
                         const std::vector<SubtaskAssignment>& subtasks,
                         const Vec& q) {
  Vec grad = Vec::Zero(q.size());
  for (const auto& st : subtasks) {
    LeafPolicy policy = instantiate_leaf(team, st);
    Vec qs(participant_dim(team, st));
    int off = 0;
    for (int r : st.participants) {
      qs.segment(off, team.dims[r]) = q.segment(team.offset(r), team.dims[r]);
      off += team.dims[r];
    }
    const Vec g = policy.map.jacobian(qs).transpose() *
                  policy.leaf.potential_grad(policy.map.value(qs));
    off = 0;
    for (int r : st.participants) {
      grad.segment(team.offset(r), team.dims[r]) +=
          g.segment(off, team.dims[r]);
      off += team.dims[r];
    }
  }
  return grad;
}

DiagnosticsRow diagnostics(const Scenario& scenario, const State& joint) {
  DiagnosticsRow row;
  const auto& team = scenario.team;
  row.min_distance = std::numeric_limits<double>::infinity();
  for (int i = 0; i < team.count(); ++i)
    for (int j = i + 1; j < team.count(); ++j)
      row.min_distance =
          std::min(row.min_distance, (scenario.robot_position(joint, i) -
                                      scenario.robot_position(joint, j))
                                         .norm());
  for (size_t e = 0; e < scenario.formation_edges.size(); ++e) {
    const auto& [i, j] = scenario.formation_edges[e];
    const double d = (scenario.robot_position(joint, i) -
                      scenario.robot_position(joint, j))
                         .norm();
    row.max_edge_error =
        std::max(row.max_edge_error, std::abs(d - scenario.formation_dists[e]));
  }
  for (int i = 0; i < team.count(); ++i)
    row.max_speed = std::max(
        row.max_speed,
        joint.xdot.segment(team.offset(i), team.dims[i]).norm());
  row.grad_norm =
      total_potential_grad(team, scenario.subtasks, joint.x)
          .cwiseAbs()
          .maxCoeff();
  return row;
}

TrajectoryLog run(Scenario& scenario, const SimConfig& config) {
  config.validate();
  scenario.update_goals(0.0);

  std::optional<RmpTree> tree;
  std::optional<RmpForest> forest;
  Policy policy;
  std::function<double(const State&)> lyapunov;
  if (config.mode == Mode::Centralized) {
    tree.emplace(
        build_rmp_tree(scenario.team, scenario.subtasks, TreeLayout::Grouped));
    policy = [&t = *tree, parallel = config.parallel](const State& s) {
      return t.policy(s, parallel).a;
    };
    lyapunov = [&t = *tree](const State& s) {
      return lyapunov_centralized(t, s);
    };
  } else {
    forest.emplace(scenario.team, scenario.subtasks);
    policy = [&f = *forest, parallel = config.parallel](const State& s) {
      const std::vector<Vec> per_robot =
          compute_control_decentralized_all(f, s, parallel);
      Vec a(s.dim());
      int off = 0;
      for (const Vec& ai : per_robot) {
        a.segment(off, ai.size()) = ai;
        off += static_cast<int>(ai.size());
      }
      return a;
    };
    lyapunov = [&f = *forest](const State& s) {
      return lyapunov_decentralized(f, s);
    };
  }

  const long n_steps =
      static_cast<long>(std::floor(config.t_final / config.dt + 1e-9));

  TrajectoryLog log;
  State state = scenario.initial;
  auto sample = [&](long step_index) {
    const double t = step_index * config.dt;
    DiagnosticsRow row = diagnostics(scenario, state);
    row.t = t;
    row.lyapunov = lyapunov(state);
    log.times.push_back(t);
    log.states.push_back(state);
    log.diagnostics.push_back(row);
  };

  try {
    sample(0);
    for (long s = 0; s < n_steps; ++s) {
      scenario.update_goals(s * config.dt);
      // Goals are frozen within the step: the Lyapunov decrease is checked
      // against the quasi-static potential of this step.
      const double v_pre = lyapunov(state);
      state = step(policy, state, config.dt, config.integrator);
      if (!state.finite())
        throw EvalError(scenario.name, "non-finite state at step " +
                                           std::to_string(s));
      const double v_post = lyapunov(state);
      log.max_lyapunov_increase =
          std::max(log.max_lyapunov_increase, v_post - v_pre);
      log.steps_completed = s + 1;
      if ((s + 1) % config.cadence == 0 || s + 1 == n_steps) sample(s + 1);
    }
  } catch (const BarrierDomainError& e) {
    log.terminated_early = true;
    log.termination_reason = std::string("barrier-domain: ") + e.what();
  } catch (const EvalError& e) {
    log.terminated_early = true;
    log.termination_reason = e.what();
  }
  return log;
}

}  // namespace rmpsim
