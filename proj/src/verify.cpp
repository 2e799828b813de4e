#include "rmpsim/verify.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

namespace rmpsim {
namespace verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<Vec> pentagon(double radius) {
  std::vector<Vec> pts;
  for (int k = 0; k < 5; ++k) {
    const double a = std::numbers::pi / 2.0 + k * 2.0 * std::numbers::pi / 5.0;
    pts.push_back((Vec(2) << radius * std::cos(a), radius * std::sin(a))
                      .finished());
  }
  return pts;
}

/// Joint state with robots at least `min_sep` apart, coordinates in [-2, 2],
/// velocities in [-1, 1].
State random_separated_state(std::mt19937& rng, int robots, double min_sep) {
  std::uniform_real_distribution<double> upos(-2.0, 2.0), uvel(-1.0, 1.0);
  std::vector<Eigen::Vector2d> pts;
  while (static_cast<int>(pts.size()) < robots) {
    Eigen::Vector2d p(upos(rng), upos(rng));
    bool ok = true;
    for (const auto& q : pts)
      if ((p - q).norm() < min_sep) ok = false;
    if (ok) pts.push_back(p);
  }
  Vec q(2 * robots), qd(2 * robots);
  for (int i = 0; i < robots; ++i) {
    q.segment<2>(2 * i) = pts[i];
    qd(2 * i) = uvel(rng);
    qd(2 * i + 1) = uvel(rng);
  }
  return State(std::move(q), std::move(qd));
}

/// Fixed-step RK4 rollout of an arbitrary joint policy, sampled every step
/// on the same grid run() uses.
TrajectoryLog rollout(const Policy& policy, const State& initial, double dt,
                      long n_steps) {
  TrajectoryLog log;
  State s = initial;
  log.times.push_back(0.0);
  log.states.push_back(s);
  for (long k = 0; k < n_steps; ++k) {
    s = step(policy, s, dt, Integrator::Rk4);
    log.times.push_back((k + 1) * dt);
    log.states.push_back(s);
  }
  return log;
}

oracle::PotentialGraph formation_graph(const Scenario& sc, double eta) {
  oracle::PotentialGraph graph;
  graph.robots = sc.team.count();
  graph.eta = eta;
  for (size_t e = 0; e < sc.formation_edges.size(); ++e)
    graph.edges.push_back({sc.formation_edges[e].first,
                           sc.formation_edges[e].second,
                           {PairPotential::Kind::Quadratic,
                            sc.formation_dists[e]}});
  return graph;
}

Vec stack(const std::vector<Vec>& per_robot) {
  int dim = 0;
  for (const auto& v : per_robot) dim += static_cast<int>(v.size());
  Vec out(dim);
  int off = 0;
  for (const auto& v : per_robot) {
    out.segment(off, v.size()) = v;
    off += static_cast<int>(v.size());
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

}  // namespace

CriterionResult controller_equivalence() {
  CriterionResult r{1, "controller-equivalence", false, 0.0, 1e-9, ""};
  const auto t0 = Clock::now();

  ScenarioFile file = builtin_scenario("fig7");
  Scenario sc = file.scenario;
  TrajectoryLog rmp_log = run(sc, sc.sim);

  const oracle::PotentialGraph graph = formation_graph(sc, 2.0);
  Policy eq9 = [&](const State& s) {
    return stack(oracle::eq9_formation_controller(graph, s));
  };
  const long n_steps =
      static_cast<long>(std::floor(sc.sim.t_final / sc.sim.dt + 1e-9));
  TrajectoryLog ref_log = rollout(eq9, sc.initial, sc.sim.dt, n_steps);

  const double runtime = seconds_since(t0);
  r.measured = oracle::compare_trajectories(rmp_log, ref_log, sc.team);
  r.pass = !rmp_log.terminated_early && r.measured <= r.tolerance &&
           runtime < 5.0;
  r.detail = "max position deviation over " + std::to_string(n_steps) +
             " steps; runtime " + fmt(runtime) + " s";
  return r;
}

CriterionResult collision_free() {
  CriterionResult r{2, "collision-free", false, 0.0, 0.1, ""};
  const auto t0 = Clock::now();

  ScenarioFile file = builtin_scenario("fig8-centralized");
  Scenario sc = file.scenario;
  TrajectoryLog log = run(sc, sc.sim);

  double min_dist = std::numeric_limits<double>::infinity();
  for (const auto& row : log.diagnostics)
    min_dist = std::min(min_dist, row.min_distance);
  const double runtime = seconds_since(t0);
  r.measured = min_dist;
  r.pass = !log.terminated_early && min_dist > r.tolerance && runtime < 10.0;
  r.detail = "min pairwise distance must stay above d_s = 0.1; runtime " +
             fmt(runtime) + " s" +
             (log.terminated_early ? "; early termination: " +
                                         log.termination_reason
                                   : "");
  return r;
}

CriterionResult centralized_stability() {
  CriterionResult r{3, "centralized-stability", false, 0.0, 1e-6, ""};
  r.measured = -std::numeric_limits<double>::infinity();
  bool converged = true;
  std::string detail;
  for (const char* name : {"fig3a", "fig7"}) {
    ScenarioFile file = builtin_scenario(name);
    Scenario sc = file.scenario;
    SimConfig cfg = sc.sim;
    cfg.dt = 1e-3;
    cfg.cadence = 100;
    cfg.parallel = true;
    TrajectoryLog log = run(sc, cfg);
    const auto& last = log.diagnostics.back();
    r.measured = std::max(r.measured, log.max_lyapunov_increase);
    const bool ok = !log.terminated_early && last.max_speed < 1e-3 &&
                    last.grad_norm < 1e-3;
    converged = converged && ok;
    detail += std::string(name) + ": dV_max=" +
              fmt(log.max_lyapunov_increase) + " speed=" +
              fmt(last.max_speed) + " grad=" + fmt(last.grad_norm) + "; ";
  }
  r.pass = r.measured <= r.tolerance && converged;
  r.detail = detail + "(max per-step Lyapunov increase at dt=1e-3)";
  return r;
}

CriterionResult decentralized_stability() {
  CriterionResult r{4, "decentralized-stability", false, 0.0, 1e-6, ""};
  r.measured = -std::numeric_limits<double>::infinity();
  bool clean = true;
  std::string detail;
  for (const char* name : {"fig8-decentralized", "cyclic-pursuit"}) {
    ScenarioFile file = builtin_scenario(name);
    Scenario sc = file.scenario;
    SimConfig cfg = sc.sim;
    cfg.dt = 1e-3;
    cfg.cadence = 100;
    cfg.parallel = true;
    TrajectoryLog log = run(sc, cfg);
    r.measured = std::max(r.measured, log.max_lyapunov_increase);
    clean = clean && !log.terminated_early;
    detail += std::string(name) + ": dV_max=" +
              fmt(log.max_lyapunov_increase) + "; ";
  }
  r.pass = clean && r.measured <= r.tolerance;
  r.detail = detail + "(V = sum K_i + Phi, goals frozen per step)";
  return r;
}

CriterionResult partial_flow_equivalence() {
  CriterionResult r{5, "partial-flow-equivalence", false, 0.0, 1e-10, ""};
  std::mt19937 rng(20240);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;

  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    RobotTeamSpec team = RobotTeamSpec::planar(n);
    std::vector<SubtaskAssignment> subtasks;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        DistancePreservationBParams p;
        p.d_ij = 0.5 + u01(rng);
        p.c = 0.5 + 1.5 * u01(rng);
        p.eta = 0.5 + 2.5 * u01(rng);
        p.pair_potential = (trial + i + j) % 2 == 0
                               ? PairPotential::Kind::Quadratic
                               : PairPotential::Kind::Quartic;
        subtasks.push_back({"edge", {i, j}, p});
      }
    for (int i = 0; i < n; ++i)
      subtasks.push_back(
          {"damper", {i}, DamperParams{0.01 + u01(rng), 0.5 + 1.5 * u01(rng)}});

    const State s = random_separated_state(rng, n, 0.3);
    RmpTree tree = build_rmp_tree(team, subtasks);
    const std::vector<Vec> central = compute_control(tree, team, s);
    RmpForest forest(team, subtasks);
    const std::vector<Vec> local = compute_control_decentralized_all(forest, s);
    for (int i = 0; i < n; ++i)
      worst =
          std::max(worst, (central[i] - local[i]).cwiseAbs().maxCoeff());
  }
  r.measured = worst;
  r.pass = worst <= r.tolerance;
  r.detail = "per-robot acceleration, centralized vs decentralized, "
             "100 random constant-metric configurations of 2-6 robots";
  return r;
}

CriterionResult degree_normalization() {
  CriterionResult r{6, "degree-normalization", false, 0.0, 1e-3, ""};

  const auto start = pentagon(1.0);
  const auto target = pentagon(0.4);
  Scenario sc;
  sc.team = RobotTeamSpec::planar(5);
  Vec q(10);
  for (int i = 0; i < 5; ++i) q.segment<2>(2 * i) = start[i];
  State initial(q, Vec::Zero(10));

  oracle::PotentialGraph graph;
  graph.robots = 5;
  graph.eta = 2.0;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      graph.edges.push_back(
          {i, j, {PairPotential::Kind::Quadratic,
                  (target[i] - target[j]).norm()}});

  auto grad_inf = [&](const State& s) {
    double g = 0.0;
    std::vector<Eigen::Vector2d> grad(5, Eigen::Vector2d::Zero());
    for (const auto& e : graph.edges) {
      const Eigen::Vector2d d =
          s.x.segment<2>(2 * e.i) - s.x.segment<2>(2 * e.j);
      const double sep = d.norm();
      const Eigen::Vector2d ge = 0.5 * e.potential.deriv(sep) * d / sep;
      grad[e.i] += ge;
      grad[e.j] -= ge;
    }
    for (const auto& v : grad) g = std::max(g, v.cwiseAbs().maxCoeff());
    return g;
  };
  auto edge_lengths = [&](const State& s) {
    std::vector<double> lens;
    for (const auto& e : graph.edges)
      lens.push_back(
          (s.x.segment<2>(2 * e.i) - s.x.segment<2>(2 * e.j)).norm());
    std::sort(lens.begin(), lens.end());
    return lens;
  };

  State finals[2];
  bool settled = true;
  std::string detail;
  for (int variant = 0; variant < 2; ++variant) {
    const bool normalized = variant == 1;
    Policy policy = [&, normalized](const State& s) {
      return stack(oracle::potential_controller(graph, s, normalized));
    };
    State s = initial;
    const long n_steps = 6000;  // 60 s at dt = 0.01
    for (long k = 0; k < n_steps; ++k)
      s = step(policy, s, 0.01, Integrator::Rk4);
    finals[variant] = s;
    const double g = grad_inf(s);
    const double v = s.xdot.cwiseAbs().maxCoeff();
    settled = settled && g < 1e-3 && v < 1e-3;
    detail += std::string(normalized ? "normalized" : "original") +
              ": grad=" + fmt(g) + " speed=" + fmt(v) + "; ";
  }

  const auto la = edge_lengths(finals[0]);
  const auto lb = edge_lengths(finals[1]);
  double diff = 0.0;
  for (size_t k = 0; k < la.size(); ++k)
    diff = std::max(diff, std::abs(la[k] - lb[k]));
  r.measured = diff;
  r.pass = settled && diff <= r.tolerance;
  r.detail = detail + "sorted final edge-length sets compared";
  return r;
}

CriterionResult formation_contrast() {
  CriterionResult r{7, "formation-contrast", false, 0.0, 0.05, ""};

  double transit[2] = {0.0, 0.0};
  double rel_final[2] = {0.0, 0.0};
  double leader_dist[2] = {0.0, 0.0};
  bool clean = true;
  for (int variant = 0; variant < 2; ++variant) {
    ScenarioFile file = builtin_scenario(variant == 0 ? "fig3a" : "fig3b");
    Scenario sc = file.scenario;
    TrajectoryLog log = run(sc, sc.sim);
    clean = clean && !log.terminated_early;
    int leader = 0;
    const Vec* goal = nullptr;
    for (const auto& st : sc.subtasks)
      if (const auto* a = std::get_if<GoalAttractorAParams>(&st.params)) {
        leader = st.participants[0];
        goal = a->goal.get();
      }
    // Transit = samples before the leader enters the attractor's near-field
    // transition region (2 sigma = 0.2 m), where braking causes a separate
    // arrival transient; the formation-quality contrast is about the pull.
    for (size_t s = 0; s < log.states.size(); ++s) {
      const double dist =
          (sc.robot_position(log.states[s], leader) - *goal).norm();
      if (dist < 0.2) break;
      transit[variant] =
          std::max(transit[variant], log.diagnostics[s].max_edge_error);
    }
    const State& last = log.states.back();
    for (size_t e = 0; e < sc.formation_edges.size(); ++e) {
      const auto& [i, j] = sc.formation_edges[e];
      const double d = (sc.robot_position(last, i) -
                        sc.robot_position(last, j))
                           .norm();
      rel_final[variant] =
          std::max(rel_final[variant],
                   std::abs(d - sc.formation_dists[e]) /
                       sc.formation_dists[e]);
    }
    for (const auto& st : sc.subtasks)
      if (const auto* a = std::get_if<GoalAttractorAParams>(&st.params))
        leader_dist[variant] =
            (sc.robot_position(last, st.participants[0]) - *a->goal).norm();
  }
  r.measured = rel_final[0];
  r.pass = clean && transit[0] < transit[1] && rel_final[0] < 0.05 &&
           leader_dist[0] < 0.05;
  r.detail = "transit max edge error: 1-d edges " + fmt(transit[0]) +
             " vs product edges " + fmt(transit[1]) +
             "; 1-d final relative edge error " + fmt(rel_final[0]) +
             "; leader-goal distance " + fmt(leader_dist[0]);
  return r;
}

CriterionResult curvature_correctness() {
  CriterionResult r{8, "curvature-correctness", false, 0.0, 1e-5, ""};
  std::mt19937 rng(7701);
  std::uniform_real_distribution<double> u01(0.0, 1.0), us(-1.0, 1.0);
  double worst = 0.0;

  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 3;
    // G(x, xdot) = c0 I + sum_r (2 + sin(a_r.x)) (1 + (b_r.xdot)^2) v_r v_r'
    const double c0 = 0.5 + u01(rng);
    std::vector<Vec> as, bs, vs;
    for (int rterm = 0; rterm < 2; ++rterm) {
      Vec a(n), b(n), v(n);
      for (int k = 0; k < n; ++k) {
        a(k) = us(rng);
        b(k) = us(rng);
        v(k) = us(rng);
      }
      as.push_back(a);
      bs.push_back(b);
      vs.push_back(v);
    }
    auto metric = [=](const Vec& x, const Vec& xd) {
      Mat G = c0 * Mat::Identity(x.size(), x.size());
      for (int rt = 0; rt < 2; ++rt) {
        const double w = (2.0 + std::sin(as[rt].dot(x))) *
                         (1.0 + std::pow(bs[rt].dot(xd), 2));
        G += w * vs[rt] * vs[rt].transpose();
      }
      return G;
    };

    GdsLeaf analytic;
    analytic.dim = n;
    analytic.name = "random-metric";
    analytic.metric = metric;
    analytic.metric_dx = [=](const Vec& x, const Vec& xd, int j) {
      Mat D = Mat::Zero(x.size(), x.size());
      for (int rt = 0; rt < 2; ++rt) {
        const double w = std::cos(as[rt].dot(x)) * as[rt](j) *
                         (1.0 + std::pow(bs[rt].dot(xd), 2));
        D += w * vs[rt] * vs[rt].transpose();
      }
      return D;
    };
    analytic.metric_dxdot = [=](const Vec& x, const Vec& xd, int j) {
      Mat D = Mat::Zero(x.size(), x.size());
      for (int rt = 0; rt < 2; ++rt) {
        const double w = (2.0 + std::sin(as[rt].dot(x))) * 2.0 *
                         bs[rt].dot(xd) * bs[rt](j);
        D += w * vs[rt] * vs[rt].transpose();
      }
      return D;
    };

    GdsLeaf fd = analytic;
    fd.metric_dx = nullptr;
    fd.metric_dxdot = nullptr;

    Vec x(n), xd(n);
    for (int k = 0; k < n; ++k) {
      x(k) = 2.0 * us(rng);
      xd(k) = us(rng);
    }
    const State s(x, xd);
    const Mat xi_a = curvature_inertia(analytic, s);
    const Mat xi_f = curvature_inertia(fd, s);
    const Vec cf_a = curvature_force(analytic, s);
    const Vec cf_f = curvature_force(fd, s);
    const double rel_xi = (xi_a - xi_f).cwiseAbs().maxCoeff() /
                          std::max(1.0, xi_f.cwiseAbs().maxCoeff());
    const double rel_cf = (cf_a - cf_f).cwiseAbs().maxCoeff() /
                          std::max(1.0, cf_f.cwiseAbs().maxCoeff());
    worst = std::max({worst, rel_xi, rel_cf});
  }
  r.measured = worst;
  r.pass = worst <= r.tolerance;
  r.detail = "max relative error of Xi_G and xi_G vs central differences "
             "over 100 randomized velocity-dependent metrics";
  return r;
}

CriterionResult restructuring_invariance() {
  CriterionResult r{9, "restructuring-invariance", false, 0.0, 1e-10, ""};
  std::mt19937 rng(4242);

  RobotTeamSpec team = RobotTeamSpec::planar(4);
  std::vector<SubtaskAssignment> subtasks;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      subtasks.push_back({"collision", {i, j},
                          CollisionAvoidanceParams{0.1, 1e-5, 1e-8, 1.0}});
      subtasks.push_back({"dist", {i, j},
                          DistancePreservationAParams{1.0, 1.0, 1.0, 2.0}});
    }
  GoalAttractorAParams att;
  att.goal = std::make_shared<Vec>((Vec(2) << 1.0, 1.0).finished());
  subtasks.push_back({"goal", {0}, att});
  // Unit damper inertia: a weak damper metric (c << 1) would make resolve()
  // amplify last-bit association differences by 1/c, which is about tree
  // conditioning rather than restructuring invariance.
  for (int i = 0; i < 4; ++i)
    subtasks.push_back({"damper", {i}, DamperParams{1.0, 1.0}});

  RmpTree grouped = build_rmp_tree(team, subtasks, TreeLayout::Grouped);
  RmpTree flat = build_rmp_tree(team, subtasks, TreeLayout::Flat);

  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const State s = random_separated_state(rng, 4, 0.3);
    const Vec a_grouped = grouped.policy(s).a;
    const Vec a_flat = flat.policy(s).a;
    worst = std::max(worst, (a_grouped - a_flat).cwiseAbs().maxCoeff());
  }
  r.measured = worst;
  r.pass = worst <= r.tolerance;
  r.detail = "root acceleration, grouped vs flat layout, 100 random states";
  return r;
}

std::vector<CriterionResult> run_suite(const std::string& suite) {
  std::vector<CriterionResult> out;
  if (suite == "curvature") {
    out.push_back(curvature_correctness());
  } else if (suite == "equivalence") {
    out.push_back(controller_equivalence());
    out.push_back(partial_flow_equivalence());
    out.push_back(restructuring_invariance());
  } else if (suite == "lyapunov") {
    out.push_back(centralized_stability());
    out.push_back(decentralized_stability());
    out.push_back(degree_normalization());
    out.push_back(formation_contrast());
  } else if (suite == "collision") {
    out.push_back(collision_free());
  } else if (suite == "all") {
    out.push_back(controller_equivalence());
    out.push_back(collision_free());
    out.push_back(centralized_stability());
    out.push_back(decentralized_stability());
    out.push_back(partial_flow_equivalence());
    out.push_back(degree_normalization());
    out.push_back(formation_contrast());
    out.push_back(curvature_correctness());
    out.push_back(restructuring_invariance());
  } else {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  return out;
}

std::string report_json(const std::vector<CriterionResult>& results) {
  nlohmann::json doc;
  doc["results"] = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    doc["results"].push_back({{"id", r.id},
                              {"name", r.name},
                              {"pass", r.pass},
                              {"measured", r.measured},
                              {"tolerance", r.tolerance},
                              {"detail", r.detail}});
    all = all && r.pass;
  }
  doc["pass"] = all;
  return doc.dump(2) + "\n";
}

}  // namespace verify
}  // namespace rmpsim
