#include "rmpsim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace rmpsim {

using nlohmann::json;

namespace {

Vec to_vec(const json& a, const std::string& where) {
  if (!a.is_array() || a.empty())
    throw std::invalid_argument(where + ": expected a number array");
  Vec v(a.size());
  for (size_t i = 0; i < a.size(); ++i) v(i) = a[i].get<double>();
  return v;
}

json from_vec(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

double field(const json& o, const char* key, const std::string& where) {
  if (!o.contains(key))
    throw std::invalid_argument(where + ": missing field '" + key + "'");
  return o.at(key).get<double>();
}

PairPotential::Kind parse_pot_kind(const std::string& s,
                                   const std::string& where) {
  if (s == "quadratic") return PairPotential::Kind::Quadratic;
  if (s == "quartic") return PairPotential::Kind::Quartic;
  throw std::invalid_argument(where + ": unknown pair potential '" + s + "'");
}

std::string pot_kind_name(PairPotential::Kind k) {
  return k == PairPotential::Kind::Quadratic ? "quadratic" : "quartic";
}

SubtaskAssignment::Params parse_params(const std::string& kind,
                                       const json& p,
                                       const std::string& where) {
  if (kind == "collision_avoidance") {
    CollisionAvoidanceParams c;
    c.d_s = field(p, "d_s", where);
    c.alpha = field(p, "alpha", where);
    c.epsilon = field(p, "epsilon", where);
    c.eta = field(p, "eta", where);
    return c;
  }
  if (kind == "dist_pres_a") {
    DistancePreservationAParams c;
    c.d_ij = field(p, "d_ij", where);
    c.c = field(p, "c", where);
    c.alpha = field(p, "alpha", where);
    c.eta = field(p, "eta", where);
    return c;
  }
  if (kind == "dist_pres_b") {
    DistancePreservationBParams c;
    c.d_ij = field(p, "d_ij", where);
    c.c = field(p, "c", where);
    c.eta = field(p, "eta", where);
    c.pair_potential =
        parse_pot_kind(p.value("pair_potential", "quadratic"), where);
    return c;
  }
  if (kind == "goal_attractor_a") {
    GoalAttractorAParams c;
    c.goal = std::make_shared<Vec>(to_vec(p.at("goal"), where + ".goal"));
    c.w_u = field(p, "w_u", where);
    c.w_l = field(p, "w_l", where);
    c.sigma = field(p, "sigma", where);
    c.alpha = field(p, "alpha", where);
    c.beta = field(p, "beta", where);
    c.eta = field(p, "eta", where);
    return c;
  }
  if (kind == "goal_attractor_b") {
    GoalAttractorBParams c;
    c.goal = std::make_shared<Vec>(to_vec(p.at("goal"), where + ".goal"));
    c.c = field(p, "c", where);
    c.alpha = field(p, "alpha", where);
    c.eta = field(p, "eta", where);
    return c;
  }
  if (kind == "damper") {
    DamperParams c;
    c.c = field(p, "c", where);
    c.eta = field(p, "eta", where);
    return c;
  }
  if (kind == "pairwise_potential") {
    PairwisePotentialParams c;
    c.potential.d = field(p, "d", where);
    c.potential.kind =
        parse_pot_kind(p.value("potential", "quadratic"), where);
    c.c = field(p, "c", where);
    c.eta = field(p, "eta", where);
    const std::string space = p.value("space", "product");
    if (space == "product")
      c.space = PairSpace::Product;
    else if (space == "distance")
      c.space = PairSpace::Distance;
    else
      throw std::invalid_argument(where + ": unknown space '" + space + "'");
    return c;
  }
  throw std::invalid_argument(where + ": unknown subtask kind '" + kind + "'");
}

json emit_params(const SubtaskAssignment::Params& params,
                 std::string* kind_out) {
  json p;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, CollisionAvoidanceParams>) {
          *kind_out = "collision_avoidance";
          p = {{"d_s", c.d_s},
               {"alpha", c.alpha},
               {"epsilon", c.epsilon},
               {"eta", c.eta}};
        } else if constexpr (std::is_same_v<T, DistancePreservationAParams>) {
          *kind_out = "dist_pres_a";
          p = {{"d_ij", c.d_ij}, {"c", c.c}, {"alpha", c.alpha},
               {"eta", c.eta}};
        } else if constexpr (std::is_same_v<T, DistancePreservationBParams>) {
          *kind_out = "dist_pres_b";
          p = {{"d_ij", c.d_ij},
               {"c", c.c},
               {"eta", c.eta},
               {"pair_potential", pot_kind_name(c.pair_potential)}};
        } else if constexpr (std::is_same_v<T, GoalAttractorAParams>) {
          *kind_out = "goal_attractor_a";
          p = {{"goal", from_vec(*c.goal)}, {"w_u", c.w_u},
               {"w_l", c.w_l},             {"sigma", c.sigma},
               {"alpha", c.alpha},         {"beta", c.beta},
               {"eta", c.eta}};
        } else if constexpr (std::is_same_v<T, GoalAttractorBParams>) {
          *kind_out = "goal_attractor_b";
          p = {{"goal", from_vec(*c.goal)},
               {"c", c.c},
               {"alpha", c.alpha},
               {"eta", c.eta}};
        } else if constexpr (std::is_same_v<T, DamperParams>) {
          *kind_out = "damper";
          p = {{"c", c.c}, {"eta", c.eta}};
        } else {
          *kind_out = "pairwise_potential";
          p = {{"d", c.potential.d},
               {"potential", pot_kind_name(c.potential.kind)},
               {"c", c.c},
               {"eta", c.eta},
               {"space", c.space == PairSpace::Product ? "product"
                                                       : "distance"}};
        }
      },
      params);
  return p;
}

}  // namespace

ScenarioFile parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario: ") + e.what());
  }

  ScenarioFile file;
  file.scenario.name = doc.value("name", "scenario");
  file.metadata = doc.value("metadata", "");

  if (!doc.contains("robots") || !doc["robots"].is_array() ||
      doc["robots"].empty())
    throw std::invalid_argument("scenario: missing or empty 'robots' list");

  std::map<int, int> id_to_index;
  std::vector<Vec> positions, velocities;
  for (const auto& r : doc["robots"]) {
    const int id = r.at("id").get<int>();
    if (id_to_index.count(id))
      throw std::invalid_argument("robots: duplicate id " +
                                  std::to_string(id));
    if (!id_to_index.empty() && id < file.robot_ids.back())
      throw std::invalid_argument("robots: ids must be ascending");
    id_to_index[id] = static_cast<int>(file.robot_ids.size());
    file.robot_ids.push_back(id);
    positions.push_back(to_vec(r.at("position"), "robots.position"));
    velocities.push_back(to_vec(r.at("velocity"), "robots.velocity"));
    if (positions.back().size() != velocities.back().size())
      throw std::invalid_argument("robots: position/velocity dim mismatch");
  }
  file.scenario.team.dims.clear();
  for (const auto& p : positions)
    file.scenario.team.dims.push_back(static_cast<int>(p.size()));
  Vec q(file.scenario.team.joint_dim()), qd(file.scenario.team.joint_dim());
  for (size_t i = 0; i < positions.size(); ++i) {
    q.segment(file.scenario.team.offset(static_cast<int>(i)),
              positions[i].size()) = positions[i];
    qd.segment(file.scenario.team.offset(static_cast<int>(i)),
               velocities[i].size()) = velocities[i];
  }
  file.scenario.initial = State(std::move(q), std::move(qd));

  auto map_robot = [&](int id, const std::string& where) {
    auto it = id_to_index.find(id);
    if (it == id_to_index.end())
      throw std::invalid_argument(where + ": unknown robot id " +
                                  std::to_string(id));
    return it->second;
  };

  int index = 0;
  for (const auto& s : doc.value("subtasks", json::array())) {
    const std::string where = "subtasks[" + std::to_string(index) + "]";
    SubtaskAssignment st;
    const std::string kind = s.at("kind").get<std::string>();
    st.name = s.value("name", kind + "#" + std::to_string(index));
    for (const auto& pid : s.at("participants"))
      st.participants.push_back(map_robot(pid.get<int>(), where));
    st.params = parse_params(kind, s.value("params", json::object()), where);
    validate_subtask(file.scenario.team, st);
    if (s.contains("orbit")) {
      const auto& o = s["orbit"];
      OrbitGoal orbit;
      orbit.subtask = index;
      orbit.center = to_vec(o.at("center"), where + ".orbit.center");
      orbit.radius = field(o, "radius", where + ".orbit");
      orbit.omega = field(o, "omega", where + ".orbit");
      orbit.phase = o.value("phase", 0.0);
      file.scenario.orbits.push_back(std::move(orbit));
    }
    file.scenario.subtasks.push_back(std::move(st));
    ++index;
  }

  for (const auto& e : doc.value("formation_edges", json::array())) {
    file.scenario.formation_edges.emplace_back(
        map_robot(e.at("i").get<int>(), "formation_edges"),
        map_robot(e.at("j").get<int>(), "formation_edges"));
    file.scenario.formation_dists.push_back(e.at("d").get<double>());
  }

  if (doc.contains("sim")) {
    const auto& s = doc["sim"];
    file.scenario.sim.dt = s.value("dt", 0.01);
    file.scenario.sim.t_final = s.value("t_final", 10.0);
    const std::string integ = s.value("integrator", "rk4");
    if (integ == "rk4")
      file.scenario.sim.integrator = Integrator::Rk4;
    else if (integ == "semi-implicit-euler")
      file.scenario.sim.integrator = Integrator::SemiImplicitEuler;
    else
      throw std::invalid_argument("sim: unknown integrator '" + integ + "'");
    const std::string mode = s.value("mode", "centralized");
    if (mode == "centralized")
      file.scenario.sim.mode = Mode::Centralized;
    else if (mode == "decentralized")
      file.scenario.sim.mode = Mode::Decentralized;
    else
      throw std::invalid_argument("sim: unknown mode '" + mode + "'");
    file.scenario.sim.cadence = s.value("cadence", 1);
    file.scenario.sim.validate();
  }

  if (doc.contains("outputs")) {
    file.outputs.dir = doc["outputs"].value("dir", "out");
    file.outputs.plot = doc["outputs"].value("plot", false);
  }
  return file;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot read scenario file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string emit_scenario(const ScenarioFile& file) {
  const Scenario& sc = file.scenario;
  json doc;
  doc["name"] = sc.name;
  if (!file.metadata.empty()) doc["metadata"] = file.metadata;

  doc["robots"] = json::array();
  for (int i = 0; i < sc.team.count(); ++i) {
    doc["robots"].push_back(
        {{"id", file.robot_ids.at(i)},
         {"position",
          from_vec(sc.initial.x.segment(sc.team.offset(i), sc.team.dims[i]))},
         {"velocity", from_vec(sc.initial.xdot.segment(sc.team.offset(i),
                                                       sc.team.dims[i]))}});
  }

  doc["subtasks"] = json::array();
  for (size_t k = 0; k < sc.subtasks.size(); ++k) {
    const auto& st = sc.subtasks[k];
    std::string kind;
    json params = emit_params(st.params, &kind);
    json s = {{"kind", kind}, {"name", st.name}, {"params", params}};
    s["participants"] = json::array();
    for (int r : st.participants)
      s["participants"].push_back(file.robot_ids.at(r));
    for (const auto& orbit : sc.orbits) {
      if (orbit.subtask == static_cast<int>(k))
        s["orbit"] = {{"center", from_vec(orbit.center)},
                      {"radius", orbit.radius},
                      {"omega", orbit.omega},
                      {"phase", orbit.phase}};
    }
    doc["subtasks"].push_back(std::move(s));
  }

  doc["formation_edges"] = json::array();
  for (size_t e = 0; e < sc.formation_edges.size(); ++e)
    doc["formation_edges"].push_back(
        {{"i", file.robot_ids.at(sc.formation_edges[e].first)},
         {"j", file.robot_ids.at(sc.formation_edges[e].second)},
         {"d", sc.formation_dists[e]}});

  doc["sim"] = {
      {"dt", sc.sim.dt},
      {"t_final", sc.sim.t_final},
      {"integrator",
       sc.sim.integrator == Integrator::Rk4 ? "rk4" : "semi-implicit-euler"},
      {"mode",
       sc.sim.mode == Mode::Centralized ? "centralized" : "decentralized"},
      {"cadence", sc.sim.cadence}};
  doc["outputs"] = {{"dir", file.outputs.dir}, {"plot", file.outputs.plot}};
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Built-in scenarios

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Vec> pentagon(double radius, const Eigen::Vector2d& center) {
  std::vector<Vec> pts;
  for (int k = 0; k < 5; ++k) {
    const double a = kPi / 2.0 + k * 2.0 * kPi / 5.0;
    Vec p(2);
    p << center.x() + radius * std::cos(a), center.y() + radius * std::sin(a);
    pts.push_back(p);
  }
  return pts;
}

void set_positions(ScenarioFile& file, const std::vector<Vec>& pts) {
  auto& sc = file.scenario;
  sc.team = RobotTeamSpec::planar(static_cast<int>(pts.size()));
  file.robot_ids.clear();
  Vec q(sc.team.joint_dim());
  for (size_t i = 0; i < pts.size(); ++i) {
    file.robot_ids.push_back(static_cast<int>(i));
    q.segment<2>(2 * static_cast<int>(i)) = pts[i];
  }
  sc.initial = State(q, Vec::Zero(sc.team.joint_dim()));
}

void add_complete_formation(
    ScenarioFile& file, const std::vector<Vec>& target, bool variant_a,
    double c, double alpha, double eta) {
  auto& sc = file.scenario;
  const int n = static_cast<int>(target.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = (target[i] - target[j]).norm();
      SubtaskAssignment st;
      st.participants = {i, j};
      if (variant_a) {
        st.name = "dist_pres_a#" + std::to_string(i) + "-" + std::to_string(j);
        st.params = DistancePreservationAParams{d, c, alpha, eta};
      } else {
        st.name = "dist_pres_b#" + std::to_string(i) + "-" + std::to_string(j);
        st.params = DistancePreservationBParams{
            d, c, eta, PairPotential::Kind::Quadratic};
      }
      sc.subtasks.push_back(std::move(st));
      sc.formation_edges.emplace_back(i, j);
      sc.formation_dists.push_back(d);
    }
  }
}

ScenarioFile make_fig3(bool variant_a) {
  ScenarioFile file;
  auto& sc = file.scenario;
  sc.name = variant_a ? "fig3a" : "fig3b";
  const auto start = pentagon(0.4, {0.0, 0.0});
  set_positions(file, start);
  add_complete_formation(file, start, variant_a, 1.0, 1.0, 2.0);

  // Leader (vertex at 90 deg) is attracted to a goal one meter to the right.
  GoalAttractorAParams att;
  att.goal = std::make_shared<Vec>(start[0]);
  *att.goal += (Vec(2) << 1.0, 0.0).finished();
  att.w_u = 10.0;
  att.w_l = 1.0;
  att.sigma = 0.1;
  att.beta = 0.1;
  att.alpha = 10.0;
  att.eta = 1.0;
  sc.subtasks.push_back({"goal_attractor_a#0", {0}, att});

  for (int i = 0; i < 5; ++i)
    sc.subtasks.push_back({"damper#" + std::to_string(i),
                           {i},
                           DamperParams{0.01, 1.0}});

  sc.sim.dt = 0.01;
  // The leader creeps at its terminal speed (~0.02 m/s against five dampers),
  // so the 1 m transit needs a long horizon to settle at the goal.
  sc.sim.t_final = 80.0;
  return file;
}

ScenarioFile make_fig7() {
  ScenarioFile file;
  auto& sc = file.scenario;
  sc.name = "fig7";
  set_positions(file, pentagon(1.0, {0.0, 0.0}));
  add_complete_formation(file, pentagon(0.4, {0.0, 0.0}), /*variant_a=*/false,
                         1.0, 1.0, 2.0);
  sc.sim.dt = 0.01;
  sc.sim.t_final = 13.2;
  return file;
}

ScenarioFile make_fig8(bool centralized) {
  ScenarioFile file;
  auto& sc = file.scenario;
  sc.name = centralized ? "fig8-centralized" : "fig8-decentralized";
  file.metadata = "figure-inspired geometry; start/goal layout not printed";
  std::vector<Vec> starts, goals;
  for (double deg : {90.0, 210.0, 330.0}) {
    const double a = deg * kPi / 180.0;
    Vec p(2), g(2);
    p << 1.5 * std::cos(a), 1.5 * std::sin(a);
    g = -p;  // antipodal goal on the same circle
    starts.push_back(p);
    goals.push_back(g);
  }
  set_positions(file, starts);

  for (int i = 0; i < 3; ++i) {
    GoalAttractorAParams att;
    att.goal = std::make_shared<Vec>(goals[i]);
    att.w_u = 10.0;
    att.w_l = 0.01;
    att.sigma = 0.1;
    // With no per-robot dampers in this scenario, far-field dissipation is
    // only eta*w_l. A gentle attractor gain keeps the three-way encounter in
    // the regime where damping dominates the partial-flow curvature residual
    // (the per-robot metric-rate compensation sees only the robot's own
    // velocity, so fast mutual approaches can inject energy).
    att.beta = 0.1;
    att.alpha = 1.0;
    att.eta = 1.0;
    sc.subtasks.push_back(
        {"goal_attractor_a#" + std::to_string(i), {i}, att});
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      sc.subtasks.push_back(
          {"collision#" + std::to_string(i) + "-" + std::to_string(j),
           {i, j},
           CollisionAvoidanceParams{0.1, 1e-5, 1e-5, 0.2}});

  sc.sim.dt = 0.01;
  sc.sim.t_final = 40.0;
  sc.sim.mode = centralized ? Mode::Centralized : Mode::Decentralized;
  return file;
}

ScenarioFile make_cyclic_pursuit() {
  ScenarioFile file;
  auto& sc = file.scenario;
  sc.name = "cyclic-pursuit";
  file.metadata =
      "figure-inspired geometry; pursuit circle radius 1 with a sub-team "
      "passing through";

  std::vector<Vec> starts;
  std::vector<double> phases;
  for (int k = 0; k < 5; ++k) {
    const double a = kPi / 2.0 + k * 2.0 * kPi / 5.0;
    phases.push_back(a);
    starts.push_back((Vec(2) << std::cos(a), std::sin(a)).finished());
  }
  starts.push_back((Vec(2) << -2.2, 0.0).finished());
  starts.push_back((Vec(2) << -2.7, 0.25).finished());
  starts.push_back((Vec(2) << -2.7, -0.25).finished());
  set_positions(file, starts);

  // Pursuit sub-team: each robot chases a point moving along the circle.
  for (int k = 0; k < 5; ++k) {
    GoalAttractorAParams att;
    att.goal = std::make_shared<Vec>(starts[k]);
    att.w_u = 10.0;
    att.w_l = 0.01;
    att.sigma = 0.1;
    att.beta = 1.0;
    att.alpha = 1.0;
    att.eta = 1.0;
    sc.subtasks.push_back(
        {"pursuit_attractor#" + std::to_string(k), {k}, att});
    OrbitGoal orbit;
    orbit.subtask = static_cast<int>(sc.subtasks.size()) - 1;
    orbit.center = Vec::Zero(2);
    orbit.radius = 1.0;
    orbit.omega = 0.06;
    orbit.phase = phases[k];
    sc.orbits.push_back(std::move(orbit));
  }

  // Pass-through sub-team: triangle formation with a leader attractor.
  const int tri[3] = {5, 6, 7};
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const int i = tri[a], j = tri[b];
      const double d = (starts[i] - starts[j]).norm();
      sc.subtasks.push_back(
          {"dist_pres_a#" + std::to_string(i) + "-" + std::to_string(j),
           {i, j},
           DistancePreservationAParams{d, 10.0, 1.0, 2.0}});
      sc.formation_edges.emplace_back(i, j);
      sc.formation_dists.push_back(d);
    }
  GoalAttractorAParams leader;
  leader.goal = std::make_shared<Vec>((Vec(2) << 2.5, 0.0).finished());
  leader.w_u = 10.0;
  leader.w_l = 1.0;
  leader.sigma = 0.1;
  leader.beta = 1.0;
  leader.alpha = 10.0;
  leader.eta = 2.0;
  sc.subtasks.push_back({"goal_attractor_a#5", {5}, leader});

  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j)
      sc.subtasks.push_back(
          {"collision#" + std::to_string(i) + "-" + std::to_string(j),
           {i, j},
           CollisionAvoidanceParams{0.18, 1e-5, 1e-8, 1.0}});

  sc.sim.dt = 0.01;
  sc.sim.t_final = 30.0;
  sc.sim.mode = Mode::Decentralized;
  return file;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"fig3a",         "fig3b",
          "fig7",          "fig8-centralized",
          "fig8-decentralized", "cyclic-pursuit"};
}

ScenarioFile builtin_scenario(const std::string& name) {
  if (name == "fig3a") return make_fig3(true);
  if (name == "fig3b") return make_fig3(false);
  if (name == "fig7") return make_fig7();
  if (name == "fig8-centralized") return make_fig8(true);
  if (name == "fig8-decentralized") return make_fig8(false);
  if (name == "cyclic-pursuit") return make_cyclic_pursuit();
  throw std::invalid_argument("unknown builtin scenario '" + name + "'");
}

std::string emit_csv(const ScenarioFile& file, const TrajectoryLog& log) {
  const auto& team = file.scenario.team;
  std::ostringstream out;
  out << "t";
  for (int i = 0; i < team.count(); ++i) {
    const int id = file.robot_ids.at(i);
    out << ",r" << id << "_x,r" << id << "_y,r" << id << "_vx,r" << id
        << "_vy";
  }
  out << "\n";
  char buf[32];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    out << buf;
  };
  for (size_t t = 0; t < log.times.size(); ++t) {
    num(log.times[t]);
    for (int i = 0; i < team.count(); ++i) {
      const int off = team.offset(i);
      for (int d = 0; d < team.dims[i]; ++d) {
        out << ",";
        num(log.states[t].x(off + d));
      }
      for (int d = 0; d < team.dims[i]; ++d) {
        out << ",";
        num(log.states[t].xdot(off + d));
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string emit_summary(const ScenarioFile& file, const TrajectoryLog& log) {
  json doc;
  doc["scenario"] = file.scenario.name;
  doc["steps_completed"] = log.steps_completed;
  doc["terminated_early"] = log.terminated_early;
  doc["termination_reason"] = log.termination_reason;
  doc["max_lyapunov_increase"] = log.max_lyapunov_increase;
  json times = json::array(), lyap = json::array(), mind = json::array();
  for (const auto& row : log.diagnostics) {
    times.push_back(row.t);
    lyap.push_back(row.lyapunov);
    mind.push_back(row.min_distance);
  }
  doc["series"] = {{"t", times}, {"lyapunov", lyap}, {"min_distance", mind}};
  if (!log.diagnostics.empty()) {
    const auto& last = log.diagnostics.back();
    doc["final"] = {{"t", last.t},
                    {"lyapunov", last.lyapunov},
                    {"min_distance", last.min_distance},
                    {"max_edge_error", last.max_edge_error},
                    {"max_speed", last.max_speed},
                    {"grad_norm", last.grad_norm}};
    doc["converged"] = !log.terminated_early && last.max_speed < 1e-3 &&
                       last.grad_norm < 1e-3;
  }
  return doc.dump(2) + "\n";
}

}  // namespace rmpsim
