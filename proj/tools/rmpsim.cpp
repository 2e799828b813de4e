#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "rmpsim/scenario.hpp"
#include "rmpsim/svg.hpp"
#include "rmpsim/verify.hpp"

namespace fs = std::filesystem;
using namespace rmpsim;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

int do_run(const std::string& scenario_path, const std::string& builtin,
           const std::string& mode, double dt, double t_final,
           std::string out_dir, bool plot) {
  ScenarioFile file;
  try {
    if (!builtin.empty())
      file = builtin_scenario(builtin);
    else
      file = load_scenario(scenario_path);
    if (!mode.empty()) {
      if (mode == "centralized")
        file.scenario.sim.mode = Mode::Centralized;
      else if (mode == "decentralized")
        file.scenario.sim.mode = Mode::Decentralized;
      else
        throw std::invalid_argument("unknown mode '" + mode + "'");
    }
    if (dt > 0) file.scenario.sim.dt = dt;
    if (t_final > 0) file.scenario.sim.t_final = t_final;
    file.scenario.sim.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (out_dir.empty()) {
    if (const char* env = std::getenv("RMPSIM_OUT"))
      out_dir = env;
    else
      out_dir = file.outputs.dir;
  }

  TrajectoryLog log = run(file.scenario, file.scenario.sim);

  try {
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "trajectory.csv", emit_csv(file, log));
    write_file(fs::path(out_dir) / "summary.json", emit_summary(file, log));
    if (plot || file.outputs.plot)
      write_file(fs::path(out_dir) / "trajectory.svg",
                 render_trajectory_svg(file, log));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::cout << file.scenario.name << ": " << log.steps_completed
            << " steps, max per-step Lyapunov increase "
            << log.max_lyapunov_increase << "\n";
  if (log.terminated_early) {
    std::cerr << "terminated early: " << log.termination_reason << "\n";
    return 2;
  }
  return 0;
}

int do_verify(const std::string& suite) {
  std::vector<verify::CriterionResult> results;
  try {
    results = verify::run_suite(suite);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cout << verify::report_json(results);
  for (const auto& r : results)
    if (!r.pass) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-robot RMP control-policy engine"};
  app.require_subcommand(1);

  std::string scenario_path, builtin, mode, out_dir;
  double dt = 0.0, t_final = 0.0;
  bool plot = false;
  auto* run_cmd = app.add_subcommand("run", "simulate a scenario");
  auto* sopt = run_cmd->add_option("--scenario", scenario_path,
                                   "scenario JSON file");
  auto* bopt = run_cmd->add_option("--builtin", builtin,
                                   "built-in scenario name");
  bopt->excludes(sopt);
  run_cmd->add_option("--mode", mode, "centralized|decentralized");
  run_cmd->add_option("--dt", dt, "integrator step (s)");
  run_cmd->add_option("--t-final", t_final, "horizon (s)");
  run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_flag("--plot", plot, "also write trajectory.svg");

  std::string suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "run acceptance suites");
  verify_cmd->add_option("--suite", suite,
                         "curvature|equivalence|lyapunov|collision|all");

  auto* list_cmd = app.add_subcommand("list", "list built-in scenarios");

  CLI11_PARSE(app, argc, argv);

  if (list_cmd->parsed()) {
    for (const auto& name : builtin_names()) std::cout << name << "\n";
    return 0;
  }
  if (verify_cmd->parsed()) return do_verify(suite);
  if (scenario_path.empty() && builtin.empty()) {
    std::cerr << "error: run needs --scenario or --builtin\n";
    return 1;
  }
  return do_run(scenario_path, builtin, mode, dt, t_final, out_dir, plot);
}
