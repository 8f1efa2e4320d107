#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "condkin/config.hpp"
#include "condkin/io.hpp"
#include "condkin/verify.hpp"

namespace fs = std::filesystem;
using namespace condkin;

namespace {

int resolve_threads(int cli_threads, int config_threads) {
  if (cli_threads > 0) return cli_threads;
  if (const char* env = std::getenv("CONDKIN_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return config_threads > 0 ? config_threads : 1;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

int cmd_run(const std::string& config_path, int cli_threads) {
  RunConfig cfg;
  try {
    cfg = load_config(config_path);
    cfg.validate();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  const int threads = resolve_threads(cli_threads, cfg.threads);

  const DispersionModel model = cfg.model();
  const KernelParams kp = cfg.kernel_params();
  const GridSpec spec = cfg.grid();
  GridMeasure m0;
  try {
    m0 = init_measure(spec, cfg.profile(), model);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  fs::create_directories(cfg.output_dir);
  StepControl ctrl = cfg.step_control();
  Trajectory traj = run(m0, ctrl, kp, model, cfg.t_end, cfg.snapshot_stride, threads);

  const std::string dir = cfg.output_dir;
  write_file(dir + "/run_config.cfg", serialize_config(cfg));
  write_trajectory_csv(dir + "/trajectory.csv", traj);
  write_diagnostics_csv(dir + "/diagnostics.csv", traj, kp, model, cfg.ladder_m_list);
  for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
    char name[64];
    std::snprintf(name, sizeof name, "/snapshot_%06zu.csv", s);
    write_snapshot_csv(dir + name, traj.snapshots[s].first, traj.snapshots[s].second);
  }
  if (!cfg.multiscale_m_list.empty()) {
    const MultiscaleReport rep = multiscale_sets(traj, cfg.multiscale(), model, cfg.mu);
    write_file(dir + "/multiscale.json", multiscale_to_json(rep));
  }
  nlohmann::json status;
  status["status"] = traj.status == RunStatus::ok ? "ok" : "stagnated";
  status["steps"] = traj.steps();
  status["t_final"] = traj.t.back();
  status["clip_ledger"] = ctrl.clip_ledger;
  status["threads"] = threads;
  write_file(dir + "/run_status.json", status.dump(2) + "\n");

  if (traj.status == RunStatus::stagnated) {
    std::cerr << "stagnation: dt underflow at t = " << fmt17(traj.t.back())
              << "; partial output written to " << dir << "\n";
    return 3;
  }
  std::cout << "wrote " << dir << " (" << traj.steps() << " steps, t = "
            << fmt17(traj.t.back()) << ")\n";
  return 0;
}

int cmd_verify(const std::string& suite, unsigned seed, long mc_samples,
               int cli_threads) {
  const int threads = resolve_threads(cli_threads, 1);
  VerifyReport rep;
  if (suite == "identities") rep = verify_identities(seed);
  else if (suite == "conservation") rep = verify_conservation(seed, threads);
  else if (suite == "dissipation") rep = verify_dissipation(seed, threads);
  else if (suite == "supersolution") rep = verify_supersolution(seed);
  else if (suite == "oracle") rep = verify_oracle(seed, mc_samples);
  else if (suite == "all") rep = verify_all(seed, threads);
  else {
    std::cerr << "unknown suite '" << suite
              << "' (identities|conservation|dissipation|supersolution|oracle|all)\n";
    return 2;
  }
  std::cout << verify_report_json(rep, suite, seed);
  for (const auto& r : rep.results)
    if (!r.pass) {
      std::cerr << "FAILED property: " << r.name << " (" << r.detail << ")\n";
      return 1;
    }
  return 0;
}

int cmd_diag(const std::string& dir, std::vector<int> m_list, double rho, double eps,
             double c_star) {
  const auto snaps = list_snapshots(dir);
  if (snaps.empty()) {
    std::cerr << "diag error: no snapshots in '" << dir << "'\n";
    return 2;
  }
  RunConfig cfg;
  try {
    cfg = load_config(dir + "/run_config.cfg");
  } catch (const std::exception& e) {
    std::cerr << "diag error: " << e.what() << "\n";
    return 2;
  }
  if (!m_list.empty()) cfg.multiscale_m_list = m_list;
  if (rho > 0) cfg.multiscale_rho = rho;
  if (eps > 0) cfg.multiscale_eps = eps;
  if (c_star > 0) cfg.multiscale_c_star = c_star;

  Trajectory traj;
  try {
    for (const auto& p : snaps) {
      auto [t, m] = read_snapshot_csv(p);
      traj.snapshots.emplace_back(t, m);
    }
  } catch (const std::exception& e) {
    std::cerr << "diag error: corrupt snapshot: " << e.what() << "\n";
    return 2;
  }
  traj.initial_number = total_number(traj.snapshots.front().second);
  for (const auto& [t, m] : traj.snapshots) {
    traj.t.push_back(t);
    const double num = total_number(m);
    traj.number.push_back(num);
    traj.energy.push_back(total_energy(m));
    traj.atom_mass.push_back(m.atom_mass);
    traj.overflow_number.push_back(m.overflow_number);
    traj.overflow_energy.push_back(m.overflow_energy);
    traj.deficit.push_back(traj.initial_number - num);
  }

  nlohmann::json j;
  const GrowthCurve gc = growth_curve(traj);
  j["growth"] = {{"t", gc.t}, {"atom_mass", gc.atom_mass},
                 {"number_deficit", gc.number_deficit}};
  if (!cfg.ladder_m_list.empty()) {
    nlohmann::json ladder = nlohmann::json::array();
    for (const auto& e :
         concentration_ladder(traj.snapshots.back().second, cfg.ladder_m_list))
      ladder.push_back({{"m", e.m}, {"R", e.R}, {"mass", e.mass},
                        {"resolved", e.resolved}});
    j["ladder"] = ladder;
  }
  if (!cfg.multiscale_m_list.empty()) {
    try {
      const MultiscaleReport rep =
          multiscale_sets(traj, cfg.multiscale(), cfg.model(), cfg.mu);
      j["multiscale"] = nlohmann::json::parse(multiscale_to_json(rep));
    } catch (const ConfigError& e) {
      std::cerr << "diag error: " << e.what() << "\n";
      return 2;
    }
  }
  const std::string text = j.dump(2) + "\n";
  write_file(dir + "/diag_report.json", text);
  std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"measure-valued isotropic wave-kinetic simulator"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (overrides CONDKIN_THREADS)");

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "integrate a configured problem");
  run_cmd->add_option("config", config_path, "configuration file")->required();

  std::string suite;
  unsigned seed = 12345;
  long mc_samples = 10000000L;
  auto* verify_cmd = app.add_subcommand("verify", "run a property suite");
  verify_cmd->add_option("suite", suite, "identities|conservation|dissipation|supersolution|oracle|all")
      ->required();
  verify_cmd->add_option("--seed", seed, "RNG seed");
  verify_cmd->add_option("--samples", mc_samples, "Monte-Carlo sample count");

  std::string diag_dir;
  std::vector<int> m_list;
  double rho = 0, eps = 0, cstar = 0;
  auto* diag_cmd = app.add_subcommand("diag", "recompute diagnostics from a run directory");
  diag_cmd->add_option("dir", diag_dir, "output directory of a run")->required();
  diag_cmd->add_option("--m", m_list, "scale indices")->delimiter(',');
  diag_cmd->add_option("--rho", rho, "concentration exponent");
  diag_cmd->add_option("--eps", eps, "window exponent");
  diag_cmd->add_option("--cstar", cstar, "threshold constant");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(config_path, threads);
    if (*verify_cmd) return cmd_verify(suite, seed, mc_samples, threads);
    if (*diag_cmd) return cmd_diag(diag_dir, m_list, rho, eps, cstar);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
