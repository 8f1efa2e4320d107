#pragma once

#include <string>
#include <vector>

#include "condkin/diagnostics.hpp"

namespace condkin {

// Flat dotted-key run configuration. Parsing accepts `key = value` lines and
// `#` comments; serialization emits keys in a fixed canonical order so that
// parse(serialize(cfg)) round-trips exactly.
struct RunConfig {
  double dispersion_p = 2.0;
  double dispersion_c = 1.0;

  double c12 = 1.0, c22 = 1.0, c31 = 0.0;
  double mu = 0.0;

  int n_cells = 96;
  double omega_max = 3.0;
  double cutoff_n = 1.0;

  std::string ic_kind = "power_exp";
  double ic_c_ini = 1.0;
  double ic_amplitude = 1.0;
  double ic_omega_s = std::numeric_limits<double>::infinity();
  double ic_number = 1.0;

  double t_end = 1.0;
  double dt_init = 1e-4;
  double dt_max = 1e-2;
  double safety = 0.1;
  int snapshot_stride = 10;
  std::string method = "euler";

  std::vector<double> alphas = {0.5, 0.75};
  std::vector<int> ladder_m_list;
  std::vector<int> multiscale_m_list;
  double multiscale_rho = 0.01;
  double multiscale_eps = 0.03;
  double multiscale_c_star = -1.0;  // -1: calibrate ("auto")

  std::string output_dir = "out";
  int threads = 1;

  bool operator==(const RunConfig&) const = default;

  // Cross-field validation; throws ConfigError with the offending key path.
  void validate() const;

  DispersionModel model() const { return DispersionModel(dispersion_p, dispersion_c); }
  KernelParams kernel_params() const {
    KernelParams kp;
    kp.c12 = c12;
    kp.c22 = c22;
    kp.c31 = c31;
    kp.mu = mu;
    kp.cutoff_n = cutoff_n;
    return kp;
  }
  GridSpec grid() const { return GridSpec(n_cells, omega_max); }
  InitProfile profile() const;
  StepControl step_control() const;
  MultiscaleConfig multiscale() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

}  // namespace condkin
