#pragma once

#include <vector>

#include "condkin/integrator.hpp"

namespace condkin {

// phi_alpha(w) = w^alpha on [0, 1], 1 beyond; the concave Lyapunov family.
double phi_alpha(double alpha, double omega);

// functional(m, phi_alpha); alpha restricted to [1/2, 1)
double phi_alpha_functional(const GridMeasure& m, double alpha);

// Discrete triple sum of the concave dissipation density
//   G1 G2 G  (wMid - wMin)^2 a(1-a) / (2 wMid - wMin)^{2-a}
//   * |k|(wMin) * Theta(wMax) Theta(wMin) Theta(wMid) Theta(wMax - wMin + wMid)
//   * w22_factor(w, w1, w2)
// restricted to 0 < 2 wMid - wMin < 1. Always >= 0.
double concave_dissipation(const GridMeasure& m, double alpha, const KernelParams& kp,
                           const DispersionModel& model);

struct GrowthCurve {
  std::vector<double> t, atom_mass, number_deficit;
};
GrowthCurve growth_curve(const Trajectory& traj);

struct LadderEntry {
  int m = 0;
  double R = 0;      // 2^-m
  double mass = 0;   // mass_below(R)
  bool resolved = true;  // false when R < grid delta
};
std::vector<LadderEntry> concentration_ladder(const GridMeasure& m,
                                              const std::vector<int>& scales);

struct MultiscaleConfig {
  std::vector<int> m_list;
  double rho = 0.01;
  double eps = 0.03;
  double c_star = -1.0;  // <= 0: calibrate from the initial snapshot
};

// Throws ConfigError when (rho, eps) violate the admissibility window of the
// active model (margin = 2 delta - 1/2 - varrho, exponent mu from kernels).
void validate_multiscale_window(const MultiscaleConfig& cfg, const DispersionModel& model,
                                double mu);

// Dyadic scale geometry: R = 2^-m, N = floor(m (2 delta - 1/2 - varrho) /
// (4 (2 + mu + varrho))), h = R / 2^N, 2^N subdomains, with the overlapping
// windows' boundary special cases.
struct ScaleGeometry {
  int m = 0;
  double R = 0;
  int N_sub = 0;            // dyadic refinement exponent
  long long n_subdomains = 0;  // 2^N_sub
  double h = 0;

  std::pair<double, double> cell(long long i) const;    // Omega_i
  std::pair<double, double> window(long long i) const;  // O_i
};
ScaleGeometry scale_geometry(int m, const DispersionModel& model, double mu);

struct IntervalUnion {
  std::vector<std::pair<double, double>> intervals;
  double measure = 0.0;
};

struct ScaleSetsReport {
  ScaleGeometry geo;
  double threshold_A = 0;   // c_star * R_m^rho
  double threshold_Ai = 0;  // c_star * R_{m+1}^rho
  IntervalUnion A;
  std::vector<IntervalUnion> A_i;
  IntervalUnion B, C, D;
  double bound_C_rhs = 0;  // R^{2 delta - eps - varrho}, reported not asserted
  double bound_B_rhs = 0;  // (M + E) R^{(2 delta - 1/2 - varrho)/4}
};

struct MultiscaleReport {
  double rho = 0, eps = 0, c_star = 0;
  double time_quantum = 0;  // max snapshot spacing
  std::vector<ScaleSetsReport> scales;
};

// Time-set occupation report from snapshot-aligned, left-constant
// interpolation. The set algebra (C u D = u_i A_i, B = A \ u_i A_i) holds
// exactly segment-by-segment by construction.
MultiscaleReport multiscale_sets(const Trajectory& traj, const MultiscaleConfig& cfg,
                                 const DispersionModel& model, double mu);

}  // namespace condkin
