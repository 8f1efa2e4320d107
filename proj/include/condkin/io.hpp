#pragma once

#include <string>
#include <vector>

#include "condkin/config.hpp"
#include "condkin/diagnostics.hpp"

namespace condkin {

// %.17g decimal formatting used by every writer.
std::string fmt17(double v);

// t,number,energy,atom_mass,overflow_number,overflow_energy,n_c_deficit
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

// Per-snapshot diagnostics: t,phi_05,phi_075,dissipation_05,m_R_<m>...
void write_diagnostics_csv(const std::string& path, const Trajectory& traj,
                           const KernelParams& kp, const DispersionModel& model,
                           const std::vector<int>& ladder_m_list);

// omega_center,mass rows plus '# t=', '# atom_mass=', '# overflow_number=',
// '# overflow_energy=' comment lines.
void write_snapshot_csv(const std::string& path, double t, const GridMeasure& m);
std::pair<double, GridMeasure> read_snapshot_csv(const std::string& path);

// Sorted snapshot_*.csv paths in a directory.
std::vector<std::string> list_snapshots(const std::string& dir);

std::string multiscale_to_json(const MultiscaleReport& rep);

}  // namespace condkin
