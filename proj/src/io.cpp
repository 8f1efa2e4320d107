#include "condkin/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

namespace condkin {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  auto out = open_out(path);
  out << "t,number,energy,atom_mass,overflow_number,overflow_energy,n_c_deficit\n";
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    out << fmt17(traj.t[k]) << ',' << fmt17(traj.number[k]) << ','
        << fmt17(traj.energy[k]) << ',' << fmt17(traj.atom_mass[k]) << ','
        << fmt17(traj.overflow_number[k]) << ',' << fmt17(traj.overflow_energy[k])
        << ',' << fmt17(traj.deficit[k]) << '\n';
  }
}

void write_diagnostics_csv(const std::string& path, const Trajectory& traj,
                           const KernelParams& kp, const DispersionModel& model,
                           const std::vector<int>& ladder_m_list) {
  auto out = open_out(path);
  out << "t,phi_05,phi_075,dissipation_05";
  for (int m : ladder_m_list) out << ",m_R_" << m;
  out << "\n";
  for (const auto& [t, g] : traj.snapshots) {
    out << fmt17(t) << ',' << fmt17(phi_alpha_functional(g, 0.5)) << ','
        << fmt17(phi_alpha_functional(g, 0.75)) << ','
        << fmt17(concave_dissipation(g, 0.5, kp, model));
    for (const auto& e : concentration_ladder(g, ladder_m_list)) out << ',' << fmt17(e.mass);
    out << '\n';
  }
}

void write_snapshot_csv(const std::string& path, double t, const GridMeasure& m) {
  auto out = open_out(path);
  out << "# t=" << fmt17(t) << "\n";
  out << "# atom_mass=" << fmt17(m.atom_mass) << "\n";
  out << "# overflow_number=" << fmt17(m.overflow_number) << "\n";
  out << "# overflow_energy=" << fmt17(m.overflow_energy) << "\n";
  out << "omega_center,mass\n";
  for (int i = 0; i < m.spec.n_cells; ++i)
    out << fmt17(m.spec.center(i)) << ',' << fmt17(m.cell_mass[i]) << '\n';
}

std::pair<double, GridMeasure> read_snapshot_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  double t = 0, atom = 0, ovn = 0, ove = 0;
  std::vector<double> centers, masses;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# t=", 0) == 0) t = std::stod(line.substr(4));
    else if (line.rfind("# atom_mass=", 0) == 0) atom = std::stod(line.substr(12));
    else if (line.rfind("# overflow_number=", 0) == 0) ovn = std::stod(line.substr(18));
    else if (line.rfind("# overflow_energy=", 0) == 0) ove = std::stod(line.substr(18));
    else if (line.empty() || line[0] == '#' || line.rfind("omega_center", 0) == 0)
      continue;
    else {
      const std::size_t c = line.find(',');
      if (c == std::string::npos) throw std::runtime_error("bad snapshot row: " + line);
      centers.push_back(std::stod(line.substr(0, c)));
      masses.push_back(std::stod(line.substr(c + 1)));
    }
  }
  if (centers.size() < 1) throw std::runtime_error("snapshot has no cells: " + path);
  const std::size_t n = centers.size();
  const double delta = n >= 2 ? centers[1] - centers[0] : 2.0 * centers[0];
  GridSpec spec(static_cast<int>(n), centers.back() + 0.5 * delta);
  GridMeasure m(spec);
  for (std::size_t i = 0; i < n; ++i) m.cell_mass[static_cast<int>(i)] = masses[i];
  m.atom_mass = atom;
  m.overflow_number = ovn;
  m.overflow_energy = ove;
  return {t, m};
}

std::vector<std::string> list_snapshots(const std::string& dir) {
  std::vector<std::string> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.rfind("snapshot_", 0) == 0 && name.size() > 4 &&
        name.substr(name.size() - 4) == ".csv")
      out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

json interval_union_to_json(const IntervalUnion& u) {
  json j;
  j["measure"] = u.measure;
  json iv = json::array();
  for (auto [a, b] : u.intervals) iv.push_back({a, b});
  j["intervals"] = iv;
  return j;
}

}  // namespace

std::string multiscale_to_json(const MultiscaleReport& rep) {
  json j;
  j["rho"] = rep.rho;
  j["eps"] = rep.eps;
  j["c_star"] = rep.c_star;
  j["time_quantum"] = rep.time_quantum;
  json scales = json::array();
  for (const auto& s : rep.scales) {
    json js;
    js["m"] = s.geo.m;
    js["R"] = s.geo.R;
    js["N_sub"] = s.geo.N_sub;
    js["n_subdomains"] = s.geo.n_subdomains;
    js["h"] = s.geo.h;
    js["threshold_A"] = s.threshold_A;
    js["threshold_A_i"] = s.threshold_Ai;
    js["A"] = interval_union_to_json(s.A);
    json ai = json::array();
    for (const auto& u : s.A_i) ai.push_back(interval_union_to_json(u));
    js["A_i"] = ai;
    js["B"] = interval_union_to_json(s.B);
    js["C"] = interval_union_to_json(s.C);
    js["D"] = interval_union_to_json(s.D);
    js["bound_C_rhs"] = s.bound_C_rhs;
    js["bound_B_rhs"] = s.bound_B_rhs;
    scales.push_back(js);
  }
  j["scales"] = scales;
  return j.dump(2) + "\n";
}

}  // namespace condkin
