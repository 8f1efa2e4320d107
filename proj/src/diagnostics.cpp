#include "condkin/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace condkin {

double phi_alpha(double alpha, double omega) {
  if (omega <= 0.0) return 0.0;
  if (omega >= 1.0) return 1.0;
  return std::pow(omega, alpha);
}

double phi_alpha_functional(const GridMeasure& m, double alpha) {
  if (alpha < 0.5 || alpha >= 1.0)
    throw std::domain_error("phi_alpha_functional: alpha must lie in [1/2, 1)");
  return functional(m, [alpha](double w) { return phi_alpha(alpha, w); });
}

double concave_dissipation(const GridMeasure& m, double alpha, const KernelParams& kp,
                           const DispersionModel& model) {
  if (alpha < 0.5 || alpha >= 1.0)
    throw std::domain_error("concave_dissipation: alpha must lie in [1/2, 1)");
  const int n = m.spec.n_cells;
  const Array ctr = m.spec.centers();
  const Array& g = m.cell_mass;
  std::vector<int> occ;
  for (int i = 0; i < n; ++i)
    if (g[i] > 0.0) occ.push_back(i);

  const double aa = alpha * (1.0 - alpha);
  double total = 0.0;
  for (int i : occ) {
    const double w = ctr[i];
    for (int j : occ) {
      const double w1 = ctr[j];
      for (int l : occ) {
        const double w2 = ctr[l];
        double lo = std::min(std::min(w, w1), w2);
        double hi = std::max(std::max(w, w1), w2);
        double mid = w + w1 + w2 - lo - hi;
        if (mid <= lo) continue;  // wMid == wMin contributes nothing
        const double arg = 2.0 * mid - lo;
        if (!(arg > 0.0 && arg < 1.0)) continue;
        const double weight = (mid - lo) * (mid - lo) * aa / std::pow(arg, 2.0 - alpha);
        const double thetas = model.theta(hi) * model.theta(lo) * model.theta(mid) *
                              model.theta(hi - lo + mid);
        total += g[i] * g[j] * g[l] * weight * model.wavenumber(lo) * thetas *
                 w22_factor(kp, w, w1, w2);
      }
    }
  }
  return total;
}

GrowthCurve growth_curve(const Trajectory& traj) {
  if (traj.t.empty()) throw std::invalid_argument("growth_curve: empty trajectory");
  GrowthCurve gc;
  gc.t = traj.t;
  gc.atom_mass = traj.atom_mass;
  gc.number_deficit = traj.deficit;
  return gc;
}

std::vector<LadderEntry> concentration_ladder(const GridMeasure& m,
                                              const std::vector<int>& scales) {
  std::vector<LadderEntry> out;
  out.reserve(scales.size());
  for (int mm : scales) {
    LadderEntry e;
    e.m = mm;
    e.R = std::ldexp(1.0, -mm);
    e.mass = mass_below(m, e.R);
    e.resolved = e.R >= m.spec.delta();
    out.push_back(e);
  }
  return out;
}

void validate_multiscale_window(const MultiscaleConfig& cfg, const DispersionModel& model,
                                double mu) {
  const double delta = model.delta();
  const double vr = model.varrho();
  const double margin = 2.0 * delta - 0.5 - vr;
  const double denom = 2.0 + mu + vr;
  const double rho_max =
      std::min({margin / (10.0 * denom), 2.0 * delta - vr, (2.0 / 3.0) * delta,
                model.theta_exponent(), (margin / (5.0 * denom) + vr) / 2.0});
  if (!(cfg.rho > 0.0) || !(cfg.rho < rho_max))
    throw ConfigError("diagnostics.multiscale.rho",
                      "must lie in (0, " + std::to_string(rho_max) + ")");
  const double eps_lo = std::max(0.0, 2.0 * cfg.rho - vr);
  const double eps_hi = std::min(2.0 * delta - vr - cfg.rho, margin / (5.0 * denom));
  if (!(cfg.eps > eps_lo) || !(cfg.eps < eps_hi))
    throw ConfigError("diagnostics.multiscale.eps",
                      "must lie in (" + std::to_string(eps_lo) + ", " +
                          std::to_string(eps_hi) + ")");
}

std::pair<double, double> ScaleGeometry::cell(long long i) const {
  const double lo = static_cast<double>(i) * h;
  const double hi = (i == n_subdomains - 1) ? R : static_cast<double>(i + 1) * h;
  return {lo, hi};
}

std::pair<double, double> ScaleGeometry::window(long long i) const {
  const long long M = n_subdomains;
  if (M == 1) return {0.0, R};
  if (i == 0) return {0.0, std::min(2.0 * h, R)};
  if (i == M - 1) return {static_cast<double>(M - 2) * h, R};
  if (i == M - 2) return {static_cast<double>(M - 3) * h, R};
  if (i == 1) return {0.0, 3.0 * h};
  return {static_cast<double>(i - 1) * h, static_cast<double>(i + 2) * h};
}

ScaleGeometry scale_geometry(int m, const DispersionModel& model, double mu) {
  if (m < 1) throw std::domain_error("scale_geometry: m must be >= 1");
  ScaleGeometry geo;
  geo.m = m;
  geo.R = std::ldexp(1.0, -m);
  const double margin = 2.0 * model.delta() - 0.5 - model.varrho();
  geo.N_sub = static_cast<int>(
      std::floor(m * margin / (4.0 * (2.0 + mu + model.varrho()))));
  if (geo.N_sub < 0) geo.N_sub = 0;
  if (geo.N_sub > 20)
    throw ConfigError("diagnostics.multiscale.m_list",
                      "scale m too fine for window enumeration (2^N subdomains)");
  geo.n_subdomains = 1LL << geo.N_sub;
  geo.h = std::ldexp(1.0, -m - geo.N_sub);
  return geo;
}

namespace {

IntervalUnion intervals_from_segments(const std::vector<char>& member,
                                      const std::vector<double>& t) {
  IntervalUnion u;
  const std::size_t K = member.size();  // segments [t_k, t_{k+1})
  std::size_t k = 0;
  while (k < K) {
    if (!member[k]) {
      ++k;
      continue;
    }
    std::size_t start = k;
    while (k < K && member[k]) ++k;
    u.intervals.emplace_back(t[start], t[k]);
    u.measure += t[k] - t[start];
  }
  return u;
}

double window_mass(const GridMeasure& g, double lo, double hi) {
  return mass_below(g, hi) - (lo > 0.0 ? mass_below(g, lo) : 0.0);
}

}  // namespace

MultiscaleReport multiscale_sets(const Trajectory& traj, const MultiscaleConfig& cfg,
                                 const DispersionModel& model, double mu) {
  validate_multiscale_window(cfg, model, mu);
  if (traj.snapshots.size() < 2)
    throw std::invalid_argument("multiscale_sets: need at least two snapshots");

  const std::size_t K = traj.snapshots.size() - 1;  // segments
  std::vector<double> times(traj.snapshots.size());
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k)
    times[k] = traj.snapshots[k].first;

  MultiscaleReport rep;
  rep.rho = cfg.rho;
  rep.eps = cfg.eps;
  rep.time_quantum = 0.0;
  for (std::size_t k = 0; k + 1 < times.size(); ++k)
    rep.time_quantum = std::max(rep.time_quantum, times[k + 1] - times[k]);

  double c_star = cfg.c_star;
  if (!(c_star > 0.0)) {
    const int m0 = *std::min_element(cfg.m_list.begin(), cfg.m_list.end());
    const double R0 = std::ldexp(1.0, -m0);
    c_star = mass_below(traj.snapshots.front().second, R0) / std::pow(R0, cfg.rho);
  }
  rep.c_star = c_star;

  const double mass_energy = traj.number.empty()
                                 ? total_number(traj.snapshots.front().second) +
                                       total_energy(traj.snapshots.front().second)
                                 : traj.number.front() + traj.energy.front();
  const double delta = model.delta();
  const double vr = model.varrho();
  const double margin = 2.0 * delta - 0.5 - vr;

  for (int m : cfg.m_list) {
    ScaleSetsReport sr;
    sr.geo = scale_geometry(m, model, mu);
    sr.threshold_A = c_star * std::pow(sr.geo.R, cfg.rho);
    sr.threshold_Ai = c_star * std::pow(std::ldexp(1.0, -(m + 1)), cfg.rho);

    const long long M = sr.geo.n_subdomains;
    std::vector<char> inA(K, 0);
    std::vector<std::vector<char>> inAi(static_cast<std::size_t>(M),
                                        std::vector<char>(K, 0));
    std::vector<char> inUnion(K, 0), inB(K, 0), inC(K, 0), inD(K, 0);
    const long long c_start = std::max<long long>(0, M / 2 - 1);

    for (std::size_t k = 0; k < K; ++k) {
      const GridMeasure& g = traj.snapshots[k].second;
      inA[k] = mass_below(g, sr.geo.R) >= sr.threshold_A;
      bool any = false, upper = false, lower = false;
      for (long long i = 0; i < M; ++i) {
        const auto [lo, hi] = sr.geo.window(i);
        const bool in = window_mass(g, lo, hi) >= sr.threshold_Ai;
        inAi[static_cast<std::size_t>(i)][k] = in;
        if (in) {
          any = true;
          if (i >= c_start) upper = true;
          if (i < c_start) lower = true;
        }
      }
      inUnion[k] = any;
      inB[k] = inA[k] && !any;
      inC[k] = upper;
      inD[k] = lower;
    }

    sr.A = intervals_from_segments(inA, times);
    sr.A_i.reserve(static_cast<std::size_t>(M));
    for (long long i = 0; i < M; ++i)
      sr.A_i.push_back(intervals_from_segments(inAi[static_cast<std::size_t>(i)], times));
    sr.B = intervals_from_segments(inB, times);
    sr.C = intervals_from_segments(inC, times);
    sr.D = intervals_from_segments(inD, times);
    sr.bound_C_rhs = std::pow(sr.geo.R, 2.0 * delta - cfg.eps - vr);
    sr.bound_B_rhs = mass_energy * std::pow(sr.geo.R, margin / 4.0);
    rep.scales.push_back(std::move(sr));
  }
  return rep;
}

}  // namespace condkin
