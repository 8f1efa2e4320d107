#include "condkin/grid.hpp"

#include <cmath>
#include <functional>

namespace condkin {

namespace {

// Adaptive Simpson on [a, b], relative tolerance on the running estimate.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double sum = left + right;
  if (depth <= 0 || std::abs(sum - whole) <= 15.0 * tol * (std::abs(sum) + 1e-300))
    return sum + (sum - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (b <= a) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

Allocation allocate(const GridSpec& spec, double omega_star) {
  Allocation al;
  if (omega_star < 0) throw std::domain_error("allocate: negative frequency");
  const int n = spec.n_cells;
  const double last = spec.center(n - 1);
  if (omega_star > last) {
    al.overflow = true;
    return al;
  }
  if (omega_star == 0.0) {
    al.a = -1;
    al.wa = 1.0;
    al.b = -2;
    return al;
  }
  const double d = spec.delta();
  const double c0 = spec.center(0);
  if (omega_star < c0) {
    // between the atom and the first center
    al.a = -1;
    al.b = 0;
    al.wb = omega_star / c0;
    al.wa = 1.0 - al.wb;
    return al;
  }
  int j = static_cast<int>(std::floor(omega_star / d - 0.5));
  if (j < 0) j = 0;
  if (j > n - 1) j = n - 1;
  while (j < n - 1 && spec.center(j + 1) <= omega_star) ++j;
  while (j > 0 && spec.center(j) > omega_star) --j;
  const double cj = spec.center(j);
  if (omega_star == cj || j == n - 1) {
    al.a = j;
    al.wa = 1.0;
    al.b = -2;
    return al;
  }
  const double cj1 = spec.center(j + 1);
  al.a = j;
  al.b = j + 1;
  al.wb = (omega_star - cj) / (cj1 - cj);
  al.wa = 1.0 - al.wb;
  return al;
}

GridMeasure init_measure(const GridSpec& spec, const InitProfile& profile,
                         const DispersionModel& /*model*/) {
  if (!(profile.number > 0.0))
    throw ConfigError("ic.number", "target number must be > 0");
  if (!(profile.amplitude > 0.0))
    throw ConfigError("ic.amplitude", "amplitude must be > 0");

  GridMeasure m(spec);
  const double d = spec.delta();
  const double ws = profile.omega_s;
  const bool decay = std::isfinite(ws);
  if (decay && !(ws > 0.0)) throw ConfigError("ic.omega_s", "decay scale must be > 0");
  const double tol = 1e-10;

  if (profile.kind == InitProfile::Kind::power_exp) {
    const double c = profile.c_ini;
    if (!(c > 0.0) || c > 1.0)
      throw ConfigError("ic.c_ini",
                        "power_exp requires c_ini in (0, 1] for an integrable density");
    auto density = [&](double w) {
      double v = profile.amplitude * std::pow(w, c - 1.0);
      if (decay) v *= std::exp(-w / ws);
      return v;
    };
    // Cell 0 via u = omega^c, removing the omega^{c-1} singularity:
    //   int_0^d omega^{c-1} e^{-omega/ws} domega = (1/c) int_0^{d^c} e^{-u^{1/c}/ws} du
    {
      const double inv_c = 1.0 / c;
      auto sub = [&](double u) {
        if (!decay) return profile.amplitude * inv_c;
        return profile.amplitude * inv_c * std::exp(-std::pow(u, inv_c) / ws);
      };
      m.cell_mass[0] = integrate(sub, 0.0, std::pow(d, c), tol);
    }
    for (int i = 1; i < spec.n_cells; ++i)
      m.cell_mass[i] = integrate(density, i * d, (i + 1) * d, tol);
  } else {
    // Gaussian bump centered at omega_s with relative width 1/4.
    if (!decay) throw ConfigError("ic.omega_s", "gaussian_bump requires finite omega_s");
    const double sigma = ws / 4.0;
    auto density = [&](double w) {
      const double z = (w - ws) / sigma;
      return profile.amplitude * std::exp(-0.5 * z * z);
    };
    for (int i = 0; i < spec.n_cells; ++i)
      m.cell_mass[i] = integrate(density, i * d, (i + 1) * d, tol);
  }

  const double raw = m.cell_mass.sum();
  if (!(raw > 0.0) || !std::isfinite(raw))
    throw ConfigError("ic", "profile has no integrable mass on the grid");
  m.cell_mass *= profile.number / raw;
  return m;
}

double total_number(const GridMeasure& m) { return m.atom_mass + m.cell_mass.sum(); }

double total_energy(const GridMeasure& m) {
  double s = 0.0;
  for (int i = 0; i < m.spec.n_cells; ++i) s += m.cell_mass[i] * m.spec.center(i);
  return s;
}

double mass_below(const GridMeasure& m, double R) {
  if (R < 0) throw std::domain_error("mass_below: negative cutoff");
  if (R >= m.spec.omega_max) return total_number(m);
  const double d = m.spec.delta();
  double s = m.atom_mass;
  int full = static_cast<int>(std::floor(R / d));
  if (full > m.spec.n_cells) full = m.spec.n_cells;
  for (int i = 0; i < full; ++i) s += m.cell_mass[i];
  if (full < m.spec.n_cells) {
    const double frac = (R - full * d) / d;
    if (frac > 0) s += m.cell_mass[full] * frac;
  }
  return s;
}

void deposit(GridMeasure& m, double omega_star, double amount) {
  if (amount < 0) throw std::domain_error("deposit: negative amount");
  if (amount == 0) return;
  const Allocation al = allocate(m.spec, omega_star);
  if (al.overflow) {
    m.overflow_number += amount;
    m.overflow_energy += amount * omega_star;
    return;
  }
  const double xb = amount * al.wb;
  const double xa = amount - xb;
  if (al.a == -1)
    m.atom_mass += xa;
  else
    m.cell_mass[al.a] += xa;
  if (al.b >= 0) m.cell_mass[al.b] += xb;
}

}  // namespace condkin
