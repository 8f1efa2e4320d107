#pragma once

// Test-side reference implementations, kept independent of the optimized
// assembly: plain ordered loops, long double accumulation, no symmetry
// folding, no threading.

#include <cmath>

#include "condkin/collision.hpp"

namespace oracle {

using condkin::Allocation;
using condkin::DispersionModel;
using condkin::GridMeasure;
using condkin::KernelParams;
using condkin::RateMeasure;

struct NaiveAccum {
  explicit NaiveAccum(const condkin::GridSpec& s)
      : spec(s), cell(static_cast<std::size_t>(s.n_cells), 0.0L) {}
  condkin::GridSpec spec;
  std::vector<long double> cell;
  long double atom = 0, ovn = 0, ove = 0, flux = 0;

  void add(int i, long double v) { cell[static_cast<std::size_t>(i)] += v; }
  void deposit(double target, long double amount) {
    const Allocation al = condkin::allocate(spec, target);
    if (al.overflow) {
      ovn += amount;
      ove += amount * static_cast<long double>(target);
      return;
    }
    const long double xb = amount * static_cast<long double>(al.wb);
    const long double xa = amount - xb;
    if (al.a == -1) atom += xa;
    else add(al.a, xa);
    if (al.b >= 0) add(al.b, xb);
  }

  RateMeasure finish(double* flux_out) const {
    RateMeasure r(spec);
    for (int i = 0; i < spec.n_cells; ++i)
      r.cell_rate[i] = static_cast<double>(cell[static_cast<std::size_t>(i)]);
    r.atom_rate = static_cast<double>(atom);
    r.overflow_number_rate = static_cast<double>(ovn);
    r.overflow_energy_rate = static_cast<double>(ove);
    *flux_out = static_cast<double>(flux);
    long double res = 0;
    for (int i = 0; i < spec.n_cells; ++i)
      res += cell[static_cast<std::size_t>(i)] * static_cast<long double>(spec.center(i));
    res += ove;
    r.energy_residual = static_cast<double>(res);
    return r;
  }
};

inline RateMeasure naive_r1(const GridMeasure& m, const KernelParams& kp,
                            const DispersionModel& model) {
  NaiveAccum acc(m.spec);
  const int n = m.spec.n_cells;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double wi = m.spec.center(i), wj = m.spec.center(j);
      const long double gg =
          static_cast<long double>(m.cell_mass[i]) * m.cell_mass[j];
      {
        const long double rate = kp.c12 * condkin::kplus12(kp, model, wi, wj) * gg;
        acc.add(i, -rate);
        acc.add(j, -rate);
        acc.deposit(wi + wj, rate);
        acc.flux -= rate;
      }
      if (wi >= wj) {
        const long double rate = 2.0 * kp.c12 * condkin::kminus12(kp, model, wi, wj) * gg;
        acc.add(i, -rate);
        acc.deposit(wi - wj, rate);
        acc.add(j, rate);
        acc.flux += rate;
      }
    }
  double flux = 0;
  RateMeasure r = acc.finish(&flux);
  r.number_flux_r1 = flux;
  return r;
}

inline RateMeasure naive_r2(const GridMeasure& m, const KernelParams& kp,
                            const DispersionModel& model) {
  NaiveAccum acc(m.spec);
  const int n = m.spec.n_cells;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const double w = m.spec.center(i), w1 = m.spec.center(j), w2 = m.spec.center(l);
        const long double rate = kp.c22 * condkin::k22(kp, model, w, w1, w2) *
                                 static_cast<long double>(m.cell_mass[i]) *
                                 m.cell_mass[j] * m.cell_mass[l];
        if (rate == 0.0L) continue;
        acc.add(i, -rate);
        acc.add(j, -rate);
        acc.add(l, rate);
        acc.deposit(w + w1 - w2, rate);
      }
  double flux = 0;
  RateMeasure r = acc.finish(&flux);
  r.number_flux_r2 = flux;
  return r;
}

inline RateMeasure naive_r3(const GridMeasure& m, const KernelParams& kp,
                            const DispersionModel& model) {
  NaiveAccum acc(m.spec);
  const int n = m.spec.n_cells;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const double w1 = m.spec.center(i), w2 = m.spec.center(j), w3 = m.spec.center(l);
        const long double ggg = static_cast<long double>(m.cell_mass[i]) *
                                m.cell_mass[j] * m.cell_mass[l];
        {
          const long double rate = kp.c31 * condkin::kplus31(kp, model, w1, w2, w3) * ggg;
          if (rate != 0.0L) {
            acc.deposit(w1 + w2 + w3, rate);
            acc.add(i, -rate);
            acc.add(j, -rate);
            acc.add(l, -rate);
            acc.flux -= 2.0L * rate;
          }
        }
        if (w1 >= w2 + w3) {
          const long double rate =
              3.0 * kp.c31 * condkin::kminus31(kp, model, w1, w2, w3) * ggg;
          if (rate != 0.0L) {
            acc.add(i, -rate);
            acc.deposit(w1 - w2 - w3, rate);
            acc.add(j, rate);
            acc.add(l, rate);
            acc.flux += 2.0L * rate;
          }
        }
      }
  double flux = 0;
  RateMeasure r = acc.finish(&flux);
  r.number_flux_r3 = flux;
  return r;
}

// Weak form assembled the second way: sum of rate * [test-function bracket]
// event by event, with the deposit split applied to the bracket.
template <class Phi>
double naive_weak_form(const GridMeasure& m, const KernelParams& kp,
                       const DispersionModel& model, Phi&& phi) {
  const int n = m.spec.n_cells;
  auto phi_at = [&](double target) {
    const Allocation al = condkin::allocate(m.spec, target);
    if (al.overflow) return 0.0;
    const double pa = al.a == -1 ? phi(0.0) : phi(m.spec.center(al.a));
    const double pb = al.b >= 0 ? phi(m.spec.center(al.b)) : 0.0;
    return al.wa * pa + al.wb * pb;
  };
  long double s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double wi = m.spec.center(i), wj = m.spec.center(j);
      const long double gg = static_cast<long double>(m.cell_mass[i]) * m.cell_mass[j];
      s += kp.c12 * condkin::kplus12(kp, model, wi, wj) * gg *
           (phi_at(wi + wj) - phi(wi) - phi(wj));
      if (wi >= wj)
        s += 2.0 * kp.c12 * condkin::kminus12(kp, model, wi, wj) * gg *
             (-phi(wi) + phi_at(wi - wj) + phi(wj));
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const double w = m.spec.center(i), w1 = m.spec.center(j), w2 = m.spec.center(l);
        const long double ggg = static_cast<long double>(m.cell_mass[i]) *
                                m.cell_mass[j] * m.cell_mass[l];
        const double kv22 = condkin::k22(kp, model, w, w1, w2);
        if (kv22 != 0.0)
          s += kp.c22 * kv22 * ggg *
               (-phi(w) - phi(w1) + phi(w2) + phi_at(w + w1 - w2));
        {
          const double kv = kp.c31 * condkin::kplus31(kp, model, w, w1, w2);
          if (kv != 0.0)
            s += kv * ggg * (phi_at(w + w1 + w2) - phi(w) - phi(w1) - phi(w2));
        }
        if (w >= w1 + w2) {
          const double kv = 3.0 * kp.c31 * condkin::kminus31(kp, model, w, w1, w2);
          if (kv != 0.0)
            s += kv * ggg * (-phi(w) + phi_at(w - w1 - w2) + phi(w1) + phi(w2));
        }
      }
  return static_cast<double>(s);
}

}  // namespace oracle
