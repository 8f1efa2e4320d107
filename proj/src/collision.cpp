#include "condkin/collision.hpp"

#include <thread>
#include <vector>

namespace condkin {

namespace {

struct KahanScalar {
  double sum = 0.0, c = 0.0;
  void add(double v) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// Per-thread accumulator: compensated per-cell sums plus scalar ledgers.
struct RateAccum {
  explicit RateAccum(const GridSpec& s)
      : spec(s), sum(Array::Zero(s.n_cells)), comp(Array::Zero(s.n_cells)) {}

  GridSpec spec;
  Array sum, comp;
  KahanScalar atom, ov_number, ov_energy, flux;

  void add(int i, double v) {
    const double y = v - comp[i];
    const double t = sum[i] + y;
    comp[i] = (t - sum[i]) - y;
    sum[i] = t;
  }

  void deposit(double target, double amount) {
    const Allocation al = allocate(spec, target);
    if (al.overflow) {
      ov_number.add(amount);
      ov_energy.add(amount * target);
      return;
    }
    const double xb = amount * al.wb;
    const double xa = amount - xb;
    if (al.a == -1)
      atom.add(xa);
    else
      add(al.a, xa);
    if (al.b >= 0) add(al.b, xb);
  }
};

// Fixed strided partition over the outer index; merge in thread order so the
// result is bit-identical for a fixed thread count.
template <class Body>
void assemble_parallel(const GridSpec& spec, int threads, int outer_count,
                       std::vector<RateAccum>& accums, Body&& body) {
  if (threads < 1) threads = 1;
  accums.clear();
  accums.reserve(threads);
  for (int t = 0; t < threads; ++t) accums.emplace_back(spec);
  if (threads == 1) {
    for (int i = 0; i < outer_count; ++i) body(accums[0], i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (int i = t; i < outer_count; i += threads) body(accums[t], i);
    });
  }
  for (auto& th : pool) th.join();
}

RateMeasure merge(const GridSpec& spec, std::vector<RateAccum>& accums,
                  double* flux_out) {
  RateMeasure r(spec);
  Array comp = Array::Zero(spec.n_cells);
  KahanScalar atom, ovn, ove, flux;
  auto cell_add = [&](int i, double v) {
    const double y = v - comp[i];
    const double t = r.cell_rate[i] + y;
    comp[i] = (t - r.cell_rate[i]) - y;
    r.cell_rate[i] = t;
  };
  for (auto& a : accums) {
    // running invariant of the compensated sums: true ~= sum - c
    for (int i = 0; i < spec.n_cells; ++i) {
      cell_add(i, a.sum[i]);
      cell_add(i, -a.comp[i]);
    }
    atom.add(a.atom.sum);
    atom.add(-a.atom.c);
    ovn.add(a.ov_number.sum);
    ovn.add(-a.ov_number.c);
    ove.add(a.ov_energy.sum);
    ove.add(-a.ov_energy.c);
    flux.add(a.flux.sum);
    flux.add(-a.flux.c);
  }
  r.atom_rate = atom.sum;
  r.overflow_number_rate = ovn.sum;
  r.overflow_energy_rate = ove.sum;
  *flux_out = flux.sum;
  // Residual of the exact per-event frequency balance.
  KahanScalar res;
  for (int i = 0; i < spec.n_cells; ++i) res.add(r.cell_rate[i] * spec.center(i));
  res.add(r.overflow_energy_rate);
  r.energy_residual = res.sum;
  return r;
}

}  // namespace

RateMeasure& RateMeasure::operator+=(const RateMeasure& o) {
  if (!(spec == o.spec)) throw std::invalid_argument("RateMeasure: grid mismatch");
  cell_rate += o.cell_rate;
  atom_rate += o.atom_rate;
  overflow_number_rate += o.overflow_number_rate;
  overflow_energy_rate += o.overflow_energy_rate;
  number_flux_r1 += o.number_flux_r1;
  number_flux_r2 += o.number_flux_r2;
  number_flux_r3 += o.number_flux_r3;
  energy_residual += o.energy_residual;
  return *this;
}

RateMeasure apply_r1(const GridMeasure& m, const KernelParams& kp,
                     const DispersionModel& model, int threads) {
  const GridSpec& spec = m.spec;
  const int n = spec.n_cells;
  const Array ctr = spec.centers();
  const Array& g = m.cell_mass;

  std::vector<RateAccum> accums;
  assemble_parallel(spec, threads, n, accums, [&](RateAccum& acc, int i) {
    const double gi = g[i];
    if (gi == 0.0 || !below_cutoff(kp, ctr[i])) return;
    const double wi = ctr[i];
    for (int j = 0; j < n; ++j) {
      const double gj = g[j];
      if (gj == 0.0 || !below_cutoff(kp, ctr[j])) continue;
      const double wj = ctr[j];
      const double gg = gi * gj;
      // coagulation: {-1 at wi, -1 at wj, +1 at wi + wj}
      {
        const double rate = kp.c12 * model.frakA(wi + wj) * gg;
        if (rate > 0) {
          acc.add(i, -rate);
          acc.add(j, -rate);
          acc.deposit(wi + wj, rate);
          acc.flux.add(-rate);
        }
      }
      // fragmentation: {-1 at wi, +1 at wi - wj, +1 at wj}
      if (wi >= wj) {
        const double rate = 2.0 * kp.c12 * model.frakA(wi - wj) * gg;
        if (rate > 0) {
          acc.add(i, -rate);
          acc.deposit(wi - wj, rate);
          acc.add(j, rate);
          acc.flux.add(rate);
        }
      }
    }
  });
  double flux = 0.0;
  RateMeasure r = merge(spec, accums, &flux);
  r.number_flux_r1 = flux;
  return r;
}

RateMeasure apply_r2(const GridMeasure& m, const KernelParams& kp,
                     const DispersionModel& model, int threads) {
  const GridSpec& spec = m.spec;
  const int n = spec.n_cells;
  const Array ctr = spec.centers();
  const Array& g = m.cell_mass;

  std::vector<RateAccum> accums;
  assemble_parallel(spec, threads, n, accums, [&](RateAccum& acc, int i) {
    const double gi = g[i];
    if (gi == 0.0 || !below_cutoff(kp, ctr[i])) return;
    const double w = ctr[i];
    for (int j = i; j < n; ++j) {
      const double gj = g[j];
      if (gj == 0.0 || !below_cutoff(kp, ctr[j])) continue;
      const double w1 = ctr[j];
      const double sym = (j == i) ? 1.0 : 2.0;
      const double base = sym * kp.c22 * gi * gj;
      for (int l = 0; l < n; ++l) {
        const double gl = g[l];
        if (gl == 0.0) continue;
        const double w2 = ctr[l];
        const double kv = k22(kp, model, w, w1, w2);
        if (kv == 0.0) continue;
        const double rate = base * kv * gl;
        // {-1 at w, -1 at w1, +1 at w2, +1 at w + w1 - w2}
        acc.add(i, -rate);
        acc.add(j, -rate);
        acc.add(l, rate);
        acc.deposit(w + w1 - w2, rate);
      }
    }
  });
  double flux = 0.0;
  RateMeasure r = merge(spec, accums, &flux);
  r.number_flux_r2 = flux;  // identically zero: no event changes the count
  return r;
}

RateMeasure apply_r3(const GridMeasure& m, const KernelParams& kp,
                     const DispersionModel& model, int threads) {
  const GridSpec& spec = m.spec;
  const int n = spec.n_cells;
  const Array ctr = spec.centers();
  const Array& g = m.cell_mass;

  if (kp.c31 == 0.0) {
    RateMeasure r(spec);
    return r;
  }

  std::vector<RateAccum> accums;
  assemble_parallel(spec, threads, n, accums, [&](RateAccum& acc, int i) {
    const double gi = g[i];
    if (gi == 0.0 || !below_cutoff(kp, ctr[i])) return;
    const double wi = ctr[i];
    // gain over canonical i <= j <= l with permutation multiplicity
    for (int j = i; j < n; ++j) {
      const double gj = g[j];
      if (gj == 0.0 || !below_cutoff(kp, ctr[j])) continue;
      const double wj = ctr[j];
      for (int l = j; l < n; ++l) {
        const double gl = g[l];
        if (gl == 0.0 || !below_cutoff(kp, ctr[l])) continue;
        const double wl = ctr[l];
        double mult = 6.0;
        if (i == j && j == l)
          mult = 1.0;
        else if (i == j || j == l)
          mult = 3.0;
        const double rate = mult * kp.c31 * model.frakA(wi + wj + wl) * gi * gj * gl;
        if (rate > 0) {
          acc.deposit(wi + wj + wl, rate);
          acc.add(i, -rate);
          acc.add(j, -rate);
          acc.add(l, -rate);
          acc.flux.add(-2.0 * rate);
        }
      }
    }
    // decay: slot 1 fixed at i, (j, l) symmetric
    for (int j = 0; j < n; ++j) {
      const double gj = g[j];
      if (gj == 0.0 || !below_cutoff(kp, ctr[j])) continue;
      const double wj = ctr[j];
      for (int l = j; l < n; ++l) {
        const double gl = g[l];
        if (gl == 0.0 || !below_cutoff(kp, ctr[l])) continue;
        const double wl = ctr[l];
        if (wi < wj + wl) continue;
        const double sym = (j == l) ? 1.0 : 2.0;
        const double rate =
            sym * 3.0 * kp.c31 * model.frakA(wi - wj - wl) * gi * gj * gl;
        if (rate > 0) {
          acc.add(i, -rate);
          acc.deposit(wi - wj - wl, rate);
          acc.add(j, rate);
          acc.add(l, rate);
          acc.flux.add(2.0 * rate);
        }
      }
    }
  });
  double flux = 0.0;
  RateMeasure r = merge(spec, accums, &flux);
  r.number_flux_r3 = flux;
  return r;
}

RateMeasure total_rhs(const GridMeasure& m, const KernelParams& kp,
                      const DispersionModel& model, int threads) {
  RateMeasure r = apply_r1(m, kp, model, threads);
  r += apply_r2(m, kp, model, threads);
  r += apply_r3(m, kp, model, threads);
  return r;
}

}  // namespace condkin
