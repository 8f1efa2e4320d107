#pragma once

#include "condkin/grid.hpp"
#include "condkin/kernels.hpp"

namespace condkin {

// d/dt of a GridMeasure from one collision assembly, with the bookkeeping
// ledgers used by the conservation tests:
//   number_flux_rX  — exact event-count rate of change of
//                     (atom + cells + overflow_number) per operator;
//                     r2 is identically 0, r1 and r3 are <= 0.
//   energy_residual — sum_i cell_rate_i * center_i + overflow_energy_rate;
//                     ~0 since every event balances frequency exactly.
struct RateMeasure {
  GridSpec spec;
  Array cell_rate;
  double atom_rate = 0.0;
  double overflow_number_rate = 0.0;
  double overflow_energy_rate = 0.0;
  double number_flux_r1 = 0.0;
  double number_flux_r2 = 0.0;
  double number_flux_r3 = 0.0;
  double energy_residual = 0.0;

  RateMeasure() = default;
  explicit RateMeasure(const GridSpec& s) : spec(s), cell_rate(Array::Zero(s.n_cells)) {}

  RateMeasure& operator+=(const RateMeasure& o);

  // phi(0)*atom_rate + sum_i cell_rate_i * phi(center_i)
  template <class Phi>
  double pair_with(Phi&& phi) const {
    double s = phi(0.0) * atom_rate;
    for (int i = 0; i < spec.n_cells; ++i) s += cell_rate[i] * phi(spec.center(i));
    return s;
  }
};

// 3-wave operator: coagulation over all ordered cell pairs, fragmentation
// over pairs with center_i >= center_j, deposits energy-exact.
RateMeasure apply_r1(const GridMeasure& m, const KernelParams& kp,
                     const DispersionModel& model, int threads = 1);

// 2<->2 operator over cell triples (i, j, l) with the i<->j symmetry folded.
RateMeasure apply_r2(const GridMeasure& m, const KernelParams& kp,
                     const DispersionModel& model, int threads = 1);

// 3->1 / 1->3 operator over cell triples.
RateMeasure apply_r3(const GridMeasure& m, const KernelParams& kp,
                     const DispersionModel& model, int threads = 1);

RateMeasure total_rhs(const GridMeasure& m, const KernelParams& kp,
                      const DispersionModel& model, int threads = 1);

}  // namespace condkin
