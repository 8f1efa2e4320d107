#pragma once

#include <utility>
#include <vector>

#include "condkin/collision.hpp"

namespace condkin {

enum class StepMethod { euler, ssprk2 };

struct StepControl {
  double dt_init = 1e-4;
  double dt_max = 1e-2;
  double safety = 0.1;  // fraction of a cell a step may drain
  StepMethod method = StepMethod::euler;
  double clip_ledger = 0.0;  // mass clipped to preserve positivity
};

enum class RunStatus { ok, stagnated };

// Per-step scalar series plus periodic measure snapshots. State series have
// one more entry than the number of steps (row 0 is the initial state);
// step_* series are aligned with the transitions.
struct Trajectory {
  std::vector<double> t, number, energy, atom_mass, overflow_number, overflow_energy,
      deficit;
  std::vector<double> phi05, phi075;                  // phi_alpha functionals
  std::vector<double> step_dt, step_rhs_phi05, step_rhs_phi075;
  std::vector<std::pair<double, GridMeasure>> snapshots;
  RunStatus status = RunStatus::ok;
  double initial_number = 0.0;

  std::size_t steps() const { return step_dt.size(); }
};

// True when dt * |negative rate| <= safety * g_i on every positive cell.
bool positivity_ok(const GridMeasure& m, const RateMeasure& rate, double dt,
                   double safety);

// g_i <- max(g_i + dt * rate_i, 0), clipped residual added to clip_accum;
// atom and overflow ledgers advance by their rates.
GridMeasure apply_rate(const GridMeasure& m, const RateMeasure& rate, double dt,
                       double& clip_accum);

// One forward step of the configured method at a given dt. Throws
// StepSizeError when dt violates the positivity bound.
GridMeasure step(const GridMeasure& m, StepControl& ctrl, const KernelParams& kp,
                 const DispersionModel& model, double dt, int threads = 1);

// Advance to t_end with adaptive dt: halve on a positivity violation, grow by
// 1.2 up to dt_max after an accepted step. Snapshots every `snapshot_stride`
// steps plus the initial and final states; t_end = 0 returns the initial
// state alone. On dt underflow below 1e-15 * t_end the partial trajectory is
// returned with status stagnated.
Trajectory run(const GridMeasure& m0, StepControl& ctrl, const KernelParams& kp,
               const DispersionModel& model, double t_end, int snapshot_stride,
               int threads = 1);

}  // namespace condkin
