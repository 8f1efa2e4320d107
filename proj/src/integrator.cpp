#include "condkin/integrator.hpp"

#include "condkin/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace condkin {

namespace {

void record_state(Trajectory& traj, double t, const GridMeasure& m) {
  traj.t.push_back(t);
  const double num = total_number(m);
  traj.number.push_back(num);
  traj.energy.push_back(total_energy(m));
  traj.atom_mass.push_back(m.atom_mass);
  traj.overflow_number.push_back(m.overflow_number);
  traj.overflow_energy.push_back(m.overflow_energy);
  traj.deficit.push_back(traj.initial_number - num);
  traj.phi05.push_back(functional(m, [](double w) { return phi_alpha(0.5, w); }));
  traj.phi075.push_back(functional(m, [](double w) { return phi_alpha(0.75, w); }));
}

}  // namespace

bool positivity_ok(const GridMeasure& m, const RateMeasure& rate, double dt,
                   double safety) {
  for (int i = 0; i < m.spec.n_cells; ++i) {
    const double g = m.cell_mass[i];
    const double r = rate.cell_rate[i];
    if (g > 0.0 && r < 0.0 && dt * (-r) > safety * g) return false;
    if (g == 0.0 && r < 0.0 && dt * (-r) > 0.0) {
      // rounding-scale undershoot on an empty cell is tolerated and clipped
      if (dt * (-r) > 1e-14) return false;
    }
  }
  return true;
}

GridMeasure apply_rate(const GridMeasure& m, const RateMeasure& rate, double dt,
                       double& clip_accum) {
  GridMeasure out = m;
  out.cell_mass = m.cell_mass + dt * rate.cell_rate;
  for (int i = 0; i < out.spec.n_cells; ++i) {
    if (out.cell_mass[i] < 0.0) {
      clip_accum += -out.cell_mass[i];
      out.cell_mass[i] = 0.0;
    }
  }
  out.atom_mass = m.atom_mass + dt * rate.atom_rate;
  out.overflow_number = m.overflow_number + dt * rate.overflow_number_rate;
  out.overflow_energy = m.overflow_energy + dt * rate.overflow_energy_rate;
  return out;
}

GridMeasure step(const GridMeasure& m, StepControl& ctrl, const KernelParams& kp,
                 const DispersionModel& model, double dt, int threads) {
  if (!(dt > 0.0)) throw std::domain_error("step: dt must be > 0");
  const RateMeasure r1 = total_rhs(m, kp, model, threads);
  if (!positivity_ok(m, r1, dt, ctrl.safety))
    throw StepSizeError("step: dt violates the positivity bound");
  double clip = 0.0;
  GridMeasure u1 = apply_rate(m, r1, dt, clip);
  if (ctrl.method == StepMethod::euler) {
    ctrl.clip_ledger += clip;
    return u1;
  }
  // SSP-RK2: convex average of two Euler stages keeps the positivity logic.
  const RateMeasure r2 = total_rhs(u1, kp, model, threads);
  if (!positivity_ok(u1, r2, dt, ctrl.safety))
    throw StepSizeError("step: dt violates the positivity bound (stage 2)");
  GridMeasure u2 = apply_rate(u1, r2, dt, clip);
  ctrl.clip_ledger += clip;
  GridMeasure out = m;
  out.cell_mass = 0.5 * (m.cell_mass + u2.cell_mass);
  out.atom_mass = 0.5 * (m.atom_mass + u2.atom_mass);
  out.overflow_number = 0.5 * (m.overflow_number + u2.overflow_number);
  out.overflow_energy = 0.5 * (m.overflow_energy + u2.overflow_energy);
  return out;
}

Trajectory run(const GridMeasure& m0, StepControl& ctrl, const KernelParams& kp,
               const DispersionModel& model, double t_end, int snapshot_stride,
               int threads) {
  if (t_end < 0.0) throw std::domain_error("run: t_end must be >= 0");
  if (snapshot_stride < 1) snapshot_stride = 1;

  Trajectory traj;
  traj.initial_number = total_number(m0);
  GridMeasure m = m0;
  double t = 0.0;
  record_state(traj, t, m);
  traj.snapshots.emplace_back(t, m);
  if (t_end == 0.0) return traj;  // degenerate run: the initial state alone

  double dt_next = std::min(ctrl.dt_init, ctrl.dt_max);
  long steps = 0;
  const double dt_floor = 1e-15 * t_end;

  while (t < t_end) {
    const RateMeasure rate = total_rhs(m, kp, model, threads);
    double dt = std::min(dt_next, t_end - t);
    bool stagnated = false;
    auto shrink = [&]() {
      dt *= 0.5;
      if (dt < dt_floor) stagnated = true;
    };
    while (!stagnated && !positivity_ok(m, rate, dt, ctrl.safety)) shrink();

    GridMeasure m_new;
    double phi05_dot = 0.0, phi075_dot = 0.0;
    double clip = 0.0;
    if (!stagnated && ctrl.method == StepMethod::euler) {
      phi05_dot = rate.pair_with([](double w) { return phi_alpha(0.5, w); });
      phi075_dot = rate.pair_with([](double w) { return phi_alpha(0.75, w); });
      m_new = apply_rate(m, rate, dt, clip);
    } else if (!stagnated) {
      for (;;) {
        clip = 0.0;
        GridMeasure u1 = apply_rate(m, rate, dt, clip);
        const RateMeasure r2 = total_rhs(u1, kp, model, threads);
        if (positivity_ok(u1, r2, dt, ctrl.safety)) {
          GridMeasure u2 = apply_rate(u1, r2, dt, clip);
          m_new = m;
          m_new.cell_mass = 0.5 * (m.cell_mass + u2.cell_mass);
          m_new.atom_mass = 0.5 * (m.atom_mass + u2.atom_mass);
          m_new.overflow_number = 0.5 * (m.overflow_number + u2.overflow_number);
          m_new.overflow_energy = 0.5 * (m.overflow_energy + u2.overflow_energy);
          auto p05 = [](double w) { return phi_alpha(0.5, w); };
          auto p075 = [](double w) { return phi_alpha(0.75, w); };
          phi05_dot = 0.5 * (rate.pair_with(p05) + r2.pair_with(p05));
          phi075_dot = 0.5 * (rate.pair_with(p075) + r2.pair_with(p075));
          break;
        }
        shrink();
        if (stagnated) break;
      }
    }
    if (stagnated) {
      traj.status = RunStatus::stagnated;
      traj.snapshots.emplace_back(t, m);
      return traj;
    }
    ctrl.clip_ledger += clip;
    traj.step_dt.push_back(dt);
    traj.step_rhs_phi05.push_back(phi05_dot);
    traj.step_rhs_phi075.push_back(phi075_dot);
    m = std::move(m_new);
    t += dt;
    ++steps;
    record_state(traj, t, m);
    if (steps % snapshot_stride == 0 && t < t_end) traj.snapshots.emplace_back(t, m);
    dt_next = std::min(dt * 1.2, ctrl.dt_max);
  }
  traj.snapshots.emplace_back(t, m);
  return traj;
}

}  // namespace condkin
