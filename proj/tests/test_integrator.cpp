#include <doctest.h>

#include "condkin/diagnostics.hpp"
#include "condkin/integrator.hpp"

using namespace condkin;

namespace {

struct Problem {
  DispersionModel model{2.0, 1.0};
  KernelParams kp;
  GridMeasure m0;

  Problem() : m0(GridSpec(24, 3.0)) {
    kp.c12 = 1.0;
    kp.c22 = 1.0;
    kp.c31 = 0.5;
    kp.cutoff_n = 1.0;
    InitProfile prof;
    prof.c_ini = 0.2;
    prof.number = 1.0;
    m0 = init_measure(m0.spec, prof, model);
  }
};

}  // namespace

TEST_CASE("step leaves a zero measure unchanged") {
  Problem p;
  GridMeasure zero(p.m0.spec);
  StepControl ctrl;
  const GridMeasure out = step(zero, ctrl, p.kp, p.model, 1e-3);
  CHECK(out.cell_mass.abs().maxCoeff() == 0.0);
  CHECK(out.atom_mass == 0.0);
}

TEST_CASE("single coagulation pair moves exactly dt * rate") {
  const DispersionModel model(2.0, 1.0);
  KernelParams kp;
  kp.c12 = 1.0;
  kp.c22 = 0.0;  // 3-wave only
  kp.c31 = 0.0;
  kp.cutoff_n = 100.0;
  GridMeasure m(GridSpec(8, 2.0));
  m.cell_mass[0] = 0.5;
  const RateMeasure r = total_rhs(m, kp, model);
  StepControl ctrl;
  const double dt = 1e-6;
  const GridMeasure out = step(m, ctrl, kp, model, dt);
  for (int i = 0; i < 8; ++i)
    CHECK(out.cell_mass[i] ==
          doctest::Approx(m.cell_mass[i] + dt * r.cell_rate[i]).epsilon(1e-14));
  CHECK(total_number(out) <= total_number(m) + 1e-14);
}

TEST_CASE("positivity bound rejects oversized steps") {
  Problem p;
  StepControl ctrl;
  ctrl.safety = 0.1;
  CHECK_THROWS_AS(step(p.m0, ctrl, p.kp, p.model, 1e6), StepSizeError);
  CHECK_THROWS_AS(step(p.m0, ctrl, p.kp, p.model, 0.0), std::domain_error);
}

TEST_CASE("zero-length run returns the initial state alone") {
  Problem p;
  StepControl ctrl;
  const Trajectory traj = run(p.m0, ctrl, p.kp, p.model, 0.0, 1, 1);
  CHECK(traj.status == RunStatus::ok);
  CHECK(traj.steps() == 0);
  REQUIRE(traj.snapshots.size() == 1);
  CHECK(traj.snapshots.front().first == 0.0);
  CHECK((traj.snapshots.front().second.cell_mass - p.m0.cell_mass).abs().maxCoeff() ==
        0.0);
  CHECK_THROWS_AS(run(p.m0, ctrl, p.kp, p.model, -1.0, 1, 1), std::domain_error);
}

TEST_CASE("run conserves the ledgers") {
  Problem p;
  StepControl ctrl;
  ctrl.dt_init = 1e-4;
  ctrl.dt_max = 0.02;
  const Trajectory traj = run(p.m0, ctrl, p.kp, p.model, 0.5, 5, 2);
  CHECK(traj.status == RunStatus::ok);
  REQUIRE(traj.t.size() >= 3);
  const double e0 = traj.energy.front();
  for (std::size_t k = 1; k < traj.t.size(); ++k) {
    CHECK(traj.number[k] <= traj.number[k - 1] * (1.0 + 1e-12));
    CHECK(std::abs(traj.energy[k] + traj.overflow_energy[k] - e0) <= 1e-10 * e0);
    CHECK(traj.deficit[k] >= traj.deficit[k - 1] - 1e-14);
  }
  CHECK(ctrl.clip_ledger <= 1e-10 * traj.number.front());
  CHECK(traj.snapshots.front().first == 0.0);
  CHECK(traj.snapshots.back().first == doctest::Approx(0.5));
}

TEST_CASE("trajectory bookkeeping matches the assembled rates") {
  Problem p;
  StepControl ctrl;
  ctrl.dt_init = 1e-4;
  ctrl.dt_max = 0.01;
  const Trajectory traj = run(p.m0, ctrl, p.kp, p.model, 0.2, 100, 1);
  for (std::size_t k = 0; k < traj.steps(); ++k) {
    const double decrease = traj.phi05[k] - traj.phi05[k + 1];
    CHECK(std::abs(decrease + traj.step_dt[k] * traj.step_rhs_phi05[k]) <=
          1e-12 * traj.phi05.front());
  }
}

TEST_CASE("stagnation returns a partial trajectory") {
  Problem p;
  StepControl ctrl;
  ctrl.dt_init = 1.0;
  ctrl.dt_max = 1.0;
  ctrl.safety = 1e-18;  // every candidate dt violates the bound
  const Trajectory traj = run(p.m0, ctrl, p.kp, p.model, 1e6, 10, 1);
  CHECK(traj.status == RunStatus::stagnated);
  CHECK(traj.t.back() < 1e6);
}

TEST_CASE("euler refinement is first order") {
  Problem p;
  auto final_masses = [&](double h) {
    StepControl ctrl;
    ctrl.dt_init = h;
    ctrl.dt_max = h;
    ctrl.safety = 1.0;
    const Trajectory traj = run(p.m0, ctrl, p.kp, p.model, 0.1, 1000000, 1);
    REQUIRE(traj.status == RunStatus::ok);
    return traj.snapshots.back().second.cell_mass;
  };
  const Array u1 = final_masses(2e-3);
  const Array u2 = final_masses(1e-3);
  const Array u4 = final_masses(5e-4);
  const double e12 = (u1 - u2).abs().maxCoeff();
  const double e24 = (u2 - u4).abs().maxCoeff();
  const double order = std::log2(e12 / e24);
  CHECK(order >= 0.9);
}

TEST_CASE("repeated runs are bit identical") {
  Problem p;
  auto once = [&]() {
    StepControl ctrl;
    ctrl.dt_init = 1e-4;
    ctrl.dt_max = 0.01;
    return run(p.m0, ctrl, p.kp, p.model, 0.2, 5, 4);
  };
  const Trajectory a = once();
  const Trajectory b = once();
  REQUIRE(a.t.size() == b.t.size());
  for (std::size_t k = 0; k < a.t.size(); ++k) {
    CHECK(a.number[k] == b.number[k]);
    CHECK(a.energy[k] == b.energy[k]);
  }
  const Array& ga = a.snapshots.back().second.cell_mass;
  const Array& gb = b.snapshots.back().second.cell_mass;
  for (int i = 0; i < ga.size(); ++i) CHECK(ga[i] == gb[i]);
}

TEST_CASE("ssprk2 refinement is second order") {
  Problem p;
  auto final_masses = [&](double h) {
    StepControl ctrl;
    ctrl.dt_init = h;
    ctrl.dt_max = h;
    ctrl.safety = 1.0;
    ctrl.method = StepMethod::ssprk2;
    const Trajectory traj = run(p.m0, ctrl, p.kp, p.model, 0.1, 1000000, 1);
    REQUIRE(traj.status == RunStatus::ok);
    return traj.snapshots.back().second.cell_mass;
  };
  const Array u1 = final_masses(2e-3);
  const Array u2 = final_masses(1e-3);
  const Array u4 = final_masses(5e-4);
  const double order =
      std::log2((u1 - u2).abs().maxCoeff() / (u2 - u4).abs().maxCoeff());
  CHECK(order >= 1.8);
}

TEST_CASE("ssprk2 stays conservative") {
  Problem p;
  StepControl ctrl;
  ctrl.dt_init = 1e-4;
  ctrl.dt_max = 0.01;
  ctrl.method = StepMethod::ssprk2;
  const Trajectory traj = run(p.m0, ctrl, p.kp, p.model, 0.2, 10, 2);
  CHECK(traj.status == RunStatus::ok);
  const double e0 = traj.energy.front();
  for (std::size_t k = 1; k < traj.t.size(); ++k) {
    CHECK(traj.number[k] <= traj.number[k - 1] * (1.0 + 1e-12));
    CHECK(std::abs(traj.energy[k] + traj.overflow_energy[k] - e0) <= 1e-10 * e0);
  }
}
