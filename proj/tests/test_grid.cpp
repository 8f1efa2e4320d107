#include <doctest.h>

#include <random>

#include "condkin/diagnostics.hpp"
#include "condkin/grid.hpp"

using namespace condkin;

namespace {

GridMeasure uniform_unit_measure() {
  GridMeasure m(GridSpec(4, 1.0));
  m.cell_mass.setConstant(0.25);
  return m;
}

}  // namespace

TEST_CASE("grid spec geometry") {
  const GridSpec spec(4, 1.0);
  CHECK(spec.delta() == 0.25);
  CHECK(spec.center(0) == 0.125);
  CHECK(spec.center(3) == 0.875);
  CHECK_THROWS_AS(GridSpec(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(4, 0.0), std::invalid_argument);
}

TEST_CASE("init_measure power_exp") {
  const DispersionModel model(2.0, 1.0);
  {
    InitProfile p;
    p.c_ini = 1.0;
    p.number = 1.0;
    const GridMeasure m = init_measure(GridSpec(4, 1.0), p, model);
    for (int i = 0; i < 4; ++i) CHECK(m.cell_mass[i] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(m.atom_mass == 0.0);
    CHECK(m.overflow_number == 0.0);
    CHECK(m.overflow_energy == 0.0);
  }
  {
    InitProfile p;
    p.c_ini = 0.5;
    p.number = 1.0;
    const GridMeasure m = init_measure(GridSpec(2, 1.0), p, model);
    CHECK(m.cell_mass[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));
    CHECK(m.cell_mass[1] == doctest::Approx(1.0 - std::sqrt(0.5)).epsilon(1e-10));
  }
  {
    InitProfile p;
    p.c_ini = 0.02;
    p.omega_s = 0.5;
    p.number = 2.5;
    const GridMeasure m = init_measure(GridSpec(32, 3.0), p, model);
    CHECK(total_number(m) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(m.atom_mass == 0.0);
  }
  {
    InitProfile p;
    p.c_ini = 1.5;  // not integrable against the cell-0 parametrization
    CHECK_THROWS_AS(init_measure(GridSpec(4, 1.0), p, model), ConfigError);
  }
}

TEST_CASE("init_measure gaussian_bump") {
  const DispersionModel model(2.0, 1.0);
  InitProfile p;
  p.kind = InitProfile::Kind::gaussian_bump;
  p.omega_s = 1.5;
  p.number = 0.7;
  const GridMeasure m = init_measure(GridSpec(32, 3.0), p, model);
  CHECK(total_number(m) == doctest::Approx(0.7).epsilon(1e-12));
  // mass peaks at the cell containing the center
  int peak = 0;
  for (int i = 0; i < 32; ++i)
    if (m.cell_mass[i] > m.cell_mass[peak]) peak = i;
  CHECK(std::abs(m.spec.center(peak) - 1.5) <= m.spec.delta());
}

TEST_CASE("totals") {
  GridMeasure zero(GridSpec(4, 1.0));
  CHECK(total_number(zero) == 0.0);
  CHECK(total_energy(zero) == 0.0);

  GridMeasure m(GridSpec(4, 1.0));
  m.atom_mass = 0.3;
  m.cell_mass << 0.1, 0.2, 0.3, 0.1;
  CHECK(total_number(m) == doctest::Approx(1.0).epsilon(1e-15));

  GridMeasure atom_only(GridSpec(4, 1.0));
  atom_only.atom_mass = 2.0;
  CHECK(total_energy(atom_only) == 0.0);

  GridMeasure single(GridSpec(4, 1.0));
  single.cell_mass[2] = 1.0;
  CHECK(total_energy(single) == doctest::Approx(0.625).epsilon(1e-15));

  CHECK(total_energy(uniform_unit_measure()) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("mass_below") {
  GridMeasure m = uniform_unit_measure();
  m.atom_mass = 0.5;
  CHECK(mass_below(m, 0.0) == 0.5);
  CHECK(mass_below(m, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(mass_below(uniform_unit_measure(), 0.5) == doctest::Approx(0.5).epsilon(1e-14));
  // non-decreasing in R, reaching the total
  const GridMeasure u = uniform_unit_measure();
  double prev = -1.0;
  for (int k = 0; k <= 100; ++k) {
    const double v = mass_below(u, k / 100.0);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(prev == doctest::Approx(total_number(u)).epsilon(1e-15));
  CHECK_THROWS_AS(mass_below(u, -0.1), std::domain_error);
}

TEST_CASE("deposit") {
  GridMeasure m(GridSpec(4, 1.0));

  deposit(m, m.spec.center(3), 1.0);  // node hit
  CHECK(m.cell_mass[3] == 1.0);
  CHECK(m.atom_mass == 0.0);
  CHECK(m.cell_mass[0] == 0.0);

  deposit(m, 0.0, 1.0);
  CHECK(m.atom_mass == 1.0);

  GridMeasure w(GridSpec(4, 1.0));
  deposit(w, 0.0625, 1.0);  // half of the first center: even atom/cell split
  CHECK(w.atom_mass == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(w.cell_mass[0] == doctest::Approx(0.5).epsilon(1e-15));

  GridMeasure ov(GridSpec(4, 1.0));
  deposit(ov, 2.0, 0.25);  // beyond the last center
  CHECK(ov.overflow_number == 0.25);
  CHECK(ov.overflow_energy == doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(deposit(m, 0.5, -1.0), std::domain_error);
}

TEST_CASE("deposit conserves number and energy") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const GridSpec spec(13, 2.7);
  for (int trial = 0; trial < 1000; ++trial) {
    GridMeasure m(spec);
    const double target = spec.center(spec.n_cells - 1) * u(rng);
    const double amount = 10.0 * u(rng) + 1e-12;
    deposit(m, target, amount);
    CHECK(std::abs(total_number(m) - amount) <= 1e-14 * amount);
    CHECK(std::abs(total_energy(m) - amount * target) <=
          1e-14 * amount * (1.0 + target));
  }
}

TEST_CASE("two-point allocation sits below concave graphs") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const GridSpec spec(16, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double alpha = 0.5 + 0.49 * u(rng);
    const double target = spec.center(spec.n_cells - 1) * u(rng);
    GridMeasure m(spec);
    deposit(m, target, 1.0);
    const double allocated = functional(m, [&](double w) { return phi_alpha(alpha, w); });
    CHECK(allocated <= phi_alpha(alpha, target) + 1e-14);
  }
}

TEST_CASE("initial lower-bound shape for concentrated profiles") {
  const DispersionModel model(2.0, 1.0);
  InitProfile p;
  p.c_ini = 0.4;
  p.omega_s = 1.0;
  p.number = 1.0;
  const GridSpec spec(64, 2.0);
  const GridMeasure m = init_measure(spec, p, model);
  const double r_fit = spec.omega_max / 2.0;
  const double C = mass_below(m, r_fit) / std::pow(r_fit, p.c_ini);
  for (int j = 1; j * spec.delta() < std::min(p.omega_s, r_fit); ++j) {
    const double r = j * spec.delta();
    CHECK(mass_below(m, r) >= C * std::pow(r, p.c_ini) * (1.0 - 1e-12));
  }
}

TEST_CASE("functional") {
  GridMeasure m = uniform_unit_measure();
  m.atom_mass = 0.25;
  CHECK(functional(m, [](double) { return 1.0; }) ==
        doctest::Approx(total_number(m)).epsilon(1e-15));
  CHECK(functional(m, [](double w) { return w; }) ==
        doctest::Approx(total_energy(m)).epsilon(1e-15));
  GridMeasure single(GridSpec(2, 1.0));
  single.cell_mass[0] = 2.0;  // center 0.25
  CHECK(functional(single, [](double w) { return phi_alpha(0.5, w); }) ==
        doctest::Approx(1.0).epsilon(1e-15));
}
