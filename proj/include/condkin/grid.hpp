#pragma once

#include <cmath>
#include <limits>

#include "condkin/dispersion.hpp"
#include "condkin/types.hpp"

namespace condkin {

// Uniform cells tiling (0, omega_max]; cell i is (i*delta, (i+1)*delta] with
// center (i + 1/2)*delta. Production configurations require n_cells >= 8;
// the type itself admits any positive count so that small hand grids can be
// built in tests.
struct GridSpec {
  int n_cells = 0;
  double omega_max = 0.0;

  GridSpec() = default;
  GridSpec(int n, double wmax) : n_cells(n), omega_max(wmax) {
    if (n_cells < 1) throw std::invalid_argument("grid: n_cells must be >= 1");
    if (!(omega_max > 0.0)) throw std::invalid_argument("grid: omega_max must be > 0");
  }

  double delta() const { return omega_max / n_cells; }
  double center(int i) const { return (i + 0.5) * delta(); }
  Array centers() const {
    Array c(n_cells);
    for (int i = 0; i < n_cells; ++i) c[i] = center(i);
    return c;
  }
  bool operator==(const GridSpec& o) const {
    return n_cells == o.n_cells && omega_max == o.omega_max;
  }
};

// Discrete non-negative measure on [0, infinity): an atom at omega = 0, one
// mass per cell, and ledgers for mass/energy dropped above omega_max.
struct GridMeasure {
  GridSpec spec;
  Array cell_mass;
  double atom_mass = 0.0;
  double overflow_number = 0.0;
  double overflow_energy = 0.0;

  GridMeasure() = default;
  explicit GridMeasure(const GridSpec& s) : spec(s), cell_mass(Array::Zero(s.n_cells)) {}
};

struct InitProfile {
  enum class Kind { power_exp, gaussian_bump };
  Kind kind = Kind::power_exp;
  double c_ini = 1.0;      // power_exp exponent, density ~ omega^{c_ini - 1}
  double amplitude = 1.0;  // raw density scale (normalization makes it moot)
  double omega_s = std::numeric_limits<double>::infinity();  // decay scale
  double number = 1.0;     // target total cell mass
};

// Two-point allocation of a deposit at omega_star among the nodes
// {0 (atom), centers...}: weights applied to the deposited amount.
// a = -1 denotes the atom. Overflow routes past the last center.
struct Allocation {
  int a = -1, b = -1;    // node indices; b == -2 when unused
  double wa = 0, wb = 0; // fractions of the amount (wa + wb = 1)
  bool overflow = false;
};

Allocation allocate(const GridSpec& spec, double omega_star);

// Exact per-cell integrals of the profile density (adaptive quadrature,
// relative tolerance 1e-10), normalized so the cell masses sum to
// profile.number. Atom and overflow start at zero.
GridMeasure init_measure(const GridSpec& spec, const InitProfile& profile,
                         const DispersionModel& model);

double total_number(const GridMeasure& m);
double total_energy(const GridMeasure& m);

// atom + cells fully below R + linear fraction of the straddling cell
double mass_below(const GridMeasure& m, double R);

// Deposit `amount` at omega_star, conserving number and energy exactly via
// the two-point allocation; above the last center the amount goes to the
// overflow ledgers.
void deposit(GridMeasure& m, double omega_star, double amount);

// phi(0) * atom + sum_i g_i * phi(center_i)
template <class Phi>
double functional(const GridMeasure& m, Phi&& phi) {
  double s = phi(0.0) * m.atom_mass;
  for (int i = 0; i < m.spec.n_cells; ++i) s += m.cell_mass[i] * phi(m.spec.center(i));
  return s;
}

}  // namespace condkin
