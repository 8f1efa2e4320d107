#pragma once

#include <cmath>
#include <stdexcept>

#include "condkin/types.hpp"

namespace condkin {

struct ValidationReport {
  double delta = 0, delta_prime = 0, theta = 0, varrho = 0;
  double margin = 0;  // 2*delta - 1/2 - varrho
  bool a1 = false, a2 = false, a3 = false, a4 = false, a5 = false;
  bool all_pass() const { return a1 && a2 && a3 && a4 && a5; }
};

// Power-law dispersion omega = c |k|^p with p in [3/2, 2].
//
// Derived radial weights in terms of omega:
//   Theta(omega) = |k| / omega'(|k|) = (omega/c)^varrho / (c p)
//   frakA(omega) = |k|^2 / omega'(|k|) = (omega/c)^theta / (c p)
// with varrho = (2-p)/p and theta = (3-p)/p. Exponents are derived from p,
// never user-supplied.
class DispersionModel {
 public:
  DispersionModel(double p, double c_disp) : DispersionModel(p, c_disp, true) {}

  // Test hook: skip the [3/2, 2] range check (for exercising the validator).
  static DispersionModel unchecked(double p, double c_disp) {
    return DispersionModel(p, c_disp, false);
  }

  double p() const { return p_; }
  double c_disp() const { return c_; }

  double delta() const { return 1.0 / p_; }
  double delta_prime() const { return 1.0 / p_; }
  double varrho() const { return varrho_; }
  double theta_exponent() const { return theta_; }

  // omega(|k|) = c |k|^p
  double omega(double k_abs) const {
    if (k_abs < 0) throw std::domain_error("omega: negative wavenumber");
    return c_ * std::pow(k_abs, p_);
  }

  // |k|(omega), the unique inverse
  double wavenumber(double om) const {
    if (om < 0) throw std::domain_error("wavenumber: negative frequency");
    const double x = om * inv_c_;
    if (inv_p_ == 0.5) return std::sqrt(x);
    return std::pow(x, inv_p_);
  }

  // Theta(omega); constant 1/(c p) when p = 2, 0 at omega = 0 otherwise
  double theta(double om) const {
    if (om < 0) throw std::domain_error("theta: negative frequency");
    if (varrho_ == 0.0) return coef_;
    return coef_ * std::pow(om * inv_c_, varrho_);
  }

  // frakA(omega) = |k| * Theta(omega); frakA(0) = 0
  double frakA(double om) const {
    if (om < 0) throw std::domain_error("frakA: negative frequency");
    if (theta_ == 1.0) return coef_ * (om * inv_c_);
    return coef_ * std::pow(om * inv_c_, theta_);
  }

  ValidationReport validate() const {
    ValidationReport r;
    r.delta = delta();
    r.delta_prime = delta_prime();
    r.theta = theta_;
    r.varrho = varrho_;
    r.margin = 2.0 * r.delta - 0.5 - r.varrho;
    // A1: 1 < 1/delta <= 2, omega(0) = 0, monotone, superadditive (p >= 1)
    r.a1 = p_ > 1.0 && p_ <= 2.0 && c_ > 0.0;
    // A2: radial identification; structural for this family
    r.a2 = true;
    // A3: 0 < theta <= 1 and frakA non-decreasing (needs p in [3/2, 2])
    r.a3 = r.theta > 0.0 && r.theta <= 1.0;
    // A4: 0 <= varrho <= 1 and Theta non-decreasing (needs p <= 2)
    r.a4 = r.varrho >= 0.0 && r.varrho <= 1.0 && p_ <= 2.0;
    // A5: 2*delta - 1/2 > varrho (identically 1/2 margin for this family)
    r.a5 = r.margin > 0.0;
    return r;
  }

 private:
  DispersionModel(double p, double c_disp, bool strict)
      : p_(p), c_(c_disp) {
    if (!(c_ > 0.0)) throw std::invalid_argument("dispersion: c must be > 0");
    if (strict && !(p_ >= 1.5 && p_ <= 2.0))
      throw std::invalid_argument("dispersion: p must lie in [3/2, 2]");
    if (!(p_ > 0.0)) throw std::invalid_argument("dispersion: p must be > 0");
    inv_p_ = 1.0 / p_;
    inv_c_ = 1.0 / c_;
    varrho_ = (2.0 - p_) / p_;
    theta_ = (3.0 - p_) / p_;
    coef_ = 1.0 / (c_ * p_);
  }

  double p_, c_;
  double inv_p_, inv_c_, varrho_, theta_, coef_;
};

}  // namespace condkin
