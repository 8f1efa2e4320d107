#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "condkin/dispersion.hpp"

namespace condkin {

// Coupling constants and the frequency truncation level n of the cut-off
// kernels. The grid-level constraint cutoff_n <= omega_max/3 is enforced at
// configuration load, not here, so that off-grid outputs can be exercised
// against the overflow ledger in tests.
struct KernelParams {
  double c12 = 1.0;
  double c22 = 1.0;
  double c31 = 0.0;
  double mu = 0.0;
  double cutoff_n = 1.0;

  void check() const {
    if (!(c12 > 0.0)) throw std::invalid_argument("kernels: c12 must be > 0");
    if (!(c22 > 0.0)) throw std::invalid_argument("kernels: c22 must be > 0");
    if (c31 < 0.0) throw std::invalid_argument("kernels: c31 must be >= 0");
    if (mu < 0.0) throw std::invalid_argument("kernels: mu must be >= 0");
    if (!(cutoff_n > 0.0)) throw std::invalid_argument("kernels: cutoff_n must be > 0");
  }
};

inline bool below_cutoff(const KernelParams& kp, double w) { return w <= kp.cutoff_n; }

// frakA(w1 + w2) with input truncation at n
inline double kplus12(const KernelParams& kp, const DispersionModel& m, double w1,
                      double w2) {
  if (w1 < 0 || w2 < 0) throw std::domain_error("kplus12: negative frequency");
  if (!below_cutoff(kp, w1) || !below_cutoff(kp, w2)) return 0.0;
  return m.frakA(w1 + w2);
}

// frakA(w1 - w2), defined for w1 >= w2, with input truncation at n
inline double kminus12(const KernelParams& kp, const DispersionModel& m, double w1,
                       double w2) {
  if (w2 < 0) throw std::domain_error("kminus12: negative frequency");
  if (w1 < w2) throw std::domain_error("kminus12: requires w1 >= w2");
  if (!below_cutoff(kp, w1) || !below_cutoff(kp, w2)) return 0.0;
  return m.frakA(w1 - w2);
}

// [max(|w - w2|, |w1 - w2|) / (2 (w + w1))]^mu; 1 when mu = 0.
// The w = w1 = 0 corner with mu > 0 is assigned its limit value 0.
inline double w22_factor(const KernelParams& kp, double w, double w1, double w2) {
  if (kp.mu == 0.0) return 1.0;
  const double denom = 2.0 * (w + w1);
  if (denom <= 0.0) return 0.0;
  const double num = std::max(std::abs(w - w2), std::abs(w1 - w2));
  if (kp.mu == 1.0) return num / denom;
  return std::pow(num / denom, kp.mu);
}

// Reduced 2<->2 kernel
//   Theta(w + w1 - w2) * w22_factor * min{|k|, |k1|, |k2|, |k|(w+w1-w2)}
//     / (|k| |k1| |k2|)
// with indicator w + w1 >= w2 and input truncation at n. Vanishes when any
// input frequency is 0 (the min factor carries the |k| -> 0 limit).
inline double k22(const KernelParams& kp, const DispersionModel& m, double w,
                  double w1, double w2) {
  if (w < 0 || w1 < 0 || w2 < 0) throw std::domain_error("k22: negative frequency");
  if (w + w1 < w2) return 0.0;
  if (!below_cutoff(kp, w) || !below_cutoff(kp, w1) || !below_cutoff(kp, w2)) return 0.0;
  if (w == 0.0 || w1 == 0.0 || w2 == 0.0) return 0.0;
  const double w3 = w + w1 - w2;
  const double k = m.wavenumber(w);
  const double k1 = m.wavenumber(w1);
  const double k2 = m.wavenumber(w2);
  const double k3 = m.wavenumber(w3);
  const double kmin = std::min(std::min(k, k1), std::min(k2, k3));
  if (kmin == 0.0) return 0.0;
  return m.theta(w3) * w22_factor(kp, w, w1, w2) * kmin / (k * k1 * k2);
}

// frakA(w1 + w2 + w3), all inputs truncated at n
inline double kplus31(const KernelParams& kp, const DispersionModel& m, double w1,
                      double w2, double w3) {
  if (w1 < 0 || w2 < 0 || w3 < 0) throw std::domain_error("kplus31: negative frequency");
  if (!below_cutoff(kp, w1) || !below_cutoff(kp, w2) || !below_cutoff(kp, w3))
    return 0.0;
  return m.frakA(w1 + w2 + w3);
}

// frakA(w1 - w2 - w3), defined for w1 >= w2 + w3, all inputs truncated at n
inline double kminus31(const KernelParams& kp, const DispersionModel& m, double w1,
                       double w2, double w3) {
  if (w2 < 0 || w3 < 0) throw std::domain_error("kminus31: negative frequency");
  if (w1 < w2 + w3) throw std::domain_error("kminus31: requires w1 >= w2 + w3");
  if (!below_cutoff(kp, w1) || !below_cutoff(kp, w2) || !below_cutoff(kp, w3))
    return 0.0;
  return m.frakA(w1 - w2 - w3);
}

// Closed form of int_0^inf sin(a s) sin(b s) sin(c s) / s ds for positive a,
// b, c: pi/4 under the strict triangle condition, 0 when one side strictly
// exceeds the sum of the other two. The degenerate boundary is rejected (the
// value there, pi/8, is never used downstream).
inline double sine3(double a, double b, double c) {
  if (!(a > 0) || !(b > 0) || !(c > 0))
    throw std::domain_error("sine3: arguments must be positive");
  const double m1 = a + b - c, m2 = a + c - b, m3 = b + c - a;
  if (m1 == 0.0 || m2 == 0.0 || m3 == 0.0)
    throw std::domain_error("sine3: degenerate triangle");
  if (m1 > 0 && m2 > 0 && m3 > 0) return M_PI / 4.0;
  return 0.0;
}

// Signed sum over the 16 sign patterns (-1)^{#minus+1} |±a ± b ± c ± d|,
// scaled so that it equals int_0^inf sin(a s) sin(b s) sin(c s) sin(d s) / s^2 ds.
// Under a + b = c + d type resonance this reduces to (pi/4) min{a,b,c,d};
// when d < a + b + c with the sum resonance it reduces to (pi/8)(a+b+c-d).
inline double sine4_signed_sum(double a, double b, double c, double d) {
  if (!(a > 0) || !(b > 0) || !(c > 0) || !(d > 0))
    throw std::domain_error("sine4_signed_sum: arguments must be positive");
  double s = 0.0;
  for (int bits = 0; bits < 16; ++bits) {
    const double sa = (bits & 1) ? -a : a;
    const double sb = (bits & 2) ? -b : b;
    const double sc = (bits & 4) ? -c : c;
    const double sd = (bits & 8) ? -d : d;
    const int nminus = __builtin_popcount(static_cast<unsigned>(bits));
    const double sign = (nminus % 2 == 0) ? -1.0 : 1.0;
    s += sign * std::abs(sa + sb + sc + sd);
  }
  // The 16-pattern sum double counts conjugate patterns; pi/32 rather than
  // pi/16 reproduces the reduced closed forms above.
  return s * M_PI / 32.0;
}

}  // namespace condkin
