#pragma once

#include <cmath>
#include <functional>

namespace condkin {

// Damped-oscillatory quadrature: evaluates int_0^inf e^{-eps s} f(s) ds by
// composite Simpson on [0, span/eps] at four dyadic eps levels and removes
// the damping bias by fitting V(eps) = V0 + A eps ln(eps) + B eps + C eps^2.
// The eps ln(eps) term appears whenever a sign combination of the integrand's
// frequencies vanishes (e.g. resonant sin-product tuples).
inline double damped_oscillatory_integral(const std::function<double(double)>& f,
                                          double eps0 = 0.02, double h = 0.002,
                                          double span = 30.0) {
  auto damped = [&](double eps) {
    const double S = span / eps;
    long n = static_cast<long>(S / h);
    if (n % 2) ++n;
    const double step = S / n;
    double s = f(0.0) + std::exp(-eps * S) * f(S);
    for (long i = 1; i < n; ++i) {
      const double x = i * step;
      s += ((i % 2) ? 4.0 : 2.0) * std::exp(-eps * x) * f(x);
    }
    return s * step / 3.0;
  };
  constexpr int kN = 4;
  double mat[kN][kN + 1];
  for (int j = 0; j < kN; ++j) {
    const double eps = eps0 / double(1 << j);
    mat[j][0] = 1.0;
    mat[j][1] = eps * std::log(eps);
    mat[j][2] = eps;
    mat[j][3] = eps * eps;
    mat[j][kN] = damped(eps);
  }
  for (int col = 0; col < kN; ++col) {
    int piv = col;
    for (int r = col + 1; r < kN; ++r)
      if (std::abs(mat[r][col]) > std::abs(mat[piv][col])) piv = r;
    for (int c = 0; c <= kN; ++c) std::swap(mat[col][c], mat[piv][c]);
    for (int r = col + 1; r < kN; ++r) {
      const double factor = mat[r][col] / mat[col][col];
      for (int c = col; c <= kN; ++c) mat[r][c] -= factor * mat[col][c];
    }
  }
  double coef[kN];
  for (int r = kN - 1; r >= 0; --r) {
    double rhs = mat[r][kN];
    for (int c = r + 1; c < kN; ++c) rhs -= mat[r][c] * coef[c];
    coef[r] = rhs / mat[r][r];
  }
  return coef[0];
}

// sin(a s) sin(b s) sin(c s) / s with its s -> 0 limit
inline double sin3_over_s(double a, double b, double c, double s) {
  if (s < 1e-9) return a * b * c * s * s;
  return std::sin(a * s) * std::sin(b * s) * std::sin(c * s) / s;
}

// sin(a s) sin(b s) sin(c s) sin(d s) / s^2 with its s -> 0 limit
inline double sin4_over_s2(double a, double b, double c, double d, double s) {
  if (s < 1e-9) return a * b * c * d * s * s;
  return std::sin(a * s) * std::sin(b * s) * std::sin(c * s) * std::sin(d * s) / (s * s);
}

}  // namespace condkin
