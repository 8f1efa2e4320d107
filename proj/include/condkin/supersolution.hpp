#pragma once

#include <functional>
#include <utility>

#include "condkin/types.hpp"

namespace condkin {

// Non-negative transport kernel K(t, z) sampled on a uniform rectangle
// [0, T1] x [0, Z]. Quadrature against z uses the sampling nodes with
// trapezoid weights, so the sampled kernel is treated as the (atomic)
// quadrature measure itself and the z-integrals carry no separate error.
struct TransportKernel {
  Array t_nodes, z_nodes;
  Eigen::ArrayXXd values;  // (n_t, n_z)

  TransportKernel() = default;
  TransportKernel(Array t, Array z, Eigen::ArrayXXd v);

  static TransportKernel constant(double value, double T1, double Z, int nt, int nz);

  double T1() const { return t_nodes[t_nodes.size() - 1]; }

  // trapezoid over z of K(t_i, z) * z  (resp. of K(t_i, z))
  double z_moment(Eigen::Index it) const;
  double z_total(Eigen::Index it) const;
};

// Barrier P >= 0 whose weak derivative satisfies P'(z1 + z2) >= P'(z1).
struct BarrierFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

// The concrete family P(z) = exp[(R/20 - z)_+ / R] - 1, derivative analytic
// (piecewise exponential, kink at z = R/20).
BarrierFunction exponential_barrier(double R);

// Samples P'(z1 + z2) >= P'(z1) on random pairs; false on a violation.
bool barrier_derivative_monotone(const BarrierFunction& p, double z_max, int samples,
                                 unsigned seed);

enum class YConvention { z_weighted, plain };

// X(t) = int_t^T1 ds int K(s, z) z dz; Y(t) = int_0^t ds int K(s, z) [z] dz,
// z-weighted or plain per the convention flag. Trapezoid in both variables.
std::pair<double, double> build_xy(const TransportKernel& k, double t,
                                   YConvention yc = YConvention::z_weighted);

struct SupersolutionReport {
  double min_residual = 0;
  double max_abs_psi = 0;
  double t_at_min = 0, x_at_min = 0;
  YConvention y_convention = YConvention::z_weighted;
};

// Evaluates min over a (t, x) grid of
//   d/dt psi + int K(t, z) [psi(t, x + z) - psi(t, x)] dz,
// psi(t, x) = e^{Y(t)} P(X(t) + x), with a central difference in t. Throws
// PreconditionError when the barrier fails the monotone-derivative property.
// `t_scan_stride` thins the scanned t nodes; the difference stencil always
// uses the kernel's native spacing.
SupersolutionReport check_supersolution(const TransportKernel& k,
                                        const BarrierFunction& p, int nx, double x_max,
                                        YConvention yc = YConvention::z_weighted,
                                        int t_scan_stride = 1);

}  // namespace condkin
