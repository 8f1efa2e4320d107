#include "condkin/supersolution.hpp"

#include <cmath>
#include <random>

namespace condkin {

TransportKernel::TransportKernel(Array t, Array z, Eigen::ArrayXXd v)
    : t_nodes(std::move(t)), z_nodes(std::move(z)), values(std::move(v)) {
  if (t_nodes.size() < 2 || z_nodes.size() < 2)
    throw std::invalid_argument("transport kernel: need at least 2x2 samples");
  if (values.rows() != t_nodes.size() || values.cols() != z_nodes.size())
    throw std::invalid_argument("transport kernel: sample shape mismatch");
  if ((values < 0.0).any())
    throw std::invalid_argument("transport kernel: negative sample");
}

TransportKernel TransportKernel::constant(double value, double T1, double Z, int nt,
                                          int nz) {
  Array t = Array::LinSpaced(nt, 0.0, T1);
  Array z = Array::LinSpaced(nz, 0.0, Z);
  Eigen::ArrayXXd v = Eigen::ArrayXXd::Constant(nt, nz, value);
  return TransportKernel(std::move(t), std::move(z), std::move(v));
}

namespace {

double trapz(const Array& x, const Array& f) {
  double s = 0.0;
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i)
    s += 0.5 * (f[i] + f[i + 1]) * (x[i + 1] - x[i]);
  return s;
}

}  // namespace

double TransportKernel::z_moment(Eigen::Index it) const {
  Array f = values.row(it).transpose() * z_nodes;
  return trapz(z_nodes, f);
}

double TransportKernel::z_total(Eigen::Index it) const {
  Array f = values.row(it).transpose();
  return trapz(z_nodes, f);
}

BarrierFunction exponential_barrier(double R) {
  if (!(R > 0.0)) throw std::invalid_argument("exponential_barrier: R must be > 0");
  BarrierFunction b;
  b.value = [R](double z) {
    const double arg = std::max(R / 20.0 - z, 0.0) / R;
    return std::exp(arg) - 1.0;
  };
  b.derivative = [R](double z) {
    if (z >= R / 20.0) return 0.0;
    return -std::exp((R / 20.0 - z) / R) / R;
  };
  return b;
}

bool barrier_derivative_monotone(const BarrierFunction& p, double z_max, int samples,
                                 unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uz(0.0, z_max);
  double scale = 1e-300;
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(samples);
  for (int s = 0; s < samples; ++s) {
    const double z1 = uz(rng), z2 = uz(rng);
    pairs.emplace_back(z1, z2);
    scale = std::max(scale, std::abs(p.derivative(z1)));
  }
  const double tol = 1e-12 * scale;
  for (auto [z1, z2] : pairs)
    if (p.derivative(z1 + z2) < p.derivative(z1) - tol) return false;
  return true;
}

namespace {

struct XYTables {
  Array t;          // node times
  Array cum_w;      // int_0^{t_i} of z-weighted moment
  Array cum_p;      // int_0^{t_i} of plain total
  double total_w = 0;

  double X(double tt) const { return total_w - interp(cum_w, tt); }
  double Y(double tt, YConvention yc) const {
    return interp(yc == YConvention::z_weighted ? cum_w : cum_p, tt);
  }

  double interp(const Array& cum, double tt) const {
    const Eigen::Index n = t.size();
    if (tt <= t[0]) return cum[0];
    if (tt >= t[n - 1]) return cum[n - 1];
    Eigen::Index i = std::min<Eigen::Index>(
        n - 2, static_cast<Eigen::Index>((tt - t[0]) / (t[1] - t[0])));
    while (i > 0 && t[i] > tt) --i;
    while (i + 1 < n - 1 && t[i + 1] <= tt) ++i;
    const double lam = (tt - t[i]) / (t[i + 1] - t[i]);
    return cum[i] + lam * (cum[i + 1] - cum[i]);
  }
};

XYTables build_tables(const TransportKernel& k) {
  XYTables tb;
  const Eigen::Index nt = k.t_nodes.size();
  tb.t = k.t_nodes;
  tb.cum_w = Array::Zero(nt);
  tb.cum_p = Array::Zero(nt);
  Array mom(nt), tot(nt);
  for (Eigen::Index i = 0; i < nt; ++i) {
    mom[i] = k.z_moment(i);
    tot[i] = k.z_total(i);
  }
  for (Eigen::Index i = 1; i < nt; ++i) {
    const double dt = k.t_nodes[i] - k.t_nodes[i - 1];
    tb.cum_w[i] = tb.cum_w[i - 1] + 0.5 * (mom[i] + mom[i - 1]) * dt;
    tb.cum_p[i] = tb.cum_p[i - 1] + 0.5 * (tot[i] + tot[i - 1]) * dt;
  }
  tb.total_w = tb.cum_w[nt - 1];
  return tb;
}

}  // namespace

std::pair<double, double> build_xy(const TransportKernel& k, double t, YConvention yc) {
  if (t < 0.0 || t > k.T1()) throw std::domain_error("build_xy: t outside [0, T1]");
  const XYTables tb = build_tables(k);
  return {tb.X(t), tb.Y(t, yc)};
}

SupersolutionReport check_supersolution(const TransportKernel& k,
                                        const BarrierFunction& p, int nx, double x_max,
                                        YConvention yc, int t_scan_stride) {
  if (nx < 2 || !(x_max > 0.0))
    throw std::invalid_argument("check_supersolution: bad x grid");
  if (k.t_nodes.size() < 3)
    throw std::invalid_argument("check_supersolution: need >= 3 time nodes");
  if (t_scan_stride < 1) t_scan_stride = 1;
  const double zmax = k.z_nodes[k.z_nodes.size() - 1];
  if (!barrier_derivative_monotone(p, zmax + x_max, 400, 20240u))
    throw PreconditionError(
        "check_supersolution: barrier derivative is not super-additive");

  const XYTables tb = build_tables(k);
  const Eigen::Index nt = k.t_nodes.size();
  const Eigen::Index nz = k.z_nodes.size();

  // X and e^Y at the node times
  Array Xs(nt), eYs(nt);
  for (Eigen::Index it = 0; it < nt; ++it) {
    Xs[it] = tb.total_w - tb.cum_w[it];
    eYs[it] = std::exp(yc == YConvention::z_weighted ? tb.cum_w[it] : tb.cum_p[it]);
  }
  auto psi = [&](Eigen::Index it, double x) { return eYs[it] * p.value(Xs[it] + x); };

  SupersolutionReport rep;
  rep.y_convention = yc;
  rep.min_residual = std::numeric_limits<double>::infinity();

  for (Eigen::Index it = 1; it + 1 < nt; it += t_scan_stride) {
    const double dt_l = k.t_nodes[it] - k.t_nodes[it - 1];
    const double dt_r = k.t_nodes[it + 1] - k.t_nodes[it];
    for (int jx = 0; jx < nx; ++jx) {
      const double x = x_max * jx / (nx - 1);
      const double ps = psi(it, x);
      rep.max_abs_psi = std::max(rep.max_abs_psi, std::abs(ps));
      const double dpsi_dt = (psi(it + 1, x) - psi(it - 1, x)) / (dt_l + dt_r);
      // trapezoid over the kernel's own z nodes
      double integ = 0.0;
      for (Eigen::Index iz = 0; iz + 1 < nz; ++iz) {
        const double f0 = k.values(it, iz) * (psi(it, x + k.z_nodes[iz]) - ps);
        const double f1 = k.values(it, iz + 1) * (psi(it, x + k.z_nodes[iz + 1]) - ps);
        integ += 0.5 * (f0 + f1) * (k.z_nodes[iz + 1] - k.z_nodes[iz]);
      }
      const double res = dpsi_dt + integ;
      if (res < rep.min_residual) {
        rep.min_residual = res;
        rep.t_at_min = k.t_nodes[it];
        rep.x_at_min = x;
      }
    }
  }
  return rep;
}

}  // namespace condkin
