#include <doctest.h>

#include "condkin/supersolution.hpp"
#include "condkin/verify.hpp"

using namespace condkin;

TEST_CASE("build_xy") {
  {
    const TransportKernel k = TransportKernel::constant(0.0, 1.0, 1.0, 51, 51);
    const auto [x, y] = build_xy(k, 0.3);
    CHECK(x == 0.0);
    CHECK(y == 0.0);
  }
  const TransportKernel k = TransportKernel::constant(1.0, 1.0, 1.0, 101, 101);
  {
    const auto [x, y] = build_xy(k, 0.0);
    CHECK(x == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(y == 0.0);
  }
  {
    const auto [x, y] = build_xy(k, 1.0);
    CHECK(x == 0.0);
    CHECK(y == doctest::Approx(0.5).epsilon(1e-14));
  }
  {
    const auto [x, y] = build_xy(k, 1.0, YConvention::plain);
    CHECK(x == 0.0);
    CHECK(y == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(build_xy(k, -0.1), std::domain_error);
  CHECK_THROWS_AS(build_xy(k, 1.5), std::domain_error);

  // quadrature agrees with itself under refinement
  const TransportKernel fine = TransportKernel::constant(1.0, 1.0, 1.0, 401, 401);
  const auto [xc, yc] = build_xy(k, 0.25);
  const auto [xf, yf] = build_xy(fine, 0.25);
  CHECK(std::abs(xc - xf) <= 1e-8 * (1.0 + std::abs(xf)));
  CHECK(std::abs(yc - yf) <= 1e-8 * (1.0 + std::abs(yf)));
}

TEST_CASE("transport kernel validation") {
  Array t = Array::LinSpaced(4, 0.0, 1.0);
  Array z = Array::LinSpaced(4, 0.0, 1.0);
  Eigen::ArrayXXd v = Eigen::ArrayXXd::Constant(4, 4, -1.0);
  CHECK_THROWS_AS(TransportKernel(t, z, v), std::invalid_argument);
}

TEST_CASE("zero kernel gives an exactly zero residual") {
  const TransportKernel k = TransportKernel::constant(0.0, 1.0, 0.5, 201, 65);
  const auto rep = check_supersolution(k, exponential_barrier(1.0), 33, 0.2);
  CHECK(rep.min_residual == 0.0);
  CHECK(rep.max_abs_psi > 0.0);
}

TEST_CASE("concrete barrier on a thin kernel strip") {
  const TransportKernel k = TransportKernel::constant(1.0, 1.0, 0.01, 801, 65);
  const auto rep = check_supersolution(k, exponential_barrier(1.0), 65, 0.1);
  CHECK(rep.min_residual >= -1e-6 * rep.max_abs_psi);
}

TEST_CASE("residual does not degrade under refinement") {
  auto run_at = [&](int nt, int nz) {
    const TransportKernel k = TransportKernel::constant(0.8, 1.0, 0.05, nt, nz);
    return check_supersolution(k, exponential_barrier(0.7), 33, 0.07);
  };
  const auto coarse = run_at(401, 65);
  const auto fine = run_at(801, 129);
  CHECK(coarse.min_residual >= -1e-6 * coarse.max_abs_psi);
  CHECK(fine.min_residual >= -1e-6 * fine.max_abs_psi);
  // first-order stencil: the floor may tighten but must not collapse
  CHECK(fine.min_residual >= 2.5 * std::min(coarse.min_residual, 0.0) -
                                 1e-12 * fine.max_abs_psi);
}

TEST_CASE("invalid barriers are rejected") {
  const TransportKernel k = TransportKernel::constant(1.0, 1.0, 0.1, 101, 65);
  BarrierFunction bad;
  bad.value = [](double z) { return std::sqrt(z); };
  bad.derivative = [](double z) { return z > 0 ? 0.5 / std::sqrt(z) : 1e18; };
  CHECK_THROWS_AS(check_supersolution(k, bad, 17, 1.0), PreconditionError);
}

TEST_CASE("exponential barrier family") {
  const BarrierFunction b = exponential_barrier(2.0);
  CHECK(b.value(0.0) == doctest::Approx(std::exp(0.05) - 1.0));
  CHECK(b.value(1.0) == 0.0);
  CHECK(b.derivative(0.05) < 0.0);
  CHECK(b.derivative(0.2) == 0.0);
  CHECK(barrier_derivative_monotone(b, 1.0, 500, 99));
}

TEST_CASE("randomized instances stay supersolutions") {
  const VerifyReport rep = verify_supersolution(2024u);
  CHECK(rep.all_pass());
}
