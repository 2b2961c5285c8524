#include <gtest/gtest.h>

#include <cmath>

#include "hbk/errors.hpp"
#include "hbk/kernel.hpp"

using hbk::complex;
using hbk::TruncatedSeries;

namespace {

// Coefficients of int_0^z (1 - t)^{2 alpha - 2} dt: k_m = (2 - 2 alpha)_{m-1} / (m-1)! / m.
std::vector<double> convex_kernel_coeffs(double alpha, std::size_t order) {
  std::vector<double> k(order + 1, 0.0);
  double c = 1.0;  // (beta)_{j} / j!
  for (std::size_t m = 1; m <= order; ++m) {
    if (m > 1) c *= (2.0 - 2.0 * alpha + static_cast<double>(m) - 2.0) / static_cast<double>(m - 1);
    k[m] = c / static_cast<double>(m);
  }
  return k;
}

}  // namespace

TEST(KernelFromPhi, ConvexOrderMatchesBinomialForm) {
  for (double alpha : {0.0, 0.25, 0.5, 0.75}) {
    const auto kernel = hbk::kernel_from_phi(hbk::convex_order_phi(alpha, 64), 64);
    const auto oracle = convex_kernel_coeffs(alpha, 32);
    for (std::size_t m = 0; m <= 32; ++m)
      EXPECT_NEAR(std::abs(kernel.K()[m] - oracle[m]), 0.0, 1e-10 * std::max(1.0, oracle[m])) << alpha << " " << m;
  }
}

TEST(KernelFromPhi, Examples) {
  const auto k0 = hbk::kernel_from_phi(hbk::convex_order_phi(0.0, 40), 40);
  for (std::size_t m = 1; m <= 40; ++m) EXPECT_NEAR(k0.K()[m].real(), 1.0, 1e-12);  // z/(1-z)
  const auto kl = hbk::kernel_from_phi(hbk::convex_order_phi(0.5, 40), 40);
  for (std::size_t m = 1; m <= 40; ++m) EXPECT_NEAR(kl.K()[m].real(), 1.0 / m, 1e-14);  // -log(1-z)
  const auto k1 = hbk::convex_order_kernel(1.0);
  EXPECT_EQ(k1.K(), TruncatedSeries::monomial(1, 128));
  EXPECT_DOUBLE_EQ(k1.value(0.3), 0.3);
  EXPECT_DOUBLE_EQ(k1.derivative(-0.7), 1.0);
}

TEST(KernelFromPhi, OdeResidual) {
  std::vector<TruncatedSeries> phis{hbk::convex_order_phi(0.0, 48), hbk::convex_order_phi(0.3, 48),
                                    hbk::convex_order_phi(-0.5, 48)};
  std::vector<complex> poly(49, complex{0.0});
  poly[0] = 1.0;
  poly[1] = 1.0;
  poly[2] = -0.3;
  poly[3] = 0.1;
  phis.emplace_back(poly);
  for (const auto& phi : phis) {
    const auto kernel = hbk::kernel_from_phi(phi, 48);
    const auto curvature = hbk::curvature_series(kernel.K());
    for (std::size_t m = 0; m <= curvature.order(); ++m) EXPECT_NEAR(std::abs(curvature[m] - phi[m]), 0.0, 1e-10) << m;
  }
}

TEST(KernelFromPhi, Preconditions) {
  EXPECT_THROW(hbk::kernel_from_phi(TruncatedSeries::monomial(0, 8, 2.0), 8), hbk::precondition_error);
  // phi = 1 has B_1 = 0; the limit kernel is only available as convex-order:1
  EXPECT_THROW(hbk::kernel_from_phi(TruncatedSeries::monomial(0, 8), 8), hbk::precondition_error);
  EXPECT_THROW(hbk::convex_order_kernel(1.5), hbk::precondition_error);
}

TEST(ConvexKernel, RealLineFormsMatchSeries) {
  for (double alpha : {-0.5, 0.0, 0.25, 0.5, 0.9}) {
    const auto k = hbk::convex_order_kernel(alpha, 256);
    for (double x : {-0.8, -0.5, 0.0, 0.3, 0.7, 0.8}) {
      EXPECT_NEAR(k.value(x), hbk::series_evaluate(k.K(), x).real(), 1e-9) << alpha << " " << x;
      EXPECT_NEAR(k.derivative(x), hbk::series_evaluate(k.Kprime(), x).real(), 1e-8) << alpha << " " << x;
    }
    EXPECT_NEAR(k.derivative_complement(0.25), k.derivative(0.75), 1e-13);
    EXPECT_TRUE(k.nonnegative_coefficients());
    EXPECT_THROW(k.value(1.0), hbk::domain_error);
  }
}

TEST(ConvexKernel, EndpointValues) {
  EXPECT_NEAR(hbk::convex_order_kernel(0.0).value(-1.0), -0.5, 1e-15);  // z/(1-z) at -1
  EXPECT_NEAR(hbk::convex_order_kernel(0.5).value(-1.0), -std::log(2.0), 1e-15);
}

TEST(PolynomialKernel, ExactDerivative) {
  // phi = 1 + z: K'(x) = e^x, K(x) = e^x - 1
  const auto k = hbk::polynomial_kernel({1.0});
  for (double x : {-1.0, -0.4, 0.0, 0.5, 1.0}) {
    EXPECT_NEAR(k.derivative(x), std::exp(x), 1e-15);
    EXPECT_NEAR(k.value(x), std::expm1(x), 1e-13);
  }
  for (std::size_t m = 1; m <= 20; ++m) EXPECT_NEAR(k.K()[m].real(), 1.0 / std::tgamma(m + 1.0), 1e-15);
  EXPECT_TRUE(k.nonnegative_coefficients());
}

TEST(PolynomialKernel, MajorantWithMixedSigns) {
  const std::vector<double> b{1.0, -0.6, 0.2};
  const auto coarse = hbk::polynomial_kernel(b, 12);
  const auto fine = hbk::polynomial_kernel(b, 400);
  EXPECT_FALSE(coarse.nonnegative_coefficients());
  for (double r : {0.2, 1.0 / 3.0, 0.7, 0.95, 1.0}) {
    const double exact_kp = hbk::series_evaluate(hbk::majorant_series(fine.Kprime()), r, {1.0}).real();
    const double exact_k = hbk::series_evaluate(hbk::majorant_series(fine.K()), r, {1.0}).real();
    // truncated partial sums plus a dominating tail never fall below the full majorant
    EXPECT_GE(coarse.derivative_majorant(r), exact_kp - 1e-12) << r;
    EXPECT_GE(coarse.majorant(r), exact_k - 1e-12) << r;
    EXPECT_NEAR(fine.derivative_majorant(r), exact_kp, 1e-10) << r;
    EXPECT_GE(coarse.derivative_majorant(r), std::abs(coarse.derivative(r)));
  }
}

TEST(SeriesOnlyKernel, LimitedToSeriesRadius) {
  const auto k = hbk::kernel_from_phi(hbk::convex_order_phi(0.25, 200), 200);
  EXPECT_FALSE(k.has_closed_form());
  EXPECT_DOUBLE_EQ(k.majorant_limit(), 0.95);
  EXPECT_NEAR(k.value(0.5), hbk::convex_order_kernel(0.25).value(0.5), 1e-12);
  EXPECT_THROW(k.value(0.97), hbk::accuracy_error);
  EXPECT_THROW(k.majorant(0.97), hbk::accuracy_error);
}
