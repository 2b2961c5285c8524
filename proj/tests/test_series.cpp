#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hbk/errors.hpp"
#include "hbk/rng.hpp"
#include "hbk/series.hpp"

using hbk::complex;
using hbk::TruncatedSeries;

namespace {

TruncatedSeries real_series(std::vector<double> c) { return TruncatedSeries::from_real(c); }

TruncatedSeries random_series(hbk::Rng& rng, std::size_t order, bool zero_constant = false, double scale = 1.0) {
  std::vector<complex> c(order + 1);
  for (auto& x : c) x = complex{2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0} * scale;
  if (zero_constant) c[0] = 0.0;
  return TruncatedSeries(std::move(c));
}

// -log(1 - z) = sum z^k / k
TruncatedSeries neg_log1m(std::size_t order) {
  std::vector<complex> c(order + 1, complex{0.0});
  for (std::size_t k = 1; k <= order; ++k) c[k] = 1.0 / static_cast<double>(k);
  return TruncatedSeries(std::move(c));
}

}  // namespace

TEST(TruncatedSeries, RejectsNonFiniteAndEmpty) {
  EXPECT_THROW(TruncatedSeries(std::vector<complex>{}), hbk::precondition_error);
  EXPECT_THROW(TruncatedSeries(std::vector<complex>{1.0, complex{NAN, 0.0}}), hbk::precondition_error);
  EXPECT_THROW(TruncatedSeries(std::vector<complex>{complex{0.0, INFINITY}}), hbk::precondition_error);
}

TEST(TruncatedSeries, LengthMatchesOrder) {
  TruncatedSeries z(7);
  EXPECT_EQ(z.order(), 7u);
  EXPECT_EQ(z.coeffs().size(), 8u);
  volatile std::size_t beyond = 8;
  EXPECT_THROW(z.coeff(beyond), hbk::domain_error);
}

TEST(TruncatedSeries, MixedOrderTruncatesToSmaller) {
  const auto a = TruncatedSeries::geometric(10);
  const auto b = TruncatedSeries::geometric(4);
  EXPECT_EQ((a + b).order(), 4u);
  EXPECT_EQ(hbk::cauchy_product(a, b).order(), 4u);
}

TEST(CauchyProduct, DifferenceOfSquares) {
  const auto p = hbk::cauchy_product(real_series({1, 1, 0}), real_series({1, -1, 0}));
  EXPECT_EQ(p, real_series({1, 0, -1}));
}

TEST(CauchyProduct, GeometricTimesOneMinusZ) {
  const auto p = hbk::cauchy_product(TruncatedSeries::geometric(8), real_series({1, -1, 0, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(p, TruncatedSeries::monomial(0, 8));
}

TEST(CauchyProduct, MatchesDoubleLoopOracle) {
  const auto a = real_series({1, 2, 3, 0, 0});
  const auto p = hbk::cauchy_product(a, a);
  const std::vector<double> c{1, 2, 3, 0, 0};
  for (std::size_t m = 0; m <= 4; ++m) {
    double s = 0.0;
    for (std::size_t i = 0; i <= m; ++i) s += c[i] * c[m - i];
    EXPECT_EQ(p[m], complex(s)) << m;
  }
  EXPECT_EQ(p[1], complex(4.0));
  EXPECT_EQ(p[2], complex(10.0));
}

TEST(CauchyProduct, CommutativeAndAssociative) {
  hbk::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    // Small-integer coefficients keep every product exact in double precision.
    std::vector<complex> ca(13), cb(13), cc(13);
    for (std::size_t i = 0; i <= 12; ++i) {
      ca[i] = {double(rng.integer(0, 6)) - 3, double(rng.integer(0, 6)) - 3};
      cb[i] = {double(rng.integer(0, 6)) - 3, double(rng.integer(0, 6)) - 3};
      cc[i] = {double(rng.integer(0, 6)) - 3, double(rng.integer(0, 6)) - 3};
    }
    const TruncatedSeries a(ca), b(cb), c(cc);
    EXPECT_EQ(hbk::cauchy_product(a, b), hbk::cauchy_product(b, a));
    EXPECT_EQ(hbk::cauchy_product(hbk::cauchy_product(a, b), c), hbk::cauchy_product(a, hbk::cauchy_product(b, c)));
  }
}

TEST(SeriesIntegrate, OneBecomesZ) {
  const auto z = hbk::series_integrate(TruncatedSeries::monomial(0, 0));
  EXPECT_EQ(z, TruncatedSeries::monomial(1, 1));
}

TEST(SeriesIntegrate, GeometricBecomesNegLog) {
  const auto s = hbk::series_integrate(TruncatedSeries::geometric(20));
  EXPECT_EQ(s.order(), 21u);
  EXPECT_EQ(s[0], complex(0.0));
  for (std::size_t k = 1; k <= 21; ++k) EXPECT_DOUBLE_EQ(s[k].real(), 1.0 / k);
}

TEST(SeriesIntegrate, InverseSquareGivesZOverOneMinusZ) {
  // (1 - z)^{-2} = sum (k+1) z^k; its antiderivative z/(1-z) has all coefficients 1.
  std::vector<complex> c(30);
  for (std::size_t k = 0; k < 30; ++k) c[k] = static_cast<double>(k + 1);
  const auto s = hbk::series_integrate(TruncatedSeries(c));
  EXPECT_EQ(s[0], complex(0.0));
  for (std::size_t k = 1; k <= 30; ++k) EXPECT_DOUBLE_EQ(s[k].real(), 1.0);
}

TEST(SeriesIntegrate, DerivativeUndoesIntegral) {
  hbk::Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_series(rng, 25);
    const auto back = hbk::series_derivative(hbk::series_integrate(a));
    ASSERT_EQ(back.order(), a.order());
    EXPECT_LE(hbk::max_coeff_diff(back, a), 1e-15);
  }
}

TEST(SeriesExp, ZeroAndIdentity) {
  EXPECT_EQ(hbk::series_exp(TruncatedSeries(5)), TruncatedSeries::monomial(0, 5));
  const auto e = hbk::series_exp(TruncatedSeries::monomial(1, 15));
  double fact = 1.0;
  for (std::size_t k = 0; k <= 15; ++k) {
    if (k) fact *= static_cast<double>(k);
    EXPECT_NEAR(e[k].real(), 1.0 / fact, 1e-15 / fact) << k;
  }
}

TEST(SeriesExp, BinomialOracle) {
  // exp(-2 log(1 - z)) = (1 - z)^{-2}
  const auto f = hbk::series_exp(complex{2.0} * neg_log1m(40));
  for (std::size_t k = 0; k <= 40; ++k) EXPECT_NEAR(f[k].real(), static_cast<double>(k + 1), 1e-11 * (k + 1)) << k;
}

TEST(SeriesExp, RejectsNonzeroConstant) {
  EXPECT_THROW(hbk::series_exp(real_series({0.5, 1.0})), hbk::precondition_error);
}

TEST(SeriesExp, SatisfiesDifferentialEquation) {
  hbk::Rng rng(17);
  const auto a = random_series(rng, 30, true);
  const auto e = hbk::series_exp(a);
  EXPECT_EQ(e[0], complex(1.0));
  // e' = a' e
  const auto lhs = hbk::series_derivative(e);
  const auto rhs = hbk::cauchy_product(hbk::series_derivative(a), e);
  EXPECT_LE(hbk::max_coeff_diff(lhs, rhs), 1e-10 * (1.0 + hbk::max_coeff_diff(rhs, TruncatedSeries(29))));
}

TEST(SeriesExp, ExpOfSumIsProduct) {
  hbk::Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_series(rng, 24, true, 0.5);
    const auto b = random_series(rng, 24, true, 0.5);
    const auto lhs = hbk::series_exp(a + b);
    const auto rhs = hbk::cauchy_product(hbk::series_exp(a), hbk::series_exp(b));
    for (std::size_t k = 0; k <= 24; ++k)
      EXPECT_LE(std::abs(lhs[k] - rhs[k]), 1e-12 * std::max(1.0, std::abs(rhs[k]))) << k;
  }
}

TEST(SeriesEvaluate, Basics) {
  EXPECT_EQ(hbk::series_evaluate(TruncatedSeries::monomial(1, 3), 0.0), complex(0.0));
  EXPECT_NEAR(hbk::series_evaluate(TruncatedSeries::geometric(128), 0.5).real(), 2.0, 1e-9);
  EXPECT_NEAR(hbk::series_evaluate(neg_log1m(256), 0.386555).real(), -std::log(1.0 - 0.386555), 1e-12);
  EXPECT_NEAR(hbk::series_evaluate(neg_log1m(256), 0.386555).real(), 0.488665, 1e-6);
}

TEST(SeriesEvaluate, RejectsBeyondRadius) {
  EXPECT_THROW(hbk::series_evaluate(TruncatedSeries::geometric(8), 0.96), hbk::domain_error);
  EXPECT_NO_THROW(hbk::series_evaluate(TruncatedSeries::geometric(8), 0.96, {0.99}));
}

TEST(SeriesEvaluate, TailEnclosesTruth) {
  // Truncated geometric series at order 40; bound(m) = 1 gives the exact tail.
  const double r = 0.9;
  const auto e = hbk::series_evaluate(TruncatedSeries::geometric(40), r, [](std::size_t) { return 1.0; });
  const double truth = 1.0 / (1.0 - r);
  EXPECT_LE(std::abs(e.value.real() - truth), e.tail * (1.0 + 1e-12));
  EXPECT_NEAR(e.tail, std::pow(r, 41) / (1.0 - r), 1e-12);
}

TEST(SeriesTailBound, PolynomialGrowth) {
  const double r = 0.8;
  const std::size_t N = 60;
  const double tail = hbk::series_tail_bound(N, r, [](std::size_t m) { return static_cast<double>(m); });
  // sum_{m>N} m r^m in closed form
  const double rn1 = std::pow(r, N + 1);
  const double exact = rn1 * ((N + 1) - N * r) / ((1 - r) * (1 - r));
  EXPECT_GE(tail, exact * (1 - 1e-12));
  EXPECT_LE(tail, exact * (1 + 1e-9));
  EXPECT_THROW(hbk::series_tail_bound(N, 1.0, [](std::size_t) { return 1.0; }), hbk::domain_error);
}

TEST(MajorantSeries, Examples) {
  EXPECT_EQ(hbk::majorant_series(real_series({1, -1})), real_series({1, 1}));
  EXPECT_EQ(hbk::majorant_series(TruncatedSeries(4)), TruncatedSeries(4));
  std::vector<double> alt(20), pos(20);
  for (std::size_t k = 1; k < 20; ++k) {
    alt[k] = (k % 2 ? 1.0 : -1.0);  // z/(1+z)
    pos[k] = 1.0;                   // z/(1-z)
  }
  EXPECT_EQ(hbk::majorant_series(real_series(alt)), real_series(pos));
}

TEST(MajorantSeries, DominatesOnCircle) {
  hbk::Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_series(rng, 30);
    const double r = 0.9 * rng.uniform();
    const double m = hbk::series_evaluate(hbk::majorant_series(a), r).real();
    for (int j = 0; j < 32; ++j) {
      const complex z = std::polar(r, 2.0 * std::numbers::pi * j / 32.0);
      EXPECT_GE(m, std::abs(hbk::series_evaluate(a, z)) - 1e-12);
    }
  }
}

TEST(SeriesDivide, InvertsProduct) {
  hbk::Rng rng(41);
  auto b = random_series(rng, 20);
  b = b + TruncatedSeries::monomial(0, 20, 3.0);
  const auto a = random_series(rng, 20);
  const auto q = hbk::series_divide(hbk::cauchy_product(a, b), b);
  EXPECT_LE(hbk::max_coeff_diff(q, a), 1e-12);
}
