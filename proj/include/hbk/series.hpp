#pragma once

// Truncated complex power series c_0 + c_1 z + ... + c_N z^N + O(z^{N+1}).
//
// Values are immutable once built; every operation returns a new series.
// Binary operations truncate to the smaller of the two orders: coefficients
// that one operand does not know are never padded with zeros.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hbk/errors.hpp"

namespace hbk {

using complex = std::complex<double>;

class TruncatedSeries {
 public:
  /// The zero series of order 0.
  TruncatedSeries() : coeffs_(1, complex{0.0}) {}

  /// The zero series of the given order.
  explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1, complex{0.0}) {}

  explicit TruncatedSeries(std::vector<complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw precondition_error("TruncatedSeries: empty coefficient list");
    for (const auto& c : coeffs_) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw precondition_error("TruncatedSeries: non-finite coefficient");
    }
  }

  static TruncatedSeries from_real(std::span<const double> coeffs) {
    return TruncatedSeries(std::vector<complex>(coeffs.begin(), coeffs.end()));
  }

  /// value * z^k truncated at `order` (zero if k > order).
  static TruncatedSeries monomial(std::size_t k, std::size_t order, complex value = 1.0) {
    std::vector<complex> c(order + 1, complex{0.0});
    if (k <= order) c[k] = value;
    return TruncatedSeries(std::move(c));
  }

  /// 1 + z + z^2 + ... + z^order.
  static TruncatedSeries geometric(std::size_t order) {
    return TruncatedSeries(std::vector<complex>(order + 1, complex{1.0}));
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }

  /// Unchecked access; k must not exceed order().
  const complex& operator[](std::size_t k) const noexcept { return coeffs_[k]; }

  complex coeff(std::size_t k) const {
    if (k > order())
      throw domain_error("coefficient " + std::to_string(k) + " beyond truncation order " +
                         std::to_string(order()));
    return coeffs_[k];
  }

  std::span<const complex> coeffs() const noexcept { return coeffs_; }

  TruncatedSeries truncated(std::size_t order) const {
    if (order > this->order()) throw domain_error("truncated: cannot raise the order");
    return TruncatedSeries(std::vector<complex>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<complex> c(n + 1);
    for (std::size_t k = 0; k <= n; ++k) c[k] = a[k] + b[k];
    return TruncatedSeries(std::move(c));
  }

  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<complex> c(n + 1);
    for (std::size_t k = 0; k <= n; ++k) c[k] = a[k] - b[k];
    return TruncatedSeries(std::move(c));
  }

  friend TruncatedSeries operator*(complex s, const TruncatedSeries& a) {
    std::vector<complex> c(a.coeffs_);
    for (auto& x : c) x *= s;
    return TruncatedSeries(std::move(c));
  }

 private:
  std::vector<complex> coeffs_;
};

/// Per-coefficient majorant m -> bound on |c_m|, used to certify truncation tails.
using CoefficientBound = std::function<double(std::size_t)>;

/// Value of a truncated evaluation together with a bound on the dropped tail.
struct Enclosure {
  complex value;
  double tail = 0.0;
};

struct EvalOptions {
  double r_max = 0.95;
};

inline TruncatedSeries cauchy_product(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<complex> c(n + 1, complex{0.0});
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i] == complex{0.0}) continue;
    for (std::size_t j = 0; i + j <= n; ++j) c[i + j] += a[i] * b[j];
  }
  return TruncatedSeries(std::move(c));
}

/// Term-wise antiderivative with zero constant; the order grows by one.
inline TruncatedSeries series_integrate(const TruncatedSeries& a) {
  std::vector<complex> c(a.order() + 2, complex{0.0});
  for (std::size_t m = 0; m <= a.order(); ++m) c[m + 1] = a[m] / static_cast<double>(m + 1);
  return TruncatedSeries(std::move(c));
}

/// Term-wise derivative; the order drops by one.
inline TruncatedSeries series_derivative(const TruncatedSeries& a) {
  if (a.order() == 0) throw precondition_error("series_derivative: order-0 series has no known derivative");
  std::vector<complex> c(a.order());
  for (std::size_t m = 1; m <= a.order(); ++m) c[m - 1] = static_cast<double>(m) * a[m];
  return TruncatedSeries(std::move(c));
}

/// z^k * a, exact, order grows by k.
inline TruncatedSeries shift_up(const TruncatedSeries& a, std::size_t k) {
  std::vector<complex> c(a.order() + k + 1, complex{0.0});
  std::copy(a.coeffs().begin(), a.coeffs().end(), c.begin() + static_cast<std::ptrdiff_t>(k));
  return TruncatedSeries(std::move(c));
}

/// a / z for a series with zero constant term; order drops by one.
inline TruncatedSeries shift_down(const TruncatedSeries& a) {
  if (a[0] != complex{0.0}) throw precondition_error("shift_down: constant term must vanish");
  if (a.order() == 0) throw precondition_error("shift_down: order-0 series");
  return TruncatedSeries(std::vector<complex>(a.coeffs().begin() + 1, a.coeffs().end()));
}

/// Formal exponential via e' = a' e. Requires a zero constant term.
inline TruncatedSeries series_exp(const TruncatedSeries& a) {
  if (a[0] != complex{0.0}) throw precondition_error("series_exp: constant term must be zero");
  const std::size_t n = a.order();
  std::vector<complex> e(n + 1, complex{0.0});
  e[0] = 1.0;
  // m e_m = sum_{k=1}^{m} k a_k e_{m-k}
  for (std::size_t m = 1; m <= n; ++m) {
    complex s{0.0};
    for (std::size_t k = 1; k <= m; ++k) s += static_cast<double>(k) * a[k] * e[m - k];
    e[m] = s / static_cast<double>(m);
  }
  return TruncatedSeries(std::move(e));
}

/// a / b with b_0 != 0.
inline TruncatedSeries series_divide(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (b[0] == complex{0.0}) throw precondition_error("series_divide: divisor has zero constant term");
  const std::size_t n = std::min(a.order(), b.order());
  std::vector<complex> q(n + 1);
  for (std::size_t m = 0; m <= n; ++m) {
    complex s = a[m];
    for (std::size_t k = 1; k <= m; ++k) s -= b[k] * q[m - k];
    q[m] = s / b[0];
  }
  return TruncatedSeries(std::move(q));
}

/// Coefficient-wise modulus: the majorant series sum |c_m| z^m.
inline TruncatedSeries majorant_series(const TruncatedSeries& a) {
  std::vector<complex> c(a.order() + 1);
  for (std::size_t m = 0; m <= a.order(); ++m) c[m] = std::abs(a[m]);
  return TruncatedSeries(std::move(c));
}

/// Largest absolute coefficient difference over the shared orders.
inline double max_coeff_diff(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  double d = 0.0;
  for (std::size_t k = 0; k <= n; ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

/// Bound on sum_{m > order} bound(m) r^m.
///
/// Sums terms until an increment drops below 1e-15 (relative to max(1, sum)),
/// then closes with a geometric majorization using q = max(r, last term ratio);
/// this is valid when bound(m+1)/bound(m) is eventually monotone, which holds
/// for every class bound in this library.
inline double series_tail_bound(std::size_t order, double r, const CoefficientBound& bound) {
  if (r < 0.0 || r >= 1.0) throw domain_error("series_tail_bound: radius must lie in [0, 1)");
  if (r == 0.0) return 0.0;
  constexpr std::size_t max_terms = 2'000'000;
  double sum = 0.0;
  double r_pow = std::pow(r, static_cast<double>(order + 1));
  double prev = -1.0;
  for (std::size_t m = order + 1; m < order + max_terms; ++m) {
    const double term = bound(m) * r_pow;
    sum += term;
    if (term < 1e-15 * std::max(1.0, sum)) {
      double q = r;
      if (prev > 0.0) q = std::max(q, term / prev);
      if (q < 1.0) return sum + term * q / (1.0 - q);
    }
    prev = term;
    r_pow *= r;
  }
  throw accuracy_error("series_tail_bound: tail did not settle at r = " + std::to_string(r));
}

/// Horner evaluation of the stored partial sum.
inline complex series_evaluate(const TruncatedSeries& a, complex z, EvalOptions opt = {}) {
  if (std::abs(z) > opt.r_max)
    throw domain_error("series_evaluate: |z| = " + std::to_string(std::abs(z)) +
                       " exceeds r_max = " + std::to_string(opt.r_max));
  complex acc{0.0};
  for (std::size_t m = a.order() + 1; m-- > 0;) acc = acc * z + a[m];
  return acc;
}

/// Horner evaluation plus a certified tail bound from a coefficient majorant.
inline Enclosure series_evaluate(const TruncatedSeries& a, complex z, const CoefficientBound& bound,
                                 EvalOptions opt = {}) {
  Enclosure e;
  e.value = series_evaluate(a, z, opt);
  e.tail = series_tail_bound(a.order(), std::abs(z), bound);
  return e;
}

}  // namespace hbk
