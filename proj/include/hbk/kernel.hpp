#pragma once

// Ma-Minda kernels: phi(z) = 1 + B_1 z + ... and the extremal
//   K(z) = int_0^z exp(int_0^w (phi(t) - 1)/t dt) dw,  1 + z K''/K' = phi.
//
// Every kernel carries the truncated series of phi, K' and K. Kernels with an
// exact real-line form (convex order alpha, polynomial phi) can also be
// evaluated on [-1, 1]; series-only kernels are limited to |x| <= 0.95.

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "hbk/errors.hpp"
#include "hbk/mapping_classes.hpp"
#include "hbk/series.hpp"
#include "hbk/special_functions.hpp"

namespace hbk {

/// phi = (1 + (1 - 2 alpha) z)/(1 - z), Re phi > alpha; alpha = 1 gives phi = 1, K = z.
struct ConvexOrderForm {
  double alpha;
};

/// phi = 1 + sum_{m>=1} B_m z^m, a polynomial; K'(x) = exp(sum B_m x^m / m) exactly.
struct PolynomialPhiForm {
  std::vector<double> b;  // b[0] = B_1
};

struct SeriesOnlyForm {};

using KernelForm = std::variant<SeriesOnlyForm, ConvexOrderForm, PolynomialPhiForm>;

class MaMindaKernel {
 public:
  static constexpr double kSeriesRadius = 0.95;

  MaMindaKernel(TruncatedSeries phi, TruncatedSeries kprime, TruncatedSeries k, KernelForm form, std::string name)
      : phi_(std::move(phi)), kprime_(std::move(kprime)), k_(std::move(k)), form_(std::move(form)),
        name_(std::move(name)) {
    if (const auto* poly = std::get_if<PolynomialPhiForm>(&form_)) {
      std::vector<complex> bar(poly->b.size() + 1, complex{0.0});
      for (std::size_t m = 0; m < poly->b.size(); ++m) {
        nonnegative_ = nonnegative_ && poly->b[m] >= 0.0;
        bar[m + 1] = std::abs(poly->b[m]) / static_cast<double>(m + 1);
      }
      // exp(Qbar) dominates K' coefficient-wise; its partial sums certify majorant tails.
      const std::size_t order = kprime_.order();
      std::vector<complex> padded(order + 1, complex{0.0});
      for (std::size_t m = 0; m < bar.size() && m <= order; ++m) padded[m] = bar[m];
      dominating_ = series_exp(TruncatedSeries(std::move(padded)));
      qbar_ = std::move(bar);
    }
  }

  const TruncatedSeries& phi() const noexcept { return phi_; }
  const TruncatedSeries& K() const noexcept { return k_; }
  const TruncatedSeries& Kprime() const noexcept { return kprime_; }
  const KernelForm& form() const noexcept { return form_; }
  const std::string& name() const noexcept { return name_; }

  bool has_closed_form() const { return !std::holds_alternative<SeriesOnlyForm>(form_); }

  /// Largest r at which majorant() and derivative_majorant() are available.
  double majorant_limit() const { return has_closed_form() ? 1.0 : kSeriesRadius; }

  /// K'(x) for real x; closed forms cover [-1, 1).
  double derivative(double x) const {
    return std::visit(
        [&](const auto& f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, ConvexOrderForm>) {
            check_real(x, 1.0, false);
            return std::exp((2.0 * f.alpha - 2.0) * std::log1p(-x));
          } else if constexpr (std::is_same_v<T, PolynomialPhiForm>) {
            check_real(x, 1.0, true);
            return std::exp(log_derivative(f, x));
          } else {
            check_real(x, kSeriesRadius, true);
            return series_evaluate(kprime_, x, {kSeriesRadius}).real();
          }
        },
        form_);
  }

  /// K'(1 - u) for 0 < u <= 1, without forming 1 - u where the kernel is singular at 1.
  double derivative_complement(double u) const {
    if (const auto* f = std::get_if<ConvexOrderForm>(&form_)) {
      if (!(u > 0.0 && u <= 2.0)) throw domain_error("kernel " + name_ + ": complement outside (0, 2]");
      return std::exp((2.0 * f->alpha - 2.0) * std::log(u));
    }
    return derivative(1.0 - u);
  }

  /// K(x) for real x.
  double value(double x) const {
    return std::visit(
        [&](const auto& f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, ConvexOrderForm>) {
            check_real(x, 1.0, false);
            const double l = std::log1p(-x);
            if (is_log_branch(f.alpha)) return -l;
            const double e = 2.0 * f.alpha - 1.0;
            return -std::expm1(e * l) / e;
          } else if constexpr (std::is_same_v<T, PolynomialPhiForm>) {
            check_real(x, 1.0, true);
            auto kp = [&](double t) { return std::exp(log_derivative(f, t)); };
            if (x >= 0.0) return adaptive_quadrature(kp, 0.0, x);
            return -adaptive_quadrature(kp, x, 0.0);
          } else {
            check_real(x, kSeriesRadius, true);
            return series_evaluate(k_, x, {kSeriesRadius}).real();
          }
        },
        form_);
  }

  /// M_{K'}(r) = sum |coefficients of K'| r^m.
  double derivative_majorant(double r) const {
    if (r < 0.0) throw domain_error("derivative_majorant: r must be nonnegative");
    if (const auto* poly = std::get_if<PolynomialPhiForm>(&form_); poly && !nonnegative_) {
      if (r > 1.0) throw domain_error("derivative_majorant: r > 1");
      return series_evaluate(majorant_series(kprime_), r, {1.0}).real() + dominating_tail(r);
    }
    if (has_closed_form()) return derivative(r);  // nonnegative coefficients: M_{K'} = K'
    if (r > kSeriesRadius) throw accuracy_error("derivative_majorant: series-only kernel beyond r = 0.95");
    return series_evaluate(majorant_series(kprime_), r, {kSeriesRadius}).real();
  }

  /// M_K(r) = int_0^r M_{K'}(t) dt.
  double majorant(double r) const {
    if (r < 0.0) throw domain_error("majorant: r must be nonnegative");
    if (const auto* poly = std::get_if<PolynomialPhiForm>(&form_); poly && !nonnegative_) {
      if (r > 1.0) throw domain_error("majorant: r > 1");
      // Tail of M_K is at most int_0^r tail_{K'}(t) dt <= r tail_{K'}(r).
      return series_evaluate(majorant_series(k_), r, {1.0}).real() + r * dominating_tail(r);
    }
    if (has_closed_form()) return value(r);
    if (r > kSeriesRadius) throw accuracy_error("majorant: series-only kernel beyond r = 0.95");
    return series_evaluate(majorant_series(k_), r, {kSeriesRadius}).real();
  }

  /// True when all Taylor coefficients of K are known to be nonnegative.
  bool nonnegative_coefficients() const {
    return std::holds_alternative<ConvexOrderForm>(form_) ||
           (std::holds_alternative<PolynomialPhiForm>(form_) && nonnegative_);
  }

 private:
  void check_real(double x, double limit, bool inclusive) const {
    const bool ok = std::abs(x) <= limit && (inclusive || x < limit);
    if (ok) return;
    if (!has_closed_form())
      throw accuracy_error("kernel " + name_ + ": no certified evaluation at x = " + std::to_string(x));
    throw domain_error("kernel " + name_ + ": x = " + std::to_string(x) + " outside the closed-form range");
  }

  static double log_derivative(const PolynomialPhiForm& f, double x) {
    // Q(x) = sum B_m x^m / m by Horner on the coefficients B_m / m.
    double q = 0.0;
    for (std::size_t m = f.b.size(); m-- > 0;) q = q * x + f.b[m] / static_cast<double>(m + 1);
    return q * x;
  }

  double dominating_tail(double r) const {
    double qbar = 0.0;
    for (std::size_t m = qbar_.size(); m-- > 0;) qbar = qbar * r + qbar_[m].real();
    const double tail = std::exp(qbar) - series_evaluate(dominating_, r, {1.0}).real();
    return std::max(tail, 0.0);
  }

  TruncatedSeries phi_;
  TruncatedSeries kprime_;
  TruncatedSeries k_;
  KernelForm form_;
  std::string name_;
  bool nonnegative_ = true;
  TruncatedSeries dominating_;
  std::vector<complex> qbar_;
};

/// K' = exp(int (phi - 1)/t), K = int K', both truncated at `order`.
inline MaMindaKernel kernel_from_phi(const TruncatedSeries& phi, std::size_t order, KernelForm form = SeriesOnlyForm{},
                                     std::string name = "series") {
  if (std::abs(phi[0] - 1.0) > 1e-14) throw precondition_error("kernel_from_phi: phi(0) must be 1");
  if (order < 1) throw precondition_error("kernel_from_phi: order must be >= 1");
  if (phi.order() < order) throw precondition_error("kernel_from_phi: phi order below kernel order");
  if (phi.order() >= 1 && (!(phi[1].real() > 0.0) || std::abs(phi[1].imag()) > 1e-14))
    throw precondition_error("kernel_from_phi: B_1 must be real and positive");
  const auto centered = phi.truncated(order) - TruncatedSeries::monomial(0, order);
  auto kprime = series_exp(series_integrate(shift_down(centered)));  // order `order`
  auto k = series_integrate(kprime).truncated(order);
  return MaMindaKernel(phi.truncated(order), std::move(kprime), std::move(k), std::move(form), std::move(name));
}

/// phi = (1 + (1 - 2 alpha) z)/(1 - z) for alpha in [-1/2, 1].
inline TruncatedSeries convex_order_phi(double alpha, std::size_t order) {
  std::vector<complex> c(order + 1, complex{2.0 - 2.0 * alpha});
  c[0] = 1.0;
  return TruncatedSeries(std::move(c));
}

inline MaMindaKernel convex_order_kernel(double alpha, std::size_t order = 128) {
  if (!(alpha >= -0.5 && alpha <= 1.0)) throw precondition_error("convex_order_kernel: alpha must lie in [-1/2, 1]");
  const auto phi = convex_order_phi(alpha, order);
  if (alpha == 1.0) {
    // phi = 1: B_1 = 0 falls outside the Ma-Minda normalization; K(z) = z is the limit kernel.
    return MaMindaKernel(phi, TruncatedSeries::monomial(0, order), TruncatedSeries::monomial(1, order),
                         ConvexOrderForm{alpha}, "convex-order:1");
  }
  return kernel_from_phi(phi, order, ConvexOrderForm{alpha}, "convex-order:" + std::to_string(alpha));
}

/// Kernel of the polynomial phi = 1 + b[0] z + b[1] z^2 + ...
inline MaMindaKernel polynomial_kernel(std::vector<double> b, std::size_t order = 128) {
  if (b.empty()) throw precondition_error("polynomial_kernel: need at least B_1");
  if (b.size() > order) throw precondition_error("polynomial_kernel: degree exceeds order");
  std::vector<complex> c(order + 1, complex{0.0});
  c[0] = 1.0;
  for (std::size_t m = 0; m < b.size(); ++m) c[m + 1] = b[m];
  return kernel_from_phi(TruncatedSeries(std::move(c)), order, PolynomialPhiForm{std::move(b)}, "polynomial");
}

/// 1 + z K''/K', truncated at order(K) - 1.
inline TruncatedSeries curvature_series(const TruncatedSeries& k) {
  const auto kp = series_derivative(k);
  const auto zkpp = shift_up(series_derivative(kp), 1);
  return TruncatedSeries::monomial(0, kp.order()) + series_divide(zkpp, kp);
}

}  // namespace hbk
