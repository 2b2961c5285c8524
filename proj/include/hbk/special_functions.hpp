#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <algorithm>
#include <string>
#include <vector>

#include "hbk/errors.hpp"

namespace hbk {

struct QuadratureSpec {
  double abs_tol = 1e-12;
  /// Accept when the error estimate is below max(abs_tol, rel_tol * |integral|).
  double rel_tol = 1e-14;
  int max_depth = 40;

  void validate() const {
    if (!(abs_tol > 0.0)) throw precondition_error("QuadratureSpec: abs_tol must be positive");
    if (!(rel_tol >= 0.0)) throw precondition_error("QuadratureSpec: rel_tol must be nonnegative");
    if (max_depth < 1) throw precondition_error("QuadratureSpec: max_depth must be at least 1");
  }
};

namespace detail {

/// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

inline bool is_nonpositive_integer(double c) { return c <= 0.0 && std::floor(c) == c; }

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, estimate, error;
  int depth;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod_15(F& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  if (!std::isfinite(kronrod))
    throw domain_error("adaptive_quadrature: integrand not finite on [" + std::to_string(a) + ", " +
                       std::to_string(b) + "]");
  return Segment{a, b, kronrod, std::abs(kronrod - gauss), depth};
}

}  // namespace detail

/// Gauss hypergeometric 2F1(a, b; c; x) for |x| < 1 by direct summation.
///
/// Terms follow t_{k+1} = t_k (a+k)(b+k) / ((c+k)(k+1)) x; the product
/// (a+k)(b+k) is formed first so the result is bitwise symmetric in (a, b).
/// Summation stops after three consecutive terms below 1e-16 of the partial sum.
inline double gauss_2f1(double a, double b, double c, double x) {
  if (detail::is_nonpositive_integer(c)) throw pole_error("gauss_2f1: c is a nonpositive integer");
  if (!(std::abs(x) < 1.0)) throw domain_error("gauss_2f1: requires |x| < 1");
  if (x == 0.0) return 1.0;

  constexpr long max_terms = 50'000'000;
  detail::CompensatedSum sum;
  sum.add(1.0);
  double term = 1.0;
  int small_run = 0;
  for (long k = 0; k < max_terms; ++k) {
    const double kd = static_cast<double>(k);
    const double numer = (a + kd) * (b + kd);
    if (numer == 0.0) return sum.value();  // terminating series
    term = term * numer / ((c + kd) * (kd + 1.0)) * x;
    sum.add(term);
    if (std::abs(term) < 1e-16 * std::abs(sum.value())) {
      if (++small_run == 3) return sum.value();
    } else {
      small_run = 0;
    }
  }
  throw convergence_error("gauss_2f1: series did not converge", sum.value(), std::abs(term));
}

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
///
/// The interval with the largest |K15 - G7| is bisected until the summed
/// estimate meets the tolerance. A segment needing more than spec.max_depth
/// bisections raises convergence_error carrying the best estimate.
template <class F>
double adaptive_quadrature(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  spec.validate();
  if (!(a <= b)) throw precondition_error("adaptive_quadrature: requires a <= b");
  if (a == b) return 0.0;

  std::vector<detail::Segment> heap;
  heap.push_back(detail::gauss_kronrod_15(f, a, b, 0));

  detail::CompensatedSum total;
  detail::CompensatedSum total_err;
  auto recompute = [&] {
    total = {};
    total_err = {};
    for (const auto& s : heap) {
      total.add(s.estimate);
      total_err.add(s.error);
    }
  };
  recompute();
  auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total.value())); };

  for (std::size_t iter = 1;; ++iter) {
    if (total_err.value() <= tolerance()) {
      // Running sums drift when large errors are replaced by small ones.
      recompute();
      if (total_err.value() <= tolerance()) break;
    }
    std::pop_heap(heap.begin(), heap.end());
    const auto worst = heap.back();
    if (worst.depth >= spec.max_depth) {
      recompute();
      throw convergence_error("adaptive_quadrature: max_depth exceeded", total.value(), total_err.value());
    }
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid, worst.depth + 1);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b, worst.depth + 1);
    total.add(left.estimate + right.estimate - worst.estimate);
    total_err.add(left.error + right.error - worst.error);
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
    if (iter % 64 == 0) recompute();
  }

  recompute();
  return total.value();
}

}  // namespace hbk
