#pragma once

// Symmetric Toeplitz determinants T_q(n)[f] = det(a_{n+|i-j|})_{i,j<q} of Taylor
// coefficients and the closed-form bounds over M(alpha, zeta, n).

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hbk/errors.hpp"
#include "hbk/mapping_classes.hpp"
#include "hbk/series.hpp"

namespace hbk {

enum class ToeplitzTarget { analytic, coanalytic };

struct ToeplitzSpec {
  int n = 1;  // starting index
  int q = 2;  // matrix size
  ToeplitzTarget target = ToeplitzTarget::analytic;

  void validate() const {
    if (n < 1 || q < 1) throw precondition_error("ToeplitzSpec: n and q must be >= 1");
  }
};

namespace detail {

inline complex det3(complex x, complex y, complex w) {
  // | x y w |
  // | y x y |  expanded along the first row
  // | w y x |
  return x * (x * x - y * y) - y * (y * x - y * w) + w * (y * y - x * w);
}

inline complex det4(complex x, complex y, complex w, complex v) {
  const std::array<std::array<complex, 4>, 4> m = {{{x, y, w, v}, {y, x, y, w}, {w, y, x, y}, {v, w, y, x}}};
  // Laplace expansion over 2x2 minors of rows (0,1) and (2,3).
  auto minor = [&](int r0, int r1, int c0, int c1) { return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]; };
  return minor(0, 1, 0, 1) * minor(2, 3, 2, 3) - minor(0, 1, 0, 2) * minor(2, 3, 1, 3) +
         minor(0, 1, 0, 3) * minor(2, 3, 1, 2) + minor(0, 1, 1, 2) * minor(2, 3, 0, 3) -
         minor(0, 1, 1, 3) * minor(2, 3, 0, 2) + minor(0, 1, 2, 3) * minor(2, 3, 0, 1);
}

/// LU with partial pivoting; m is row-major q x q.
inline complex det_lu(std::vector<complex> m, std::size_t q) {
  complex det{1.0};
  for (std::size_t col = 0; col < q; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < q; ++r)
      if (std::abs(m[r * q + col]) > std::abs(m[piv * q + col])) piv = r;
    if (m[piv * q + col] == complex{0.0}) return 0.0;
    if (piv != col) {
      for (std::size_t c = 0; c < q; ++c) std::swap(m[col * q + c], m[piv * q + c]);
      det = -det;
    }
    const complex d = m[col * q + col];
    det *= d;
    for (std::size_t r = col + 1; r < q; ++r) {
      const complex f = m[r * q + col] / d;
      for (std::size_t c = col; c < q; ++c) m[r * q + c] -= f * m[col * q + c];
    }
  }
  return det;
}

}  // namespace detail

/// Determinant of the q x q symmetric Toeplitz matrix with first row (c_n, ..., c_{n+q-1}).
inline complex toeplitz_det(const TruncatedSeries& coeffs, int n, int q) {
  ToeplitzSpec{n, q}.validate();
  const auto top = static_cast<std::size_t>(n + q - 1);
  if (coeffs.order() < top)
    throw domain_error("toeplitz_det: need coefficients up to index " + std::to_string(top));
  auto c = [&](int k) { return coeffs[static_cast<std::size_t>(n + k)]; };
  switch (q) {
    case 1:
      return c(0);
    case 2:
      return c(0) * c(0) - c(1) * c(1);
    case 3:
      return detail::det3(c(0), c(1), c(2));
    case 4:
      return detail::det4(c(0), c(1), c(2), c(3));
    default: {
      const auto size = static_cast<std::size_t>(q);
      std::vector<complex> m(size * size);
      for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) m[i * size + j] = c(static_cast<int>(i > j ? i - j : j - i));
      return detail::det_lu(std::move(m), size);
    }
  }
}

inline complex toeplitz_det(const HarmonicMapping& f, const ToeplitzSpec& spec) {
  spec.validate();
  return toeplitz_det(spec.target == ToeplitzTarget::analytic ? f.h() : f.g(), spec.n, spec.q);
}

inline void check_alpha(double alpha, const char* who) {
  if (!(alpha >= -0.5 && alpha < 1.0)) throw precondition_error(std::string(who) + ": alpha must lie in [-1/2, 1)");
}

/// |T_2(n)[h]| <= bound_a(n)^2 + bound_a(n+1)^2, n >= 2.
inline double bound_T2n(double alpha, int n) {
  check_alpha(alpha, "bound_T2n");
  if (n < 2) throw domain_error("bound_T2n: requires n >= 2");
  const double an = coefficient_bound_a(static_cast<std::size_t>(n), alpha);
  const double an1 = coefficient_bound_a(static_cast<std::size_t>(n) + 1, alpha);
  return an * an + an1 * an1;
}

/// |T_2(n)[g]| <= |zeta|^2 / (n+1)^2.
inline double bound_T2n_g(double zeta_abs, int n) {
  if (n < 1) throw domain_error("bound_T2n_g: requires n >= 1");
  const double d = static_cast<double>(n) + 1.0;
  return zeta_abs * zeta_abs / (d * d);
}

/// |T_2(2)[h]| <= (2/9)(1-alpha)^2 (2 alpha^2 - 6 alpha + 9).
inline double bound_T22_corollary(double alpha) {
  check_alpha(alpha, "bound_T22_corollary");
  const double u = 1.0 - alpha;
  return 2.0 / 9.0 * u * u * (2.0 * alpha * alpha - 6.0 * alpha + 9.0);
}

/// Both branches of the T_3(1)[h] bound; they meet at alpha = 1/2.
inline double bound_T31_low_branch(double a) {
  return (8.0 * a * a * a * a - 34.0 * a * a * a + 71.0 * a * a - 72.0 * a + 36.0) / 9.0;
}
inline double bound_T31_high_branch(double a) { return (-2.0 * a * a * a + 25.0 * a * a - 44.0 * a + 30.0) / 9.0; }

inline double bound_T31(double alpha) {
  check_alpha(alpha, "bound_T31");
  return alpha <= 0.5 ? bound_T31_low_branch(alpha) : bound_T31_high_branch(alpha);
}

/// |T_3(1)[g]| <= |zeta|^3 (1 - alpha) / 6.
inline double bound_T31_g(double alpha, double zeta_abs) {
  check_alpha(alpha, "bound_T31_g");
  return zeta_abs * zeta_abs * zeta_abs * (1.0 - alpha) / 6.0;
}

/// Both branches of the T_3(2)[h] bound; they meet at alpha = 1/7.
inline double bound_T32_low_branch(double a) {
  const double u = 1.0 - a;
  return u * u * u * (2.0 * a * a - 7.0 * a + 12.0) * (10.0 * a * a - 27.0 * a + 36.0) / 108.0;
}
inline double bound_T32_high_branch(double a) {
  const double u = 1.0 - a;
  return 5.0 * u * u * u * (2.0 * a * a - 7.0 * a + 12.0) * (2.0 * a * a - 4.0 * a + 7.0) / 108.0;
}

inline double bound_T32(double alpha) {
  check_alpha(alpha, "bound_T32");
  return alpha <= 1.0 / 7.0 ? bound_T32_low_branch(alpha) : bound_T32_high_branch(alpha);
}

/// |T_3(2)[g]| = |2 b_3^2 b_4| <= |zeta|^3 (1 - alpha) / 9.
inline double bound_T32_g(double alpha, double zeta_abs) {
  check_alpha(alpha, "bound_T32_g");
  return zeta_abs * zeta_abs * zeta_abs * (1.0 - alpha) / 9.0;
}

/// The six determinant bounds over M(alpha, zeta, n).
enum class BoundId { T2n_h, T2n_g, T31_h, T31_g, T32_h, T32_g };

inline constexpr std::array<BoundId, 6> kAllBounds = {BoundId::T2n_h, BoundId::T2n_g, BoundId::T31_h,
                                                      BoundId::T31_g, BoundId::T32_h, BoundId::T32_g};

inline std::string_view bound_name(BoundId id) {
  switch (id) {
    case BoundId::T2n_h: return "T2n_h";
    case BoundId::T2n_g: return "T2n_g";
    case BoundId::T31_h: return "T31_h";
    case BoundId::T31_g: return "T31_g";
    case BoundId::T32_h: return "T32_h";
    case BoundId::T32_g: return "T32_g";
  }
  return "?";
}

inline std::optional<BoundId> parse_bound_id(std::string_view s) {
  for (auto id : kAllBounds)
    if (bound_name(id) == s) return id;
  return std::nullopt;
}

/// Determinant layout used by each bound; T2n uses the class index n.
inline ToeplitzSpec spec_for(BoundId id, int n) {
  switch (id) {
    case BoundId::T2n_h: return {n, 2, ToeplitzTarget::analytic};
    case BoundId::T2n_g: return {n, 2, ToeplitzTarget::coanalytic};
    case BoundId::T31_h: return {1, 3, ToeplitzTarget::analytic};
    case BoundId::T31_g: return {1, 3, ToeplitzTarget::coanalytic};
    case BoundId::T32_h: return {2, 3, ToeplitzTarget::analytic};
    case BoundId::T32_g: return {2, 3, ToeplitzTarget::coanalytic};
  }
  return {};
}

inline double bound_value(BoundId id, double alpha, double zeta_abs, int n) {
  switch (id) {
    case BoundId::T2n_h: return bound_T2n(alpha, n);
    case BoundId::T2n_g: return bound_T2n_g(zeta_abs, n);
    case BoundId::T31_h: return bound_T31(alpha);
    case BoundId::T31_g: return bound_T31_g(alpha, zeta_abs);
    case BoundId::T32_h: return bound_T32(alpha);
    case BoundId::T32_g: return bound_T32_g(alpha, zeta_abs);
  }
  return 0.0;
}

struct ScanResult {
  double supremum = 0.0;
  double argmax_angle = 0.0;
  complex argmax_delta{1.0};
  double bound = 0.0;
  /// (bound - supremum) / bound, or 0 when the bound vanishes.
  double relative_gap = 0.0;
};

/// Maximizes |T| over the rotation extremals delta = e^{i theta}: a uniform
/// grid of `grid` angles, then golden-section refinement around the best one
/// until the angle window is below 1e-6.
inline ScanResult sharpness_scan(double alpha, complex zeta, int n, BoundId which, int grid = 360) {
  if (grid < 8) throw precondition_error("sharpness_scan: grid must be >= 8");
  const auto spec = spec_for(which, n);
  const std::size_t order = static_cast<std::size_t>(std::max(spec.n + spec.q - 1, n + 4));
  auto objective = [&](double theta) {
    const auto f = extremal_mzn(alpha, zeta, n, std::polar(1.0, theta), order);
    return std::abs(toeplitz_det(f, spec));
  };

  const double step = 2.0 * std::numbers::pi / grid;
  double best_theta = 0.0;
  double best = -1.0;
  for (int i = 0; i < grid; ++i) {
    const double theta = i * step;
    const double v = objective(theta);
    if (v > best) {
      best = v;
      best_theta = theta;
    }
  }

  constexpr double inv_phi = 0.6180339887498949;
  double lo = best_theta - step;
  double hi = best_theta + step;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > 1e-6) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double fmid = objective(mid);
  if (fmid > best) {
    best = fmid;
    best_theta = mid;
  }

  ScanResult r;
  r.supremum = best;
  r.argmax_angle = std::remainder(best_theta, 2.0 * std::numbers::pi);
  if (r.argmax_angle < 0.0) r.argmax_angle += 2.0 * std::numbers::pi;
  r.argmax_delta = std::polar(1.0, r.argmax_angle);
  r.bound = bound_value(which, alpha, std::abs(zeta), n);
  r.relative_gap = r.bound > 0.0 ? (r.bound - r.supremum) / r.bound : 0.0;
  return r;
}

}  // namespace hbk
