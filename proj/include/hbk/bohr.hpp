#pragma once

// Growth envelopes, majorant series, image areas and Bohr radii.
//
//   Phi(r) = int_0^r (1 - zeta t^n)(1 + t)^{2 alpha - 2} dt <= |f(z)|
//   Psi(r) = int_0^r (1 + zeta t^n)(1 - t)^{2 alpha - 2} dt >= |f(z)|     (|z| = r)
//
// and, for a Ma-Minda kernel K,
//   L(zeta, n, r) = -K(-r) - zeta int_0^r t^n K'(-t) dt
//   R(zeta, n, r) =  K(r)  + zeta int_0^r t^n K'(t) dt.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "hbk/errors.hpp"
#include "hbk/kernel.hpp"
#include "hbk/mapping_classes.hpp"
#include "hbk/series.hpp"
#include "hbk/special_functions.hpp"

namespace hbk {

inline constexpr std::size_t kDefaultOrder = 128;
inline constexpr std::size_t kGrowthOrder = 256;

/// Radii above this use quadrature instead of the hypergeometric closed forms.
inline constexpr double kClosedFormRadius = 0.98;

inline constexpr double kBracketLo = 1e-6;
inline constexpr double kBracketHi = 1.0 - 1e-9;
inline constexpr double kBohrCap = 1.0 / 3.0;

struct EnvelopePoint {
  double r = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

struct RadiusResult {
  double root = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
  double residual = 0.0;
  int iterations = 0;
  /// min(1/3, root) for the HC(phi) radii, the root itself otherwise.
  double radius = 0.0;
  bool capped = false;
  /// |zeta| = 1/(2n-1), outside the strict hypothesis of the growth statements.
  bool boundary = false;
};

namespace detail {

inline void check_growth_args(double r, double alpha, double zeta_abs, int n) {
  if (!(r >= 0.0)) throw domain_error("growth: r must be nonnegative");
  if (r > 1.0) throw domain_error("growth: r must not exceed 1");
  if (n < 1) throw precondition_error("growth: n must be a positive integer");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw precondition_error("growth: alpha must lie in [0, 1)");
  if (!(zeta_abs >= 0.0) || zeta_abs > zeta_radius(n) + kBoundaryTol)
    throw precondition_error("growth: zeta must lie in [0, 1/(2n-1)]");
}

inline void check_zeta(double zeta_abs, int n, const char* who) {
  if (n < 1) throw precondition_error(std::string(who) + ": n must be a positive integer");
  if (!(zeta_abs >= 0.0) || zeta_abs > zeta_radius(n) + kBoundaryTol)
    throw precondition_error(std::string(who) + ": zeta must lie in [0, 1/(2n-1)]");
}

inline void check_tol(double tol) {
  if (!(tol >= 1e-12)) throw precondition_error("root tolerance must be >= 1e-12");
}

/// ((1 + r)^{2a-1} - 1)/(2a-1), log(1+r) on the a = 1/2 branch.
inline double analytic_lower(double r, double alpha) {
  const double l = std::log1p(r);
  if (is_log_branch(alpha)) return l;
  const double e = 2.0 * alpha - 1.0;
  return std::expm1(e * l) / e;
}

/// (1 - (1 - r)^{2a-1})/(2a-1), -log(1-r) on the a = 1/2 branch.
inline double analytic_upper(double r, double alpha) {
  const double l = std::log1p(-r);
  if (is_log_branch(alpha)) return -l;
  const double e = 2.0 * alpha - 1.0;
  return -std::expm1(e * l) / e;
}

/// int_0^r g(t, 1 - t) dt; the piece near t = 1 is integrated in u = 1 - t so that
/// integrands singular at 1 see an exactly represented distance to the singularity.
template <class G>
double integrate_toward_one(G&& g, double r, const QuadratureSpec& spec) {
  const double split = std::min(r, 0.5);
  double s = adaptive_quadrature([&](double t) { return g(t, 1.0 - t); }, 0.0, split, spec);
  if (r > 0.5) s += adaptive_quadrature([&](double u) { return g(1.0 - u, u); }, 1.0 - r, 0.5, spec);
  return s;
}

}  // namespace detail

/// Phi through 2F1(n+1, 2-2a; n+2; -r); valid for 0 <= r < 1.
inline double growth_phi_closed(double r, double alpha, double zeta_abs, int n) {
  detail::check_growth_args(r, alpha, zeta_abs, n);
  if (r >= 1.0) throw domain_error("growth_phi_closed: requires r < 1");
  if (r == 0.0) return 0.0;
  const double np1 = n + 1.0;
  // 2F1(n+1, 1; n+2; x) on the log branch is the same series with b = 2 - 2a = 1.
  const double f = gauss_2f1(np1, 2.0 - 2.0 * alpha, n + 2.0, -r);
  return detail::analytic_lower(r, alpha) - zeta_abs * std::pow(r, np1) * f / np1;
}

/// Psi through 2F1(n+1, 2-2a; n+2; r); valid for 0 <= r < 1.
inline double growth_psi_closed(double r, double alpha, double zeta_abs, int n) {
  detail::check_growth_args(r, alpha, zeta_abs, n);
  if (r >= 1.0) throw domain_error("growth_psi_closed: requires r < 1");
  if (r == 0.0) return 0.0;
  const double np1 = n + 1.0;
  const double f = gauss_2f1(np1, 2.0 - 2.0 * alpha, n + 2.0, r);
  return detail::analytic_upper(r, alpha) + zeta_abs * std::pow(r, np1) * f / np1;
}

inline double growth_phi_integral(double r, double alpha, double zeta_abs, int n, const QuadratureSpec& spec = {}) {
  detail::check_growth_args(r, alpha, zeta_abs, n);
  const double e = 2.0 * alpha - 2.0;
  return adaptive_quadrature(
      [&](double t) { return (1.0 - zeta_abs * std::pow(t, n)) * std::exp(e * std::log1p(t)); }, 0.0, r, spec);
}

inline double growth_psi_integral(double r, double alpha, double zeta_abs, int n, const QuadratureSpec& spec = {}) {
  detail::check_growth_args(r, alpha, zeta_abs, n);
  if (r >= 1.0) throw domain_error("growth_psi_integral: integrand unbounded at t = 1");
  const double e = 2.0 * alpha - 2.0;
  return detail::integrate_toward_one(
      [&](double t, double u) { return (1.0 + zeta_abs * std::pow(t, n)) * std::exp(e * std::log(u)); }, r, spec);
}

/// Lower growth envelope Phi(r; alpha, zeta, n), r in [0, 1].
inline double growth_phi(double r, double alpha, double zeta_abs, int n) {
  detail::check_growth_args(r, alpha, zeta_abs, n);
  if (r <= kClosedFormRadius) return growth_phi_closed(r, alpha, zeta_abs, n);
  return growth_phi_integral(r, alpha, zeta_abs, n);
}

/// Upper growth envelope Psi(r; alpha, zeta, n), r in [0, 1]; +inf at r = 1 when alpha <= 1/2.
inline double growth_psi(double r, double alpha, double zeta_abs, int n) {
  detail::check_growth_args(r, alpha, zeta_abs, n);
  if (r <= kClosedFormRadius) return growth_psi_closed(r, alpha, zeta_abs, n);
  if (r < 1.0) return growth_psi_integral(r, alpha, zeta_abs, n);
  if (alpha <= 0.5 || is_log_branch(alpha)) return std::numeric_limits<double>::infinity();
  // int_0^1 t^n (1-t)^{2a-2} dt = B(n+1, 2a-1)
  const double e = 2.0 * alpha - 1.0;
  return 1.0 / e + zeta_abs * std::beta(n + 1.0, e);
}

/// -K(-r) - zeta int_0^r t^n K'(-t) dt.
inline double growth_L(double r, double zeta_abs, int n, const MaMindaKernel& kernel, const QuadratureSpec& spec = {}) {
  if (!(r >= 0.0 && r <= 1.0)) throw domain_error("growth_L: r must lie in [0, 1]");
  detail::check_zeta(zeta_abs, n, "growth_L");
  if (r == 0.0) return 0.0;
  double integral = 0.0;
  if (zeta_abs > 0.0)
    integral = adaptive_quadrature([&](double t) { return std::pow(t, n) * kernel.derivative(-t); }, 0.0, r, spec);
  return -kernel.value(-r) - zeta_abs * integral;
}

/// K(r) + zeta int_0^r t^n K'(t) dt.
inline double growth_R(double r, double zeta_abs, int n, const MaMindaKernel& kernel, const QuadratureSpec& spec = {}) {
  if (!(r >= 0.0 && r <= 1.0)) throw domain_error("growth_R: r must lie in [0, 1]");
  detail::check_zeta(zeta_abs, n, "growth_R");
  if (r == 0.0) return 0.0;
  double integral = 0.0;
  if (zeta_abs > 0.0)
    integral = detail::integrate_toward_one(
        [&](double t, double u) { return std::pow(t, n) * kernel.derivative_complement(u); }, r, spec);
  return kernel.value(r) + zeta_abs * integral;
}

/// (L, R) at radius r. At r = 1 the upper value is +inf when K(1) is not finite.
inline EnvelopePoint growth_LR(double r, double zeta_abs, int n, const MaMindaKernel& kernel,
                               const QuadratureSpec& spec = {}) {
  EnvelopePoint p;
  p.r = r;
  p.lower = growth_L(r, zeta_abs, n, kernel, spec);
  if (r == 1.0 && std::holds_alternative<ConvexOrderForm>(kernel.form())) {
    const double a = std::get<ConvexOrderForm>(kernel.form()).alpha;
    if (a <= 0.5 || is_log_branch(a)) {
      p.upper = std::numeric_limits<double>::infinity();
    } else {
      const double e = 2.0 * a - 1.0;
      p.upper = 1.0 / e + zeta_abs * std::beta(n + 1.0, e);
    }
    return p;
  }
  p.upper = growth_R(r, zeta_abs, n, kernel, spec);
  return p;
}

/// Majorant sum |c_k| r^k of a truncated series with a certified tail.
inline Enclosure majorant_at(const TruncatedSeries& a, double r, const CoefficientBound& bound, EvalOptions opt = {}) {
  if (r < 0.0) throw domain_error("majorant_at: r must be nonnegative");
  return series_evaluate(majorant_series(a), r, bound, opt);
}

/// M_f(r) = sum (|a_k| + |b_k|) r^k.
///
/// Partial sums with certified tails up to r_max; beyond it only the rotation
/// extremals (whose coefficients attain the class bounds) are available, via Psi.
inline Enclosure majorant_at(const HarmonicMapping& f, double r, EvalOptions opt = {}) {
  if (r < 0.0) throw domain_error("majorant_at: r must be nonnegative");
  if (r <= opt.r_max) {
    const auto m = majorant_series(f.h()) + majorant_series(f.g());
    return series_evaluate(m, r, f.coefficient_majorant(), opt);
  }
  const auto& p = f.params();
  if (f.extremal() && r < 1.0 && p.alpha >= 0.0) return Enclosure{growth_psi(r, p.alpha, std::abs(p.zeta), p.n), 0.0};
  throw accuracy_error("majorant_at: tail not certifiable at r = " + std::to_string(r));
}

/// Bisection for the root of an increasing function on [lo, hi].
///
/// Stops once the bracket is narrower than tol and |F(mid)| <= residual_tol,
/// or when the bracket cannot shrink further in double precision.
template <class F>
RadiusResult bisect_root(F&& fn, double lo, double hi, double tol = 1e-10, double residual_tol = 1e-9) {
  detail::check_tol(tol);
  double f_lo = fn(lo);
  double f_hi = fn(hi);
  if (!(f_lo < 0.0 && f_hi > 0.0))
    throw bracket_error("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) +
                            "]: F(lo) = " + std::to_string(f_lo) + ", F(hi) = " + std::to_string(f_hi),
                        lo, hi, f_lo, f_hi);
  RadiusResult res;
  for (int it = 0;; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    const double fm = fn(mid);
    const bool exhausted = mid <= lo || mid >= hi;
    if ((hi - lo <= tol && std::abs(fm) <= residual_tol) || exhausted || fm == 0.0) {
      res.root = mid;
      res.residual = std::abs(fm);
      res.iterations = it;
      break;
    }
    if (fm < 0.0) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
      f_hi = fm;
    }
  }
  res.lo = lo;
  res.hi = hi;
  res.f_lo = f_lo;
  res.f_hi = f_hi;
  res.radius = res.root;
  return res;
}

/// Sharp radius for M(alpha, zeta, n): root of Psi(r) - Phi(1).
inline RadiusResult bohr_radius_mzn(double alpha, double zeta_abs, int n, double tol = 1e-10) {
  detail::check_growth_args(0.0, alpha, zeta_abs, n);
  const double distance = growth_phi(1.0, alpha, zeta_abs, n);
  auto res = bisect_root([&](double r) { return growth_psi(r, alpha, zeta_abs, n) - distance; }, kBracketLo,
                         kBracketHi, tol);
  res.boundary = std::abs(zeta_abs - zeta_radius(n)) <= kBoundaryTol;
  return res;
}

/// Same radius from a kernel's growth envelope: root of R(zeta, n, r) - L(zeta, n, 1).
/// convex-order:<alpha> reproduces bohr_radius_mzn; convex-order:1 is the alpha -> 1 limit.
inline RadiusResult bohr_radius_growth(const MaMindaKernel& kernel, double zeta_abs, int n, double tol = 1e-10) {
  detail::check_zeta(zeta_abs, n, "bohr_radius_growth");
  const double distance = growth_L(1.0, zeta_abs, n, kernel);
  auto res = bisect_root([&](double r) { return growth_R(r, zeta_abs, n, kernel) - distance; }, kBracketLo,
                         std::min(kBracketHi, kernel.majorant_limit()), tol);
  res.boundary = std::abs(zeta_abs - zeta_radius(n)) <= kBoundaryTol;
  return res;
}

/// R_C(n, r) = M_K(r) + zeta int_0^r t^n M_{K'}(t) dt.
inline double majorant_envelope(double r, double zeta_abs, int n, const MaMindaKernel& kernel,
                                const QuadratureSpec& spec = {}) {
  if (r == 0.0) return 0.0;
  double integral = 0.0;
  if (zeta_abs > 0.0)
    integral = kernel.nonnegative_coefficients()
                   ? detail::integrate_toward_one(
                         [&](double t, double u) { return std::pow(t, n) * kernel.derivative_complement(u); }, r, spec)
                   : adaptive_quadrature([&](double t) { return std::pow(t, n) * kernel.derivative_majorant(t); },
                                         0.0, r, spec);
  return kernel.majorant(r) + zeta_abs * integral;
}

/// int_0^r t (1 - zeta^2 t^{2n}) K'(sign t)^2 dt.
inline double area_integral(double r, double zeta_abs, int n, const MaMindaKernel& kernel, double sign,
                            const QuadratureSpec& spec = {}) {
  if (r == 0.0) return 0.0;
  auto weight = [&](double t) { return t * (1.0 - zeta_abs * zeta_abs * std::pow(t, 2 * n)); };
  if (sign < 0.0)
    return adaptive_quadrature(
        [&](double t) {
          const double kp = kernel.derivative(-t);
          return weight(t) * kp * kp;
        },
        0.0, r, spec);
  return detail::integrate_toward_one(
      [&](double t, double u) {
        const double kp = kernel.derivative_complement(u);
        return weight(t) * kp * kp;
      },
      r, spec);
}

namespace detail {

inline RadiusResult capped(RadiusResult res, double zeta_abs, int n) {
  res.radius = std::min(kBohrCap, res.root);
  res.capped = res.root > kBohrCap;
  res.boundary = std::abs(zeta_abs - zeta_radius(n)) <= kBoundaryTol;
  return res;
}

}  // namespace detail

/// Bohr radius for HC(phi): min(1/3, r_f), r_f the smallest root of R_C(n, r) - L(zeta, n, 1).
inline RadiusResult bohr_radius_hcphi(const MaMindaKernel& kernel, double zeta_abs, int n, double tol = 1e-10) {
  detail::check_zeta(zeta_abs, n, "bohr_radius_hcphi");
  const double distance = growth_L(1.0, zeta_abs, n, kernel);
  auto h1 = [&](double r) { return majorant_envelope(r, zeta_abs, n, kernel) - distance; };
  const double hi = std::min(kBracketHi, kernel.majorant_limit());
  return detail::capped(bisect_root(h1, kBracketLo, hi, tol), zeta_abs, n);
}

/// Improved radius: adds the normalized area bound int_0^r t(1 - zeta^2 t^{2n}) K'(t)^2 dt to R_C.
inline RadiusResult improved_bohr_radius(const MaMindaKernel& kernel, double zeta_abs, int n, double tol = 1e-10) {
  detail::check_zeta(zeta_abs, n, "improved_bohr_radius");
  const double distance = growth_L(1.0, zeta_abs, n, kernel);
  auto h2 = [&](double r) {
    return majorant_envelope(r, zeta_abs, n, kernel) + area_integral(r, zeta_abs, n, kernel, 1.0) - distance;
  };
  const double hi = std::min(kBracketHi, kernel.majorant_limit());
  return detail::capped(bisect_root(h2, kBracketLo, hi, tol), zeta_abs, n);
}

struct AreaBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// 2 pi int_0^r t (1 - zeta^2 t^{2n}) K'(-t)^2 dt <= S_r <= the same with K'(t).
inline AreaBounds area_bounds(double r, double zeta_abs, int n, const MaMindaKernel& kernel) {
  if (!(r >= 0.0 && r < 1.0)) throw domain_error("area_bounds: r must lie in [0, 1)");
  detail::check_zeta(zeta_abs, n, "area_bounds");
  const double two_pi = 2.0 * std::numbers::pi;
  return {two_pi * area_integral(r, zeta_abs, n, kernel, -1.0), two_pi * area_integral(r, zeta_abs, n, kernel, 1.0)};
}

/// S_r = pi sum k (|a_k|^2 - |b_k|^2) r^{2k}, with the tail bounded through the class coefficient bounds.
inline Enclosure area_exact(const HarmonicMapping& f, double r, double max_tail = 1e-8) {
  if (!(r >= 0.0 && r < 1.0)) throw domain_error("area_exact: r must lie in [0, 1)");
  const double rho = r * r;
  double sum = 0.0;
  double pw = 1.0;
  for (std::size_t k = 1; k <= f.order(); ++k) {
    pw *= rho;
    sum += static_cast<double>(k) * (std::norm(f.h()[k]) - std::norm(f.g()[k])) * pw;
  }
  const auto bound = f.coefficient_majorant();
  const double tail = series_tail_bound(f.order(), rho, [&](std::size_t k) {
    const double b = bound(k);
    return static_cast<double>(k) * b * b;
  });
  Enclosure e{std::numbers::pi * sum, std::numbers::pi * tail};
  if (e.tail > max_tail) throw accuracy_error("area_exact: truncation tail " + std::to_string(e.tail) + " too large");
  return e;
}

struct FigureRow {
  int n = 1;
  double r = 0.0;
  double value = 0.0;
};

/// F_n(r) = Psi(r) - Phi(1) with zeta = 1/(2n), sampled on r_grid for each n.
inline std::vector<FigureRow> figure_data(double alpha, const std::vector<int>& n_list, const std::vector<double>& r_grid) {
  std::vector<FigureRow> rows;
  rows.reserve(n_list.size() * r_grid.size());
  for (int n : n_list) {
    const double zeta = 1.0 / (2.0 * n);
    const double distance = growth_phi(1.0, alpha, zeta, n);
    for (double r : r_grid) {
      if (!(r >= 0.0 && r <= 0.999)) throw domain_error("figure_data: grid must lie in [0, 0.999]");
      rows.push_back({n, r, growth_psi(r, alpha, zeta, n) - distance});
    }
  }
  return rows;
}

}  // namespace hbk
