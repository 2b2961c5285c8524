#pragma once

// Members of the close-to-convex harmonic class M(alpha, zeta, n):
//   Re(1 + z h''/h') > alpha,  g' = zeta z^n h',  -1/2 <= alpha < 1,  |zeta| <= 1/(2n-1),
// built either from a Caratheodory function p (random sampling) or from the
// rotation extremal h' = (1 - delta z)^{2 alpha - 2}.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hbk/errors.hpp"
#include "hbk/rng.hpp"
#include "hbk/series.hpp"

namespace hbk {

/// Predicate selecting the logarithmic (alpha = 1/2) branch of the closed forms.
inline bool is_log_branch(double alpha) { return std::abs(2.0 * alpha - 1.0) < 1e-9; }

/// Radius 1/(2n-1) of the admissible zeta disk.
inline double zeta_radius(int n) { return 1.0 / (2.0 * n - 1.0); }

inline constexpr double kBoundaryTol = 1e-12;

struct HerglotzAtom {
  double weight;
  double angle;
};

/// p(z) = sum_j w_j (1 + e^{i t_j} z) / (1 - e^{i t_j} z) with w_j > 0, sum w_j = 1.
class CaratheodoryFunction {
 public:
  explicit CaratheodoryFunction(std::vector<HerglotzAtom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw precondition_error("CaratheodoryFunction: no atoms");
    double total = 0.0;
    for (const auto& a : atoms_) {
      if (!(a.weight > 0.0)) throw precondition_error("CaratheodoryFunction: weights must be positive");
      total += a.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw precondition_error("CaratheodoryFunction: weights must sum to 1");
  }

  const std::vector<HerglotzAtom>& atoms() const noexcept { return atoms_; }

  /// p_k = 2 sum_j w_j e^{i k t_j} for k >= 1, p_0 = 1.
  complex coefficient(std::size_t k) const {
    if (k == 0) return 1.0;
    complex s{0.0};
    for (const auto& a : atoms_) s += a.weight * std::polar(1.0, static_cast<double>(k) * a.angle);
    return 2.0 * s;
  }

  TruncatedSeries series(std::size_t order) const {
    std::vector<complex> c(order + 1);
    for (std::size_t k = 0; k <= order; ++k) c[k] = coefficient(k);
    return TruncatedSeries(std::move(c));
  }

  complex evaluate(complex z) const {
    complex s{0.0};
    for (const auto& a : atoms_) {
      const complex x = std::polar(1.0, a.angle) * z;
      s += a.weight * (1.0 + x) / (1.0 - x);
    }
    return s;
  }

 private:
  std::vector<HerglotzAtom> atoms_;
};

/// Atom count uniform on 1..max_atoms, angles uniform, weights -log(U) normalized.
inline CaratheodoryFunction sample_caratheodory(Rng& rng, int max_atoms) {
  if (max_atoms < 1) throw precondition_error("sample_caratheodory: max_atoms must be >= 1");
  const auto count = static_cast<std::size_t>(rng.integer(1, static_cast<std::uint64_t>(max_atoms)));
  std::vector<HerglotzAtom> atoms(count);
  double total = 0.0;
  for (auto& a : atoms) {
    a.angle = 2.0 * std::numbers::pi * rng.uniform();
    a.weight = -std::log(rng.uniform_open());
    total += a.weight;
  }
  for (auto& a : atoms) a.weight /= total;
  return CaratheodoryFunction(std::move(atoms));
}

inline CaratheodoryFunction sample_caratheodory(std::uint64_t seed, int max_atoms) {
  Rng rng(seed);
  return sample_caratheodory(rng, max_atoms);
}

struct HarmonicMapParams {
  double alpha = 0.0;
  complex zeta{0.0};
  int n = 1;

  void validate() const {
    if (n < 1) throw precondition_error("HarmonicMapParams: n must be a positive integer");
    if (!(alpha >= -0.5 && alpha < 1.0))
      throw precondition_error("HarmonicMapParams: alpha must lie in [-1/2, 1)");
    if (std::abs(zeta) > zeta_radius(n) + kBoundaryTol)
      throw precondition_error("HarmonicMapParams: |zeta| exceeds 1/(2n-1)");
  }

  /// |zeta| = 1/(2n-1): admitted by the class definition, excluded by the strict statements.
  bool on_boundary() const { return std::abs(std::abs(zeta) - zeta_radius(n)) <= kBoundaryTol; }
};

enum class ZetaMode { interior, boundary, real_interior };

/// Uniform on the disk |zeta| <= 1/(2n-1), on its boundary circle, or on [0, 1/(2n-1)).
inline complex sample_zeta(Rng& rng, int n, ZetaMode mode) {
  const double radius = zeta_radius(n);
  switch (mode) {
    case ZetaMode::boundary:
      return std::polar(radius, 2.0 * std::numbers::pi * rng.uniform());
    case ZetaMode::real_interior:
      return radius * rng.uniform();
    case ZetaMode::interior:
    default: {
      const double rho = radius * std::sqrt(rng.uniform());
      return std::polar(rho, 2.0 * std::numbers::pi * rng.uniform());
    }
  }
}

struct Sampled {
  std::uint64_t seed = 0;
};
struct Extremal {
  complex delta{1.0};
};
struct KernelBased {
  std::string kernel;
};
using Provenance = std::variant<Sampled, Extremal, KernelBased>;

/// Solves n(n-1) a_n = (1-alpha) sum_{k=1}^{n-1} k a_k p_{n-k} for h = z + a_2 z^2 + ... + a_N z^N.
inline TruncatedSeries build_h_from_p(const TruncatedSeries& p, double alpha, std::size_t order) {
  if (!(alpha >= -0.5 && alpha < 1.0)) throw precondition_error("build_h_from_p: alpha must lie in [-1/2, 1)");
  if (order < 2) throw precondition_error("build_h_from_p: order must be >= 2");
  if (p.order() + 1 < order) throw precondition_error("build_h_from_p: p needs order >= N-1");
  std::vector<complex> a(order + 1, complex{0.0});
  a[1] = 1.0;
  for (std::size_t m = 2; m <= order; ++m) {
    complex s{0.0};
    for (std::size_t k = 1; k < m; ++k) s += static_cast<double>(k) * a[k] * p[m - k];
    a[m] = (1.0 - alpha) * s / static_cast<double>(m * (m - 1));
  }
  return TruncatedSeries(std::move(a));
}

inline TruncatedSeries build_h_from_p(const CaratheodoryFunction& p, double alpha, std::size_t order) {
  return build_h_from_p(p.series(order), alpha, order);
}

/// Independent route: h' = exp(int_0^z (1-alpha)(p(t) - 1)/t dt), h = int h'.
inline TruncatedSeries build_h_from_p_exp(const TruncatedSeries& p, double alpha, std::size_t order) {
  if (p.order() + 1 < order) throw precondition_error("build_h_from_p_exp: p needs order >= N-1");
  const auto p1 = p.truncated(order - 1) - TruncatedSeries::monomial(0, order - 1);
  const auto log_hprime = series_integrate((1.0 - alpha) * shift_down(p1));
  return series_integrate(series_exp(log_hprime)).truncated(order);
}

/// b_{k+n} = zeta k a_k / (k+n), all other coefficients zero.
inline TruncatedSeries build_g_from_h(const TruncatedSeries& h, complex zeta, int n, std::size_t order) {
  if (n < 1) throw precondition_error("build_g_from_h: n must be positive");
  const auto shift = static_cast<std::size_t>(n);
  if (h.order() + shift < order) throw precondition_error("build_g_from_h: h order too small");
  std::vector<complex> b(order + 1, complex{0.0});
  for (std::size_t k = 1; k + shift <= order; ++k)
    b[k + shift] = zeta * static_cast<double>(k) * h[k] / static_cast<double>(k + shift);
  return TruncatedSeries(std::move(b));
}

/// (1/k!) prod_{j=2}^{k} (j - 2 alpha), the sharp bound on |a_k| for k >= 2.
inline double coefficient_bound_a(std::size_t k, double alpha) {
  if (k < 2) throw domain_error("coefficient_bound_a: requires k >= 2");
  double prod = 1.0;
  for (std::size_t j = 2; j <= k; ++j) prod *= (static_cast<double>(j) - 2.0 * alpha) / static_cast<double>(j);
  return prod;
}

/// Bound on |b_k|, defined for k >= n+1.
inline double coefficient_bound_b(std::size_t k, int n, double alpha, double zeta_abs) {
  if (n < 1) throw domain_error("coefficient_bound_b: n must be positive");
  const auto shift = static_cast<std::size_t>(n);
  if (k < shift + 1) throw domain_error("coefficient_bound_b: requires k >= n+1");
  const std::size_t j = k - shift;
  if (j == 1) return zeta_abs / static_cast<double>(k);
  // zeta prod_{i=2}^{j}(i - 2 alpha) / ((j+n)(j-1)!) = zeta j bound_a(j) / (j+n)
  return zeta_abs * static_cast<double>(j) * coefficient_bound_a(j, alpha) / static_cast<double>(k);
}

/// Majorant for every coefficient of h: 0, 1, bound_a(2), bound_a(3), ...
inline CoefficientBound analytic_bound(double alpha) {
  return [alpha](std::size_t k) -> double {
    if (k == 0) return 0.0;
    if (k == 1) return 1.0;
    return coefficient_bound_a(k, alpha);
  };
}

/// Majorant for every coefficient of g; zero up to index n.
inline CoefficientBound coanalytic_bound(double alpha, double zeta_abs, int n) {
  return [=](std::size_t k) -> double {
    if (k <= static_cast<std::size_t>(n)) return 0.0;
    return coefficient_bound_b(k, n, alpha, zeta_abs);
  };
}

/// f = h + conj(g) with g determined by h through g' = zeta z^n h'.
class HarmonicMapping {
 public:
  HarmonicMapping(TruncatedSeries h, HarmonicMapParams params, Provenance provenance)
      : h_(std::move(h)), params_(params), provenance_(std::move(provenance)) {
    params_.validate();
    if (h_.order() < 1) throw precondition_error("HarmonicMapping: h needs order >= 1");
    if (h_[0] != complex{0.0} || std::abs(h_[1] - 1.0) > 1e-14)
      throw precondition_error("HarmonicMapping: h must be normalized (a_0 = 0, a_1 = 1)");
    // |omega| = |zeta| |z|^n < 1 on the disk since |zeta| <= 1/(2n-1) <= 1.
    g_ = build_g_from_h(h_, params_.zeta, params_.n, h_.order());
  }

  const TruncatedSeries& h() const noexcept { return h_; }
  const TruncatedSeries& g() const noexcept { return g_; }
  const HarmonicMapParams& params() const noexcept { return params_; }
  const Provenance& provenance() const noexcept { return provenance_; }
  std::size_t order() const noexcept { return h_.order(); }

  bool extremal() const { return std::holds_alternative<Extremal>(provenance_); }

  /// Bound on |b_m| + |a_m| used for truncation tails of f and its majorant.
  CoefficientBound coefficient_majorant() const {
    auto ba = analytic_bound(params_.alpha);
    auto bb = coanalytic_bound(params_.alpha, std::abs(params_.zeta), params_.n);
    return [ba, bb](std::size_t k) { return ba(k) + bb(k); };
  }

  /// f(z) = h(z) + conj(g(z)) with a certified bound on the truncation error.
  Enclosure evaluate(complex z, EvalOptions opt = {}) const {
    Enclosure e;
    e.value = series_evaluate(h_, z, opt) + std::conj(series_evaluate(g_, z, opt));
    e.tail = series_tail_bound(order(), std::abs(z), coefficient_majorant());
    return e;
  }

 private:
  TruncatedSeries h_;
  TruncatedSeries g_;
  HarmonicMapParams params_;
  Provenance provenance_;
};

/// f = int dt/(1 - delta t)^{2-2alpha} + conj(int zeta t^n dt/(1 - delta t)^{2-2alpha}).
inline HarmonicMapping extremal_mzn(double alpha, complex zeta, int n, complex delta, std::size_t order = 128) {
  if (std::abs(std::abs(delta) - 1.0) > 1e-12) throw precondition_error("extremal_mzn: |delta| must be 1");
  HarmonicMapParams params{alpha, zeta, n};
  params.validate();
  // (1 - delta z)^{-beta} = sum (beta)_j / j! delta^j z^j
  const double beta = 2.0 - 2.0 * alpha;
  std::vector<complex> hp(order, complex{0.0});
  hp[0] = 1.0;
  for (std::size_t j = 1; j < order; ++j)
    hp[j] = hp[j - 1] * delta * ((beta + static_cast<double>(j) - 1.0) / static_cast<double>(j));
  auto h = series_integrate(TruncatedSeries(std::move(hp)));
  return HarmonicMapping(std::move(h), params, Extremal{delta});
}

/// A random member of M(alpha, zeta, n) with h built from a sampled p.
inline HarmonicMapping sample_mzn(std::uint64_t seed, double alpha, int n, ZetaMode mode,
                                  std::size_t order = 128, int max_atoms = 5) {
  Rng rng(seed);
  const complex zeta = sample_zeta(rng, n, mode);
  const auto p = sample_caratheodory(rng, max_atoms);
  return HarmonicMapping(build_h_from_p(p, alpha, order), HarmonicMapParams{alpha, zeta, n}, Sampled{seed});
}

}  // namespace hbk
