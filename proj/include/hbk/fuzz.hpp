#pragma once

// Seeded property campaigns over sampled members of M(alpha, zeta, n).
//
// Sample i uses the stream derive_seed(seed, i); alpha and n cycle through the
// grids by index. Workers own contiguous index ranges and their statistics are
// folded in range order, so the report does not depend on the thread count.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hbk/bohr.hpp"
#include "hbk/errors.hpp"
#include "hbk/kernel.hpp"
#include "hbk/mapping_classes.hpp"
#include "hbk/rng.hpp"
#include "hbk/toeplitz.hpp"

namespace hbk {

struct CampaignConfig {
  std::uint64_t seed = 20240601;
  std::size_t samples = 10000;
  std::vector<double> alpha_grid{-0.5, 0.0, 0.25, 0.5, 0.75, 0.9};
  std::vector<int> n_list{1, 2, 3};
  ZetaMode zeta_mode = ZetaMode::interior;
  int max_atoms = 5;
  std::size_t order = kDefaultOrder;
  double slack = 1e-9;
  /// Added to certified tails in the growth and Bohr checks.
  double growth_slack = 1e-8;
  std::size_t max_coeff = 32;
  int efraimidis_mu = 4;
  std::size_t efraimidis_max = 20;
  unsigned threads = 0;  // 0: hardware concurrency capped by HBK_THREADS

  void validate() const {
    if (samples < 1) throw precondition_error("campaign: samples must be >= 1");
    if (alpha_grid.empty() || n_list.empty()) throw precondition_error("campaign: grids must be nonempty");
    for (double a : alpha_grid)
      if (!(a >= -0.5 && a < 1.0)) throw precondition_error("campaign: alpha grid outside [-1/2, 1)");
    for (int n : n_list)
      if (n < 1) throw precondition_error("campaign: n must be positive");
    if (order < std::max(max_coeff, efraimidis_max) + 4) throw precondition_error("campaign: order too small");
    if (max_atoms < 1) throw precondition_error("campaign: max_atoms must be >= 1");
  }
};

enum class Property {
  caratheodory_bound,
  efraimidis,
  coefficient_bound_a,
  coefficient_bound_b,
  toeplitz_T2n_h,
  toeplitz_T2n_g,
  toeplitz_T31_h,
  toeplitz_T31_g,
  toeplitz_T32_h,
  toeplitz_T32_g,
  subordination_majorant,
  growth_sandwich,
  bohr_inequality,
  area_sandwich,
};

inline constexpr std::size_t kPropertyCount = 14;

inline const char* property_name(Property p) {
  static constexpr const char* names[kPropertyCount] = {
      "caratheodory_bound", "efraimidis",     "coefficient_bound_a", "coefficient_bound_b", "toeplitz_T2n_h",
      "toeplitz_T2n_g",     "toeplitz_T31_h", "toeplitz_T31_g",      "toeplitz_T32_h",      "toeplitz_T32_g",
      "subordination_majorant", "growth_sandwich", "bohr_inequality", "area_sandwich"};
  return names[static_cast<std::size_t>(p)];
}

struct SampleContext {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  complex zeta{0.0};
  int n = 1;
};

struct Observation {
  SampleContext sample;
  double value = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  std::string detail;
};

struct NStats {
  std::size_t checks = 0;
  std::size_t violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
};

struct PropertyStats {
  std::size_t checks = 0;
  std::size_t violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::optional<Observation> worst;
  std::optional<Observation> first_violation;
  std::map<int, NStats> by_n;

  bool pass() const { return violations == 0; }

  /// margin >= 0 means the inequality holds (slack already included).
  void record(const SampleContext& s, double value, double bound, double margin, std::string detail = {}) {
    ++checks;
    auto& bn = by_n[s.n];
    ++bn.checks;
    const bool violated = !(margin >= 0.0);
    if (violated) ++bn.violations;
    if (margin < bn.worst_margin || std::isnan(margin)) bn.worst_margin = margin;
    if (margin < worst_margin || (std::isnan(margin) && !std::isnan(worst_margin))) {
      worst_margin = margin;
      worst = Observation{s, value, bound, margin, detail};
    }
    if (violated) {
      ++violations;
      if (!first_violation) first_violation = Observation{s, value, bound, margin, std::move(detail)};
    }
  }

  /// Appends the statistics of a later index range.
  void merge(const PropertyStats& later) {
    checks += later.checks;
    violations += later.violations;
    if (later.worst_margin < worst_margin) {
      worst_margin = later.worst_margin;
      worst = later.worst;
    }
    if (!first_violation && later.first_violation) first_violation = later.first_violation;
    for (const auto& [n, s] : later.by_n) {
      auto& mine = by_n[n];
      mine.checks += s.checks;
      mine.violations += s.violations;
      mine.worst_margin = std::min(mine.worst_margin, s.worst_margin);
    }
  }
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<PropertyStats> properties = std::vector<PropertyStats>(kPropertyCount);
  std::size_t errors = 0;  // samples that raised a numeric error
  std::optional<std::string> first_error;

  bool pass() const {
    if (errors) return false;
    return std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.pass(); });
  }
  const PropertyStats& operator[](Property p) const { return properties[static_cast<std::size_t>(p)]; }
};

/// Worker count: hardware concurrency, capped by HBK_THREADS when set.
inline unsigned worker_count(unsigned requested = 0) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HBK_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

namespace detail {

struct CampaignState {
  const CampaignConfig& cfg;
  std::map<double, MaMindaKernel> kernels;
};

inline std::string k_detail(const char* key, std::size_t k) { return std::string(key) + "=" + std::to_string(k); }

inline void run_sample(const CampaignState& st, std::size_t index, std::vector<PropertyStats>& out) {
  const auto& cfg = st.cfg;
  SampleContext s;
  s.index = index;
  s.seed = derive_seed(cfg.seed, index);
  s.alpha = cfg.alpha_grid[index % cfg.alpha_grid.size()];
  s.n = cfg.n_list[(index / cfg.alpha_grid.size()) % cfg.n_list.size()];

  Rng rng(s.seed);
  s.zeta = sample_zeta(rng, s.n, cfg.zeta_mode);
  const auto p = sample_caratheodory(rng, cfg.max_atoms);
  const HarmonicMapping f(build_h_from_p(p, s.alpha, cfg.order), HarmonicMapParams{s.alpha, s.zeta, s.n},
                          Sampled{s.seed});
  const double zabs = std::abs(s.zeta);
  const double slack = cfg.slack;
  auto at = [&](Property prop) -> PropertyStats& { return out[static_cast<std::size_t>(prop)]; };

  const auto pk = p.series(cfg.order);
  for (std::size_t k = 1; k <= cfg.max_coeff; ++k) {
    const double v = std::abs(pk[k]);
    at(Property::caratheodory_bound).record(s, v, 2.0, 2.0 + slack - v, k_detail("k", k));
  }

  for (int j = 0; j < cfg.efraimidis_mu; ++j) {
    const complex mu = std::polar(2.0 * std::sqrt(rng.uniform()), 2.0 * std::numbers::pi * rng.uniform());
    double worst = std::numeric_limits<double>::infinity();
    double worst_v = 0.0, worst_b = 0.0;
    std::string worst_d;
    const double bound = 2.0 * std::max(1.0, std::abs(2.0 * mu - 1.0));
    for (std::size_t m = 2; m <= cfg.efraimidis_max; ++m) {
      for (std::size_t k = 1; k < m; ++k) {
        const double v = std::abs(pk[m] - mu * pk[k] * pk[m - k]);
        if (bound + slack - v < worst) {
          worst = bound + slack - v;
          worst_v = v;
          worst_b = bound;
          worst_d = "n=" + std::to_string(m) + ",k=" + std::to_string(k);
        }
      }
    }
    at(Property::efraimidis).record(s, worst_v, worst_b, worst, worst_d);
  }

  for (std::size_t k = 2; k <= cfg.max_coeff; ++k) {
    const double v = std::abs(f.h()[k]);
    const double b = coefficient_bound_a(k, s.alpha);
    at(Property::coefficient_bound_a).record(s, v, b, b + slack - v, k_detail("k", k));
  }
  for (std::size_t k = static_cast<std::size_t>(s.n) + 1; k <= cfg.max_coeff; ++k) {
    const double v = std::abs(f.g()[k]);
    const double b = coefficient_bound_b(k, s.n, s.alpha, zabs);
    at(Property::coefficient_bound_b).record(s, v, b, b + slack - v, k_detail("k", k));
  }

  for (int m = 2; m <= 5; ++m) {
    const double v = std::abs(toeplitz_det(f.h(), m, 2));
    const double b = bound_T2n(s.alpha, m);
    at(Property::toeplitz_T2n_h).record(s, v, b, b + slack - v, "n=" + std::to_string(m));
  }
  const std::pair<Property, BoundId> toeplitz_checks[] = {{Property::toeplitz_T2n_g, BoundId::T2n_g},
                                                          {Property::toeplitz_T31_h, BoundId::T31_h},
                                                          {Property::toeplitz_T31_g, BoundId::T31_g},
                                                          {Property::toeplitz_T32_h, BoundId::T32_h},
                                                          {Property::toeplitz_T32_g, BoundId::T32_g}};
  for (const auto& [prop, id] : toeplitz_checks) {
    const double v = std::abs(toeplitz_det(f, spec_for(id, s.n)));
    const double b = bound_value(id, s.alpha, zabs, s.n);
    at(prop).record(s, v, b, b + slack - v);
  }

  const auto& kernel = st.kernels.at(s.alpha);
  {
    constexpr double r = 1.0 / 3.0;
    const auto hp = series_derivative(f.h());
    // tail of sum k |a_k| r^{k-1} beyond the stored terms
    const auto ba = analytic_bound(s.alpha);
    const double tail =
        series_tail_bound(hp.order(), r, [&](std::size_t m) { return static_cast<double>(m + 1) * ba(m + 1); });
    const double v = series_evaluate(majorant_series(hp), r).real();
    const double b = kernel.derivative_majorant(r);
    at(Property::subordination_majorant).record(s, v, b, b + slack + tail - v);
  }

  if (s.alpha >= 0.0) {
    for (double r : {0.25, 0.5, 0.75}) {
      const double lo = growth_phi(r, s.alpha, zabs, s.n);
      const double hi = growth_psi(r, s.alpha, zabs, s.n);
      double worst = std::numeric_limits<double>::infinity();
      double worst_v = 0.0, worst_b = 0.0;
      for (int j = 0; j < 16; ++j) {
        const auto e = f.evaluate(std::polar(r, 2.0 * std::numbers::pi * j / 16.0));
        const double v = std::abs(e.value);
        const double eps = e.tail + cfg.growth_slack;
        const double m = std::min(v - lo + eps, hi + eps - v);
        if (m < worst) {
          worst = m;
          worst_v = v;
          worst_b = (v - lo < hi - v) ? lo : hi;
        }
      }
      at(Property::growth_sandwich).record(s, worst_v, worst_b, worst, "r=" + std::to_string(r));
    }

    const auto rf = bohr_radius_mzn(s.alpha, zabs, s.n);
    const double distance = growth_phi(1.0, s.alpha, zabs, s.n);
    const auto m = majorant_at(f, rf.root * (1.0 - 1e-6));
    const double v = m.value.real();
    at(Property::bohr_inequality)
        .record(s, v, distance, distance + cfg.growth_slack - v - m.tail, "r_f=" + std::to_string(rf.root));
  }

  for (double r : {0.25, 0.5, 0.75}) {
    const auto exact = area_exact(f, r);
    const auto bounds = area_bounds(r, zabs, s.n, kernel);
    const double v = exact.value.real();
    const double m = std::min(v - bounds.lower, bounds.upper - v) + exact.tail + slack;
    at(Property::area_sandwich).record(s, v, (v - bounds.lower < bounds.upper - v) ? bounds.lower : bounds.upper, m,
                                       "r=" + std::to_string(r));
  }
}

}  // namespace detail

inline CampaignReport run_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  detail::CampaignState st{cfg, {}};
  for (double a : cfg.alpha_grid)
    if (!st.kernels.count(a)) st.kernels.emplace(a, convex_order_kernel(a, 8));

  const unsigned workers = std::min<std::size_t>(worker_count(cfg.threads), cfg.samples);
  struct Chunk {
    std::vector<PropertyStats> stats = std::vector<PropertyStats>(kPropertyCount);
    std::size_t errors = 0;
    std::optional<std::string> first_error;
  };
  std::vector<Chunk> chunks(workers);
  auto work = [&](unsigned w) {
    const std::size_t begin = cfg.samples * w / workers;
    const std::size_t end = cfg.samples * (w + 1) / workers;
    for (std::size_t i = begin; i < end; ++i) {
      try {
        detail::run_sample(st, i, chunks[w].stats);
      } catch (const error& e) {
        ++chunks[w].errors;
        if (!chunks[w].first_error) chunks[w].first_error = "sample " + std::to_string(i) + ": " + e.what();
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  CampaignReport report;
  report.config = cfg;
  for (const auto& c : chunks) {
    for (std::size_t p = 0; p < kPropertyCount; ++p) report.properties[p].merge(c.stats[p]);
    report.errors += c.errors;
    if (!report.first_error && c.first_error) report.first_error = c.first_error;
  }
  return report;
}

inline const char* zeta_mode_name(ZetaMode m) {
  switch (m) {
    case ZetaMode::boundary:
      return "boundary";
    case ZetaMode::real_interior:
      return "real";
    case ZetaMode::interior:
    default:
      return "interior";
  }
}

inline nlohmann::ordered_json observation_json(const Observation& o) {
  nlohmann::ordered_json j;
  j["index"] = o.sample.index;
  j["seed"] = o.sample.seed;
  j["alpha"] = o.sample.alpha;
  j["zeta"] = {o.sample.zeta.real(), o.sample.zeta.imag()};
  j["n"] = o.sample.n;
  j["value"] = o.value;
  j["bound"] = o.bound;
  j["margin"] = o.margin;
  if (!o.detail.empty()) j["where"] = o.detail;
  return j;
}

inline nlohmann::ordered_json report_json(const CampaignReport& r) {
  nlohmann::ordered_json j;
  const auto& c = r.config;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["alpha_grid"] = c.alpha_grid;
  j["n_list"] = c.n_list;
  j["zeta_mode"] = zeta_mode_name(c.zeta_mode);
  j["order"] = c.order;
  j["slack"] = c.slack;
  j["pass"] = r.pass();
  j["numeric_errors"] = r.errors;
  if (r.first_error) j["first_error"] = *r.first_error;
  auto& props = j["properties"] = nlohmann::ordered_json::array();
  for (std::size_t p = 0; p < kPropertyCount; ++p) {
    const auto& s = r.properties[p];
    nlohmann::ordered_json e;
    e["name"] = property_name(static_cast<Property>(p));
    e["pass"] = s.pass();
    e["checks"] = s.checks;
    e["violations"] = s.violations;
    if (s.checks) e["worst_margin"] = s.worst_margin;
    e["worst"] = s.worst ? observation_json(*s.worst) : nullptr;
    e["first_violation"] = s.first_violation ? observation_json(*s.first_violation) : nullptr;
    auto& bn = e["by_n"] = nlohmann::ordered_json::object();
    for (const auto& [n, ns] : s.by_n)
      bn[std::to_string(n)] = {{"checks", ns.checks}, {"violations", ns.violations}, {"worst_margin", ns.worst_margin}};
    props.push_back(std::move(e));
  }
  return j;
}

}  // namespace hbk
