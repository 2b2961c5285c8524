#pragma once

// Subcommand bodies for the hbk tool. Each returns its exit code and the text
// destined for stdout/stderr, so tests can drive them without a process.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "hbk/bohr.hpp"
#include "hbk/csv.hpp"
#include "hbk/errors.hpp"
#include "hbk/fuzz.hpp"
#include "hbk/kernel.hpp"
#include "hbk/mapping_classes.hpp"
#include "hbk/toeplitz.hpp"

namespace hbk {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

struct CommandOptions {
  std::optional<double> alpha;
  std::optional<double> zeta;
  std::optional<int> n;
  std::vector<int> n_list;
  std::optional<double> r;
  std::optional<std::string> phi;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 10000;
  std::optional<double> tol;
  std::string format = "csv";

  std::string method = "sharp";  // bohr-radius: sharp | hcphi | improved
  std::string which;                 // toeplitz-bound
  bool scan = false;
  int grid = 360;
  std::string target = "h";  // toeplitz-det: h | g
  std::optional<int> index;
  int q = 2;
  double delta_angle = 0.0;
  double step = 0.001;
  std::string zeta_mode = "interior";
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

inline double parse_double(std::string_view s, const char* what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v))
    throw precondition_error(std::string(what) + ": not a number: '" + std::string(s) + "'");
  return v;
}

/// `convex-order:<alpha>` or a file of polynomial phi coefficients B_1 B_2 ...
/// (whitespace or comma separated, '#' starts a comment).
inline MaMindaKernel parse_kernel(const std::string& spec, std::size_t order = kDefaultOrder) {
  constexpr std::string_view prefix = "convex-order:";
  if (spec.rfind(prefix, 0) == 0)
    return convex_order_kernel(parse_double(std::string_view(spec).substr(prefix.size()), "--phi"), order);
  std::ifstream in(spec);
  if (!in) throw precondition_error("--phi: expected convex-order:<alpha> or a readable coefficient file: " + spec);
  std::vector<double> b;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream words(line);
    std::string w;
    while (words >> w) b.push_back(parse_double(w, "--phi file"));
  }
  if (b.empty()) throw precondition_error("--phi file: no coefficients in " + spec);
  return polynomial_kernel(std::move(b), order);
}

inline ZetaMode parse_zeta_mode(const std::string& s) {
  if (s == "interior") return ZetaMode::interior;
  if (s == "boundary") return ZetaMode::boundary;
  if (s == "real") return ZetaMode::real_interior;
  throw precondition_error("--zeta-mode: expected interior, boundary or real");
}

namespace detail {

inline std::string render(const Table& t, const std::string& format, const std::string& command) {
  if (format == "csv") return to_csv(t);
  if (format == "json") {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["rows"] = to_json(t);
    return j.dump(2) + "\n";
  }
  throw precondition_error("--format: expected csv or json");
}

inline void check_format(const std::string& format) {
  if (format != "csv" && format != "json") throw precondition_error("--format: expected csv or json");
}

inline double require(const std::optional<double>& v, const char* flag) {
  if (!v) throw precondition_error(std::string(flag) + " is required");
  return *v;
}

inline int class_n(const CommandOptions& o) {
  const int n = o.n.value_or(1);
  if (n < 1) throw precondition_error("--n must be a positive integer");
  return n;
}

/// Table convention: zeta = 1/(2n) unless given.
inline double zeta_or_default(const CommandOptions& o, int n) { return o.zeta.value_or(1.0 / (2.0 * n)); }

inline Cell optional_cell(const std::optional<double>& v) {
  if (!v) return Cell{"", nullptr};
  return Cell::sig(*v);
}

}  // namespace detail

/// Maps library exceptions onto exit codes.
inline CommandResult run_guarded(const std::function<CommandResult()>& body) {
  try {
    return body();
  } catch (const precondition_error& e) {
    return {kExitUsage, "", std::string("error: ") + e.what() + "\n"};
  } catch (const bracket_error& e) {
    return {kExitNumeric, "", std::string("numeric failure: ") + e.what() + "\n"};
  } catch (const accuracy_error& e) {
    return {kExitNumeric, "", std::string("numeric failure: ") + e.what() + "\n"};
  } catch (const convergence_error& e) {
    return {kExitNumeric, "", std::string("numeric failure: ") + e.what() + "\n"};
  } catch (const domain_error& e) {
    return {kExitUsage, "", std::string("error: ") + e.what() + "\n"};
  } catch (const error& e) {
    return {kExitNumeric, "", std::string("error: ") + e.what() + "\n"};
  }
}

inline const std::vector<int>& default_table_rows() {
  static const std::vector<int> rows{1, 2, 3, 4, 5, 10, 100, 1000};
  return rows;
}

inline CommandResult cmd_tables(const CommandOptions& o) {
  return run_guarded([&] {
    detail::check_format(o.format);
    const double alpha = o.alpha.value_or(0.5);
    const double tol = o.tol.value_or(1e-10);
    const auto& ns = o.n_list.empty() ? default_table_rows() : o.n_list;
    Table t{{"alpha", "zeta", "n", "r_f", "residual", "iterations"}, {}};
    for (int n : ns) {
      if (n < 1) throw precondition_error("--n must be a positive integer");
      const double zeta = detail::zeta_or_default(o, n);
      const auto res = bohr_radius_mzn(alpha, zeta, n, tol);
      t.add({Cell::sig(alpha), Cell::sig(zeta), Cell::integer(n), Cell::fixed(res.root), Cell::sig(res.residual, 3),
             Cell::integer(res.iterations)});
    }
    return CommandResult{kExitOk, detail::render(t, o.format, "tables"), ""};
  });
}

inline CommandResult cmd_figure(const CommandOptions& o) {
  return run_guarded([&] {
    detail::check_format(o.format);
    const double alpha = o.alpha.value_or(0.5);
    if (!(o.step > 0.0 && o.step <= 0.01)) throw precondition_error("--step must lie in (0, 0.01]");
    const std::vector<int> ns = o.n_list.empty() ? std::vector<int>{1, 2, 3, 4, 5} : o.n_list;
    std::vector<double> grid;
    for (long k = 0;; ++k) {
      const double r = static_cast<double>(k) * o.step;
      if (r > 0.999 + 1e-12) break;
      grid.push_back(std::min(r, 0.999));
    }
    Table t{{"n", "r", "F"}, {}};
    for (const auto& row : figure_data(alpha, ns, grid))
      t.add({Cell::integer(row.n), Cell::sig(row.r), Cell::sig(row.value)});
    return CommandResult{kExitOk, detail::render(t, o.format, "figure-data"), ""};
  });
}

inline CommandResult cmd_bohr(const CommandOptions& o) {
  return run_guarded([&] {
    detail::check_format(o.format);
    const int n = detail::class_n(o);
    const double zeta = detail::zeta_or_default(o, n);
    const double tol = o.tol.value_or(1e-10);
    if (o.phi && o.alpha) throw precondition_error("--alpha and --phi are mutually exclusive");

    RadiusResult res;
    std::string kernel_name = "none";
    std::optional<double> alpha = o.alpha;
    if (o.method == "sharp") {
      if (o.phi) {
        const auto kernel = parse_kernel(*o.phi);
        kernel_name = *o.phi;
        res = bohr_radius_growth(kernel, zeta, n, tol);
      } else {
        res = bohr_radius_mzn(detail::require(o.alpha, "--alpha"), zeta, n, tol);
      }
    } else if (o.method == "hcphi" || o.method == "improved") {
      const std::string spec = o.phi ? *o.phi : "convex-order:" + format_sig(detail::require(o.alpha, "--alpha"), 17);
      const auto kernel = parse_kernel(spec);
      kernel_name = spec;
      res = o.method == "hcphi" ? bohr_radius_hcphi(kernel, zeta, n, tol) : improved_bohr_radius(kernel, zeta, n, tol);
    } else {
      throw precondition_error("--method: expected sharp, hcphi or improved");
    }

    Table t{{"method", "kernel", "alpha", "zeta", "n", "r_f", "root", "radius", "capped", "boundary", "residual",
             "iterations"},
            {}};
    t.add({Cell::str(o.method), Cell::str(kernel_name), detail::optional_cell(alpha), Cell::sig(zeta),
           Cell::integer(n), Cell::fixed(res.root), Cell::sig(res.root), Cell::sig(res.radius),
           Cell::boolean(res.capped), Cell::boolean(res.boundary), Cell::sig(res.residual, 3),
           Cell::integer(res.iterations)});
    return CommandResult{kExitOk, detail::render(t, o.format, "bohr-radius"), ""};
  });
}

inline CommandResult cmd_growth(const CommandOptions& o) {
  return run_guarded([&] {
    detail::check_format(o.format);
    const int n = detail::class_n(o);
    const double zeta = detail::zeta_or_default(o, n);
    const double r = detail::require(o.r, "--r");
    if (o.phi && o.alpha) throw precondition_error("--alpha and --phi are mutually exclusive");
    if (o.phi) {
      const auto kernel = parse_kernel(*o.phi);
      const auto p = growth_LR(r, zeta, n, kernel);
      Table t{{"kernel", "zeta", "n", "r", "L", "R"}, {}};
      t.add({Cell::str(*o.phi), Cell::sig(zeta), Cell::integer(n), Cell::sig(r), Cell::sig(p.lower),
             Cell::sig(p.upper)});
      return CommandResult{kExitOk, detail::render(t, o.format, "growth"), ""};
    }
    const double alpha = detail::require(o.alpha, "--alpha");
    Table t{{"alpha", "zeta", "n", "r", "phi", "psi"}, {}};
    t.add({Cell::sig(alpha), Cell::sig(zeta), Cell::integer(n), Cell::sig(r),
           Cell::sig(growth_phi(r, alpha, zeta, n)), Cell::sig(growth_psi(r, alpha, zeta, n))});
    return CommandResult{kExitOk, detail::render(t, o.format, "growth"), ""};
  });
}

inline CommandResult cmd_toeplitz_bound(const CommandOptions& o) {
  return run_guarded([&] {
    detail::check_format(o.format);
    const double alpha = detail::require(o.alpha, "--alpha");
    std::string which = o.which;
    int n = o.n.value_or(which == "T2n" || which == "T22" ? 2 : 1);
    if (n < 1) throw precondition_error("--n must be a positive integer");
    const double zeta = detail::zeta_or_default(o, n);

    double bound = 0.0;
    std::optional<BoundId> id;
    if (which == "T22") {
      bound = bound_T22_corollary(alpha);
      id = BoundId::T2n_h;
      n = 2;
    } else {
      const std::string canonical = (which == "T2n" || which == "T31" || which == "T32") ? which + "_h" : which;
      id = parse_bound_id(canonical);
      if (!id) throw precondition_error("--which: expected T2n, T2n_g, T22, T31, T31_g, T32 or T32_g");
      bound = bound_value(*id, alpha, zeta, n);
    }

    std::vector<std::string> header{"which", "alpha", "zeta", "n", "bound"};
    std::vector<Cell> row{Cell::str(which), Cell::sig(alpha), Cell::sig(zeta), Cell::integer(n), Cell::sig(bound)};
    if (o.scan) {
      const auto s = sharpness_scan(alpha, zeta, n, *id, o.grid);
      header.insert(header.end(), {"supremum", "argmax_angle", "relative_gap"});
      const double gap = bound > 0.0 ? (bound - s.supremum) / bound : 0.0;
      row.insert(row.end(), {Cell::sig(s.supremum), Cell::sig(s.argmax_angle), Cell::sig(gap)});
    }
    Table t{header, {}};
    t.add(std::move(row));
    return CommandResult{kExitOk, detail::render(t, o.format, "toeplitz-bound"), ""};
  });
}

/// Determinant for a sampled member (--seed) or the rotation extremal (--delta angle).
inline CommandResult cmd_toeplitz_det(const CommandOptions& o) {
  return run_guarded([&] {
    detail::check_format(o.format);
    const double alpha = detail::require(o.alpha, "--alpha");
    const int n = detail::class_n(o);
    const int index = o.index.value_or(n);
    ToeplitzSpec spec{index, o.q, o.target == "g" ? ToeplitzTarget::coanalytic : ToeplitzTarget::analytic};
    if (o.target != "h" && o.target != "g") throw precondition_error("--target: expected h or g");
    spec.validate();
    const std::size_t order = std::max<std::size_t>(kDefaultOrder, static_cast<std::size_t>(index + o.q));
    std::optional<HarmonicMapping> f;
    if (o.seed) {
      if (o.zeta) throw precondition_error("--zeta is drawn from --seed; omit it");
      f.emplace(sample_mzn(*o.seed, alpha, n, parse_zeta_mode(o.zeta_mode), order));
    } else {
      f.emplace(extremal_mzn(alpha, detail::zeta_or_default(o, n), n, std::polar(1.0, o.delta_angle), order));
    }
    const complex d = toeplitz_det(*f, spec);
    const complex zeta = f->params().zeta;
    Table t{{"target", "index", "q", "alpha", "zeta_re", "zeta_im", "n", "det_re", "det_im", "abs"}, {}};
    t.add({Cell::str(o.target), Cell::integer(index), Cell::integer(o.q), Cell::sig(alpha), Cell::sig(zeta.real()),
           Cell::sig(zeta.imag()), Cell::integer(n), Cell::sig(d.real()), Cell::sig(d.imag()),
           Cell::sig(std::abs(d))});
    return CommandResult{kExitOk, detail::render(t, o.format, "toeplitz-det"), ""};
  });
}

/// Area bounds for the kernel (--phi, else convex-order:alpha) and, with --alpha,
/// the exact area of a sampled member (--seed) or the delta = 1 extremal.
inline CommandResult cmd_area(const CommandOptions& o) {
  return run_guarded([&] {
    detail::check_format(o.format);
    const int n = detail::class_n(o);
    const double zeta = detail::zeta_or_default(o, n);
    const double r = detail::require(o.r, "--r");
    if (o.phi && o.alpha) throw precondition_error("--alpha and --phi are mutually exclusive");
    if (o.phi) {
      const auto bounds = area_bounds(r, zeta, n, parse_kernel(*o.phi));
      Table t{{"kernel", "zeta", "n", "r", "lower", "upper"}, {}};
      t.add({Cell::str(*o.phi), Cell::sig(zeta), Cell::integer(n), Cell::sig(r), Cell::sig(bounds.lower),
             Cell::sig(bounds.upper)});
      return CommandResult{kExitOk, detail::render(t, o.format, "area"), ""};
    }
    const double alpha = detail::require(o.alpha, "--alpha");
    const auto f = o.seed ? sample_mzn(*o.seed, alpha, n, parse_zeta_mode(o.zeta_mode), kGrowthOrder)
                          : extremal_mzn(alpha, zeta, n, 1.0, kGrowthOrder);
    const double zabs = std::abs(f.params().zeta);
    const auto bounds = area_bounds(r, zabs, n, convex_order_kernel(alpha, 8));
    const auto exact = area_exact(f, r);
    Table t{{"alpha", "zeta_abs", "n", "r", "lower", "exact", "upper", "tail"}, {}};
    t.add({Cell::sig(alpha), Cell::sig(zabs), Cell::integer(n), Cell::sig(r), Cell::sig(bounds.lower),
           Cell::sig(exact.value.real()), Cell::sig(bounds.upper), Cell::sig(exact.tail, 3)});
    return CommandResult{kExitOk, detail::render(t, o.format, "area"), ""};
  });
}

inline CommandResult cmd_fuzz(const CommandOptions& o) {
  return run_guarded([&] {
    detail::check_format(o.format);
    CampaignConfig cfg;
    if (o.seed) cfg.seed = *o.seed;
    cfg.samples = o.samples;
    if (o.alpha) cfg.alpha_grid = {*o.alpha};
    if (!o.n_list.empty()) cfg.n_list = o.n_list;
    else if (o.n) cfg.n_list = {*o.n};
    cfg.zeta_mode = parse_zeta_mode(o.zeta_mode);
    if (o.tol) cfg.slack = *o.tol;
    const auto report = run_campaign(cfg);

    std::string out;
    if (o.format == "json") {
      out = report_json(report).dump(2) + "\n";
    } else {
      Table t{{"property", "pass", "checks", "violations", "worst_margin", "first_violation_seed"}, {}};
      for (std::size_t p = 0; p < kPropertyCount; ++p) {
        const auto& s = report.properties[p];
        t.add({Cell::str(property_name(static_cast<Property>(p))), Cell::boolean(s.pass()),
               Cell::integer(static_cast<long long>(s.checks)), Cell::integer(static_cast<long long>(s.violations)),
               s.checks ? Cell::sig(s.worst_margin, 6) : Cell{"", nullptr},
               s.first_violation ? Cell::str(std::to_string(s.first_violation->sample.seed)) : Cell{"", nullptr}});
      }
      out = to_csv(t);
    }
    std::string err;
    if (report.errors) err = "numeric errors in " + std::to_string(report.errors) + " samples; first: " +
                             report.first_error.value_or("") + "\n";
    int code = kExitOk;
    if (!report.pass()) {
      code = kExitViolation;
      for (std::size_t p = 0; p < kPropertyCount; ++p) {
        const auto& s = report.properties[p];
        if (s.first_violation)
          err += std::string("violation: ") + property_name(static_cast<Property>(p)) +
                 " reproducer seed=" + std::to_string(s.first_violation->sample.seed) +
                 " (sample " + std::to_string(s.first_violation->sample.index) + ")\n";
      }
    }
    return CommandResult{code, out, err};
  });
}

}  // namespace hbk
