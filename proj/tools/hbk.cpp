#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hbk/commands.hpp"

namespace {

struct Shared {
  hbk::CommandOptions opt;
  std::optional<std::string> out;
  std::vector<int> n_list;
};

void add_common(CLI::App* cmd, Shared& s) {
  cmd->add_option("--format", s.opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", s.out, "Write output to this path instead of stdout");
}

void add_class(CLI::App* cmd, Shared& s, bool list_n) {
  cmd->add_option("--alpha", s.opt.alpha, "Order alpha");
  cmd->add_option("--zeta", s.opt.zeta, "|zeta|; defaults to 1/(2n)");
  if (list_n)
    cmd->add_option("--n", s.n_list, "Dilatation exponents (comma separated)")->delimiter(',');
  else
    cmd->add_option("--n", s.opt.n, "Dilatation exponent n");
}

int emit(const hbk::CommandResult& res, const std::optional<std::string>& out) {
  if (!res.err.empty()) std::cerr << res.err;
  if (res.out.empty()) return res.exit_code;
  if (out) {
    std::ofstream f(*out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open " << *out << " for writing\n";
      return hbk::kExitUsage;
    }
    f << res.out;
  } else {
    std::fwrite(res.out.data(), 1, res.out.size(), stdout);
  }
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coefficient, Toeplitz, growth and Bohr-radius computations for close-to-convex harmonic mappings"};
  app.require_subcommand(1);
  Shared s;

  auto* tables = app.add_subcommand("tables", "Bohr radii r_f for the table rows");
  add_class(tables, s, true);
  tables->add_option("--tol", s.opt.tol, "Root bracket width");
  add_common(tables, s);

  auto* figure = app.add_subcommand("figure-data", "F_n(r) on a grid, long format n,r,F");
  add_class(figure, s, true);
  figure->add_option("--step", s.opt.step, "Grid step in (0, 0.01]");
  add_common(figure, s);

  auto* bohr = app.add_subcommand("bohr-radius", "Bohr radius for one parameter set");
  add_class(bohr, s, false);
  bohr->add_option("--phi", s.opt.phi, "Kernel: convex-order:<alpha> or a coefficient file");
  bohr->add_option("--method", s.opt.method, "sharp, hcphi or improved")
      ->check(CLI::IsMember({"sharp", "hcphi", "improved"}));
  bohr->add_option("--tol", s.opt.tol, "Root bracket width");
  add_common(bohr, s);

  auto* growth = app.add_subcommand("growth", "Growth envelopes at radius r");
  add_class(growth, s, false);
  growth->add_option("--r", s.opt.r, "Radius")->required();
  growth->add_option("--phi", s.opt.phi, "Kernel: convex-order:<alpha> or a coefficient file");
  add_common(growth, s);

  auto* tbound = app.add_subcommand("toeplitz-bound", "Closed-form Toeplitz determinant bounds");
  add_class(tbound, s, false);
  tbound->add_option("--which", s.opt.which, "T2n, T2n_g, T22, T31, T31_g, T32 or T32_g")->required();
  tbound->add_flag("--scan", s.opt.scan, "Also scan the rotation extremals for the supremum");
  tbound->add_option("--grid", s.opt.grid, "Scan grid size");
  add_common(tbound, s);

  auto* tdet = app.add_subcommand("toeplitz-det", "Toeplitz determinant of a sampled or extremal mapping");
  add_class(tdet, s, false);
  tdet->add_option("--index", s.opt.index, "Starting coefficient index; defaults to n");
  tdet->add_option("--q", s.opt.q, "Matrix size");
  tdet->add_option("--target", s.opt.target, "h or g")->check(CLI::IsMember({"h", "g"}));
  tdet->add_option("--seed", s.opt.seed, "Sample seed; omit for the rotation extremal");
  tdet->add_option("--delta", s.opt.delta_angle, "Rotation angle of the extremal");
  tdet->add_option("--zeta-mode", s.opt.zeta_mode, "interior, boundary or real");
  add_common(tdet, s);

  auto* area = app.add_subcommand("area", "Area bounds and exact area");
  add_class(area, s, false);
  area->add_option("--r", s.opt.r, "Radius")->required();
  area->add_option("--phi", s.opt.phi, "Kernel: convex-order:<alpha> or a coefficient file");
  area->add_option("--seed", s.opt.seed, "Sample seed; omit for the extremal");
  area->add_option("--zeta-mode", s.opt.zeta_mode, "interior, boundary or real");
  add_common(area, s);

  auto* fuzz = app.add_subcommand("fuzz", "Seeded property campaign");
  fuzz->add_option("--alpha", s.opt.alpha, "Restrict the alpha grid to one value");
  fuzz->add_option("--n", s.n_list, "n grid (comma separated)")->delimiter(',');
  fuzz->add_option("--seed", s.opt.seed, "Campaign seed");
  fuzz->add_option("--samples", s.opt.samples, "Number of samples");
  fuzz->add_option("--tol", s.opt.tol, "Slack for every inequality");
  fuzz->add_option("--zeta-mode", s.opt.zeta_mode, "interior, boundary or real");
  s.opt.format = "csv";
  add_common(fuzz, s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return hbk::kExitUsage;
  }

  s.opt.n_list = s.n_list;
  if (fuzz->parsed() && !fuzz->count("--format")) s.opt.format = "json";

  hbk::CommandResult res;
  if (tables->parsed()) res = hbk::cmd_tables(s.opt);
  else if (figure->parsed()) res = hbk::cmd_figure(s.opt);
  else if (bohr->parsed()) res = hbk::cmd_bohr(s.opt);
  else if (growth->parsed()) res = hbk::cmd_growth(s.opt);
  else if (tbound->parsed()) res = hbk::cmd_toeplitz_bound(s.opt);
  else if (tdet->parsed()) res = hbk::cmd_toeplitz_det(s.opt);
  else if (area->parsed()) res = hbk::cmd_area(s.opt);
  else if (fuzz->parsed()) res = hbk::cmd_fuzz(s.opt);
  return emit(res, s.out);
}
