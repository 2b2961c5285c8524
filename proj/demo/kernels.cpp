// Bohr radii of HC(phi) with and without the area term.

#include <cstdio>
#include <string>
#include <vector>

#include "hbk/bohr.hpp"
#include "hbk/kernel.hpp"

int main() {
  struct Case {
    std::string label;
    hbk::MaMindaKernel kernel;
  };
  std::vector<Case> cases;
  cases.push_back({"(1+z)/(1-z)", hbk::convex_order_kernel(0.0)});
  cases.push_back({"1/(1-z)", hbk::convex_order_kernel(0.5)});
  cases.push_back({"1+z", hbk::polynomial_kernel({1.0})});
  cases.push_back({"1+z+z^2/2", hbk::polynomial_kernel({1.0, 0.5})});

  std::printf("%-14s %5s %3s %10s %10s %10s\n", "phi", "zeta", "n", "r_f", "radius", "improved");
  for (const auto& c : cases) {
    for (int n : {1, 2}) {
      const double zeta = 1.0 / (2.0 * n);
      const auto plain = hbk::bohr_radius_hcphi(c.kernel, zeta, n);
      const auto area = hbk::improved_bohr_radius(c.kernel, zeta, n);
      std::printf("%-14s %5.3f %3d %10.6f %10.6f %10.6f%s\n", c.label.c_str(), zeta, n, plain.root, plain.radius,
                  area.radius, plain.capped ? "  (capped at 1/3)" : "");
    }
  }
}
