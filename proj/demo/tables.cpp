// Bohr radii r_f of M(alpha, 1/(2n), n) for alpha = 0.5 and 0.9.

#include <cstdio>

#include "hbk/bohr.hpp"

int main() {
  const int rows[] = {1, 2, 3, 4, 5, 10, 100, 1000};
  for (double alpha : {0.5, 0.9}) {
    std::printf("alpha = %.1f\n   n      zeta        r_f\n", alpha);
    for (int n : rows) {
      const double zeta = 1.0 / (2.0 * n);
      const auto res = hbk::bohr_radius_mzn(alpha, zeta, n);
      std::printf("%4d  %-10.6g  %.6f\n", n, zeta, res.root);
    }
    std::printf("\n");
  }
  // alpha -> 1: K(z) = z, root of r + r^2/4 = 3/4
  const auto limit = hbk::bohr_radius_growth(hbk::convex_order_kernel(1.0), 0.5, 1);
  std::printf("alpha -> 1, zeta = 1/2, n = 1: r_f = %.6f\n", limit.root);
}
