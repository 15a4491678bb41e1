// Prints the exact equilibrium slope for triangle-distributed values and the
// n + 4 > 2k bounds around it.

#include "kthprice/kthprice.hpp"

#include <cstdio>

int main()
{
  using namespace kthprice;
  std::printf("%4s %4s %14s %12s %12s %12s\n", "n", "k", "slope", "decimal", "lower", "upper");
  for (int n = 3; n <= 10; ++n) {
    for (int k = 3; k <= n; ++k) {
      const BigRational slope = triangle_slope(n, k);
      if (n + 4 > 2 * k) {
        const auto [lo, hi] = bid_bound_slopes(n, k);
        std::printf("%4d %4d %14s %12.8f %12.8f %12.8f\n", n, k, to_string(slope).c_str(), to_double(slope),
                    to_double(lo), to_double(hi));
      } else {
        std::printf("%4d %4d %14s %12.8f %12s %12s\n", n, k, to_string(slope).c_str(), to_double(slope), "-", "-");
      }
    }
  }
  return 0;
}
