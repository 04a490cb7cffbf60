// Draw one random 2-out digraph and print its layer sizes next to the
// limiting fractions.
#include <cstdio>

#include "kout/kout.hpp"

int main() {
  const std::size_t n = 100000;
  const auto c = kout::derive_constants(2);
  const auto g = kout::generate(n, 2, kout::RngSpec{2024, 0});
  const auto d = kout::decompose(g);
  const auto lay = kout::layers(d);
  const auto out = kout::analyze_outside(g, d);

  std::printf("n = %zu, k = 2, tau = %.12f\n", n, c.tau);
  std::printf("|G| = %zu (nu n = %.1f)\n", lay.giant_size, c.nu * n);
  std::printf("|Q| - |G| = %zu, n - |Q| = %zu\n", lay.middle_size, lay.outer_size);
  std::printf("cycles outside G = %zu (limit mean %.4f)\n", out.total_cycles, c.cycle_mean_total);
  std::printf("max spectrum outside G = %zu (%.3f log n)\n", out.max_spectrum, out.max_spectrum / std::log(double(n)));
  std::printf("D = %zu, M = %zu, W = %zu\n", out.D, out.M, out.W);
}
