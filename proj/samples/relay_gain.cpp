// Two-way exchange through a relay, with and without XOR coding at the relay.

#include <cstdio>

#include "wnc/io.hpp"
#include "wnc/mmf.hpp"

int main() {
  const auto plain = wnc::canonical_relay_instance(false);
  const auto coded = wnc::canonical_relay_instance(true);

  const auto without = wnc::solve_mmf(plain.network, plain.commodities, wnc::Mode::plain);
  const auto with = wnc::solve_mmf(coded.network, coded.commodities, wnc::Mode::coding);

  std::printf("throughput without coding: %.6f\n", without.throughput);
  std::printf("throughput with coding:    %.6f\n", with.throughput);
  std::printf("gain:                      %.6f\n", with.throughput / without.throughput);

  std::printf("coded schedule:\n");
  for (const auto& w : with.schedule) {
    std::printf("  %.6f  links", w.lambda);
    for (int a : with.catalog.sublink_sets[w.set]) std::printf(" %d", a + 1);
    std::printf("\n");
  }
}
