#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace biblio {

// std::mt19937_64 output is fixed by the standard, but the std:: distributions
// are not; these helpers keep seeded results identical across toolchains.

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound), bound > 0.
inline std::uint64_t draw_below(std::uint64_t bound, Rng& rng) {
  // Rejection sampling on the top of the range removes modulo bias.
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound);
  std::uint64_t r = rng();
  while (r >= limit) r = rng();
  return r % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double draw_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline bool draw_bernoulli(double p, Rng& rng) { return draw_unit(rng) < p; }

template <typename T>
void seeded_shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    auto j = static_cast<std::size_t>(draw_below(i, rng));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace biblio
