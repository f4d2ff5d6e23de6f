#include "cpotts/rng.hpp"

#include <cmath>

namespace cpotts {

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
    if (static_cast<std::uint64_t>(m) >= threshold) return static_cast<std::uint64_t>(m >> 64);
  }
}

std::uint64_t RngStream::poisson_chunk(double mean) {
  const double u = uniform();
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  // the cdf can stall just below 1 in floating point; the cap is far out in
  // the tail (> 20 sigma) so it never binds in practice
  const double cap = mean + 20.0 * std::sqrt(mean) + 50.0;
  while (u >= cdf && static_cast<double>(k) < cap) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

std::uint64_t RngStream::poisson(double mean) {
  constexpr double kChunk = 64.0;
  if (!(mean > 0.0)) return 0;
  std::uint64_t total = 0;
  while (mean > kChunk) {
    total += poisson_chunk(kChunk);
    mean -= kChunk;
  }
  return total + poisson_chunk(mean);
}

}  // namespace cpotts
