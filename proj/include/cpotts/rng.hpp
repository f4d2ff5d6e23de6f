#pragma once

#include <cstdint>
#include <random>

namespace cpotts {

/// SplitMix64 finaliser, used to derive independent seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ splitmix64(b + 0x632be59bd9b4e019ULL));
}

/// Reproducible random stream owned by one chain.
///
/// The engine is mt19937_64, whose output sequence is fixed by the standard,
/// and every derived variate is computed here rather than through the
/// implementation-defined <random> distributions, so a (seed, stream_id) pair
/// reproduces the same draws on every platform.
class RngStream {
 public:
  RngStream(std::uint64_t seed = 0, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id), engine_(mix_seed(seed, stream_id)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [0,hi).
  double uniform(double hi) {
    double u = uniform() * hi;
    return u < hi ? u : 0.0;
  }

  /// Uniform integer in [0,n), n >= 1 (Lemire's method with rejection).
  std::uint64_t below(std::uint64_t n);

  /// Poisson(mean) by sequential inversion, split into chunks of mean at most
  /// 256 so exp(-mean) never underflows.
  std::uint64_t poisson(double mean);

  bool bernoulli(double p) { return p >= 1.0 || (p > 0.0 && uniform() < p); }

 private:
  std::uint64_t poisson_chunk(double mean);

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace cpotts
