#include "cpotts/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cpotts {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class PosOf>
std::optional<double> percolation_radius_impl(const ClusterPartition& partition, std::size_t n,
                                              PosOf pos_of, double L) {
  if (L < kMinPercolationBox) return std::nullopt;
  std::vector<char> touches(n, 0);
  bool any = false;
  for (ParticleId i = 0; i < n; ++i) {
    if (in_reference_set(pos_of(i), L)) {
      touches[partition.root_of(i)] = 1;
      any = true;
    }
  }
  if (!any) return 0.0;

  double min_x = L, max_x = 0.0, min_y = L, max_y = 0.0;
  for (ParticleId r = 0; r < n; ++r) {
    if (!touches[r]) continue;
    const auto& c = partition.corners(r);
    min_x = std::min(min_x, c.min_x);
    max_x = std::max(max_x, c.max_x);
    min_y = std::min(min_y, c.min_y);
    max_y = std::max(max_y, c.max_y);
  }
  const double half = 0.5 * L;
  return std::max({half - min_x - 1.0, max_x - half - 1.0, half - min_y - 1.0,
                   max_y - half - 1.0, 0.0});
}

}  // namespace

double density(std::size_t n_particles, double L) {
  return static_cast<double>(n_particles) / (L * L);
}

double density(const ColoredConfiguration& config) { return density(config.size(), config.L); }

double largest_cluster_fraction(const ClusterPartition& partition) {
  if (partition.size() == 0) return 0.0;
  const auto sizes = partition.cluster_sizes();
  const auto largest = *std::max_element(sizes.begin(), sizes.end());
  return static_cast<double>(largest) / static_cast<double>(partition.size());
}

bool in_reference_set(const Position& x, double L) {
  const double c = 0.5 * L;
  const double dx = std::max(0.0, std::fabs(x.x - c) - 1.5);
  const double dy = std::max(0.0, std::fabs(x.y - c) - 1.5);
  return dx * dx + dy * dy <= 0.25;
}

std::optional<double> percolation_radius(const ClusterPartition& partition,
                                         std::span<const Position> positions, double L) {
  return percolation_radius_impl(
      partition, positions.size(), [&](ParticleId i) -> const Position& { return positions[i]; },
      L);
}

std::optional<double> percolation_radius(const ClusterPartition& partition,
                                         std::span<const Particle> particles, double L) {
  return percolation_radius_impl(
      partition, particles.size(),
      [&](ParticleId i) -> const Position& { return particles[i].pos; }, L);
}

std::array<double, kHistogramBins> cluster_size_histogram(const ClusterPartition& partition) {
  const std::size_t n = partition.size();
  if (n == 0) throw std::domain_error("cluster histogram of an empty configuration");
  std::array<std::uint64_t, kHistogramBins> mass{};
  for (auto s : partition.cluster_sizes()) {
    // floor(100 s / N) in exact integer arithmetic; s = N falls in the last bin
    const auto bin = std::min<std::uint64_t>(100ULL * s / n, kHistogramBins - 1);
    mass[bin] += s;
  }
  std::array<double, kHistogramBins> out{};
  for (std::size_t k = 0; k < kHistogramBins; ++k)
    out[k] = static_cast<double>(mass[k]) / static_cast<double>(n);
  return out;
}

std::array<double, kSmallClusterSizes> small_cluster_distribution(
    const ClusterPartition& partition) {
  std::array<double, kSmallClusterSizes> out{};
  const std::size_t n = partition.size();
  if (n == 0) return out;
  for (auto s : partition.cluster_sizes())
    if (s >= 1 && s <= kSmallClusterSizes) out[s - 1] += static_cast<double>(s);
  for (auto& v : out) v /= static_cast<double>(n);
  return out;
}

SweepRecord measure(const ClusterPartition& partition, std::span<const Particle> particles,
                    double L, std::uint64_t sweep) {
  SweepRecord r;
  r.sweep = sweep;
  r.N = particles.size();
  r.rho = density(r.N, L);
  r.gamma = largest_cluster_fraction(partition);
  r.dperc = percolation_radius(partition, particles, L).value_or(kNaN);
  return r;
}

SweepRecord measure(const ClusterPartition& partition, std::span<const Position> points, double L,
                    std::uint64_t sweep) {
  SweepRecord r;
  r.sweep = sweep;
  r.N = points.size();
  r.rho = density(r.N, L);
  r.gamma = largest_cluster_fraction(partition);
  r.dperc = percolation_radius(partition, points, L).value_or(kNaN);
  return r;
}

double sample_variance(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 2) return kNaN;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(n - 1);
}

BlockingResult blocking_stats(std::span<const double> series, std::size_t blocks) {
  if (blocks < 2) throw std::invalid_argument("blocking needs at least two blocks");
  BlockingResult r;
  const std::size_t block_len = series.size() / blocks;
  r.used = block_len * blocks;
  r.truncated = r.used != series.size();
  if (block_len == 0) {
    r.error = kNaN;
    r.mean = kNaN;
    return r;
  }
  std::vector<double> means(blocks, 0.0);
  for (std::size_t k = 0; k < blocks; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < block_len; ++i) s += series[k * block_len + i];
    means[k] = s / static_cast<double>(block_len);
  }
  double total = 0.0;
  for (double m : means) total += m;
  r.mean = total / static_cast<double>(blocks);
  r.error = std::sqrt(sample_variance(means) / static_cast<double>(blocks));
  return r;
}

SlopeEstimate slope_estimator(std::span<const double> rho, double z, double L) {
  if (rho.size() < 2) throw std::invalid_argument("slope estimator needs at least two samples");
  const double scale = L * L / z;
  SlopeEstimate s;
  s.value = scale * sample_variance(rho);

  constexpr std::size_t kBlocks = 10;
  const std::size_t block_len = rho.size() / kBlocks;
  if (block_len < 2) {
    s.error = kNaN;
    return s;
  }
  std::vector<double> block_vars(kBlocks);
  for (std::size_t k = 0; k < kBlocks; ++k)
    block_vars[k] = scale * sample_variance(rho.subspan(k * block_len, block_len));
  s.error = std::sqrt(sample_variance(block_vars) / static_cast<double>(kBlocks));
  return s;
}

void HistogramAccumulator::add(const ClusterPartition& partition) {
  if (partition.size() == 0) return;
  const auto h = cluster_size_histogram(partition);
  const auto s = small_cluster_distribution(partition);
  for (std::size_t k = 0; k < kHistogramBins; ++k) hist_[k] += h[k];
  for (std::size_t k = 0; k < kSmallClusterSizes; ++k) small_[k] += s[k];
  ++samples_;
}

std::array<double, kHistogramBins> HistogramAccumulator::histogram() const {
  auto out = hist_;
  if (samples_ > 0)
    for (auto& v : out) v /= static_cast<double>(samples_);
  return out;
}

std::array<double, kSmallClusterSizes> HistogramAccumulator::small_clusters() const {
  auto out = small_;
  if (samples_ > 0)
    for (auto& v : out) v /= static_cast<double>(samples_);
  return out;
}

}  // namespace cpotts
