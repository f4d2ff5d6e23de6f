#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cpotts/cluster_graph.hpp"
#include "cpotts/model.hpp"

namespace cpotts {

/// Observables of one measured sweep.
struct SweepRecord {
  std::uint64_t sweep = 0;
  std::size_t N = 0;
  double rho = 0.0;
  double gamma = 0.0;
  /// NaN when the box is too small for the reference set (L < 8).
  double dperc = 0.0;
};

inline constexpr std::size_t kHistogramBins = 100;
inline constexpr std::size_t kSmallClusterSizes = 100;
/// Smallest box that holds the central reference set.
inline constexpr double kMinPercolationBox = 8.0;

double density(std::size_t n_particles, double L);
double density(const ColoredConfiguration& config);

/// Largest cluster size over N; 0 for an empty partition.
double largest_cluster_fraction(const ClusterPartition& partition);

/// Membership in S0: points within 1/2 of the centred square of half-side 3/2.
bool in_reference_set(const Position& x, double L);

/// Percolation radius from the raw corners of clusters meeting S0, or nullopt
/// when L < 8. Zero when no cluster meets S0.
std::optional<double> percolation_radius(const ClusterPartition& partition,
                                         std::span<const Position> positions, double L);
std::optional<double> percolation_radius(const ClusterPartition& partition,
                                         std::span<const Particle> particles, double L);

/// Mass of particles in clusters of relative size in [k-1,k)/100 (last bin
/// closed). Requires at least one particle.
std::array<double, kHistogramBins> cluster_size_histogram(const ClusterPartition& partition);

/// Entry s-1 holds s * #{clusters of size s} / N for s = 1..100.
std::array<double, kSmallClusterSizes> small_cluster_distribution(
    const ClusterPartition& partition);

SweepRecord measure(const ClusterPartition& partition, std::span<const Particle> particles,
                    double L, std::uint64_t sweep);
SweepRecord measure(const ClusterPartition& partition, std::span<const Position> points, double L,
                    std::uint64_t sweep);

struct BlockingResult {
  double mean = 0.0;
  double error = 0.0;
  std::size_t used = 0;
  bool truncated = false;
};

/// Mean and error from the sample variance of `blocks` contiguous block means:
/// stderr = sqrt(S^2 / blocks). A series whose length is not a multiple of
/// `blocks` is truncated at the end and flagged.
BlockingResult blocking_stats(std::span<const double> series, std::size_t blocks = 10);

struct SlopeEstimate {
  double value = 0.0;
  double error = 0.0;
};

/// (L^2/z) times the unbiased sample variance of the density series, with an
/// error from the ten block-wise sample variances.
SlopeEstimate slope_estimator(std::span<const double> rho, double z, double L);

double sample_variance(std::span<const double> xs);

/// Running averages of the cluster histograms over measured sweeps.
class HistogramAccumulator {
 public:
  void add(const ClusterPartition& partition);
  std::size_t samples() const { return samples_; }
  std::array<double, kHistogramBins> histogram() const;
  std::array<double, kSmallClusterSizes> small_clusters() const;

 private:
  std::array<double, kHistogramBins> hist_{};
  std::array<double, kSmallClusterSizes> small_{};
  std::size_t samples_ = 0;
};

}  // namespace cpotts
