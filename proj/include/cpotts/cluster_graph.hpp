#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cpotts/model.hpp"
#include "cpotts/rng.hpp"
#include "cpotts/spatial_grid.hpp"

namespace cpotts {

struct Edge {
  ParticleId a;
  ParticleId b;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Axis-aligned bounding box of raw coordinates; clusters that wrap around the
/// torus are not unwrapped.
struct Corners {
  double min_x;
  double max_x;
  double min_y;
  double max_y;

  bool contains(const Position& p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
};

/// Union/find forest over particle indices with per-root size and corners.
///
/// Union by size with the smaller index winning ties, and full path
/// compression on find.
class ClusterPartition {
 public:
  ClusterPartition() = default;
  explicit ClusterPartition(std::span<const Position> positions);
  explicit ClusterPartition(std::span<const Particle> particles);
  /// Partition with degenerate (zero) corners, for pure graph work.
  explicit ClusterPartition(std::size_t n);

  std::size_t size() const { return parent_.size(); }
  std::size_t cluster_count() const { return clusters_; }

  ParticleId find(ParticleId i);
  /// find without compression, for const access.
  ParticleId root_of(ParticleId i) const;
  /// Returns true when two clusters were merged.
  bool unite(ParticleId a, ParticleId b);

  std::uint32_t cluster_size(ParticleId root) const { return size_[root]; }
  const Corners& corners(ParticleId root) const { return corners_[root]; }
  bool is_root(ParticleId i) const { return parent_[i] == i; }

  /// Roots in increasing index order.
  std::vector<ParticleId> roots() const;
  std::vector<std::uint32_t> cluster_sizes() const;
  /// Fully compressed root per particle.
  std::vector<ParticleId> labels();

 private:
  std::vector<ParticleId> parent_;
  std::vector<std::uint32_t> size_;
  std::vector<Corners> corners_;
  std::size_t clusters_ = 0;
};

/// CSW edge drawing: each like pair within unit distance independently gets
/// an edge with probability edge_probability. Pairs are visited with i
/// ascending, then in grid-list order of j > i; at T = 0 no randomness is
/// consumed.
std::vector<Edge> draw_edges(std::span<const Particle> particles, const SpatialGrid& grid,
                             double T, RngStream& rng);
std::vector<Edge> draw_edges(const ColoredConfiguration& config, const SpatialGrid& grid,
                             double T, RngStream& rng);

ClusterPartition union_find_clusters(std::size_t n, std::span<const Edge> edges);
ClusterPartition union_find_clusters(std::span<const Particle> particles,
                                     std::span<const Edge> edges);

/// One uniform type per cluster, drawn for roots in increasing index order.
std::vector<Species> assign_colors(ClusterPartition& partition, int q, RngStream& rng);

}  // namespace cpotts
