#include "cpotts/cluster_graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cpotts {

ClusterPartition::ClusterPartition(std::size_t n)
    : parent_(n), size_(n, 1), corners_(n, Corners{0, 0, 0, 0}), clusters_(n) {
  std::iota(parent_.begin(), parent_.end(), ParticleId{0});
}

ClusterPartition::ClusterPartition(std::span<const Position> positions)
    : ClusterPartition(positions.size()) {
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const auto& p = positions[i];
    corners_[i] = Corners{p.x, p.x, p.y, p.y};
  }
}

ClusterPartition::ClusterPartition(std::span<const Particle> particles)
    : ClusterPartition(particles.size()) {
  for (std::size_t i = 0; i < particles.size(); ++i) {
    const auto& p = particles[i].pos;
    corners_[i] = Corners{p.x, p.x, p.y, p.y};
  }
}

ParticleId ClusterPartition::find(ParticleId i) {
  ParticleId root = i;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[i] != root) {
    const ParticleId next = parent_[i];
    parent_[i] = root;
    i = next;
  }
  return root;
}

ParticleId ClusterPartition::root_of(ParticleId i) const {
  while (parent_[i] != i) i = parent_[i];
  return i;
}

bool ClusterPartition::unite(ParticleId a, ParticleId b) {
  ParticleId ra = find(a);
  ParticleId rb = find(b);
  if (ra == rb) return false;
  if (size_[ra] < size_[rb] || (size_[ra] == size_[rb] && rb < ra)) std::swap(ra, rb);
  parent_[rb] = ra;
  size_[ra] += size_[rb];
  auto& c = corners_[ra];
  const auto& d = corners_[rb];
  c.min_x = std::min(c.min_x, d.min_x);
  c.max_x = std::max(c.max_x, d.max_x);
  c.min_y = std::min(c.min_y, d.min_y);
  c.max_y = std::max(c.max_y, d.max_y);
  --clusters_;
  return true;
}

std::vector<ParticleId> ClusterPartition::roots() const {
  std::vector<ParticleId> out;
  out.reserve(clusters_);
  for (ParticleId i = 0; i < parent_.size(); ++i)
    if (parent_[i] == i) out.push_back(i);
  return out;
}

std::vector<std::uint32_t> ClusterPartition::cluster_sizes() const {
  std::vector<std::uint32_t> out;
  out.reserve(clusters_);
  for (ParticleId i = 0; i < parent_.size(); ++i)
    if (parent_[i] == i) out.push_back(size_[i]);
  return out;
}

std::vector<ParticleId> ClusterPartition::labels() {
  std::vector<ParticleId> out(parent_.size());
  for (ParticleId i = 0; i < parent_.size(); ++i) out[i] = find(i);
  return out;
}

std::vector<Edge> draw_edges(std::span<const Particle> particles, const SpatialGrid& grid,
                             double T, RngStream& rng) {
  std::vector<Edge> edges;
  const double p = T == 0.0 ? 1.0 : -std::expm1(-1.0 / T);
  for (ParticleId i = 0; i < particles.size(); ++i) {
    const auto& pi = particles[i];
    grid.for_each_neighbor(particles, pi.pos, pi.type, [&](ParticleId j) {
      if (j <= i) return;
      if (T == 0.0 || rng.uniform() < p) edges.push_back(Edge{i, j});
    });
  }
  return edges;
}

std::vector<Edge> draw_edges(const ColoredConfiguration& config, const SpatialGrid& grid,
                             double T, RngStream& rng) {
  return draw_edges(config.particles, grid, T, rng);
}

ClusterPartition union_find_clusters(std::size_t n, std::span<const Edge> edges) {
  ClusterPartition partition(n);
  for (const auto& e : edges) {
    if (e.a >= n || e.b >= n) throw std::out_of_range("edge references missing particle");
    partition.unite(e.a, e.b);
  }
  return partition;
}

ClusterPartition union_find_clusters(std::span<const Particle> particles,
                                     std::span<const Edge> edges) {
  ClusterPartition partition(particles);
  for (const auto& e : edges) {
    if (e.a >= particles.size() || e.b >= particles.size())
      throw std::out_of_range("edge references missing particle");
    partition.unite(e.a, e.b);
  }
  return partition;
}

std::vector<Species> assign_colors(ClusterPartition& partition, int q, RngStream& rng) {
  const std::size_t n = partition.size();
  std::vector<Species> root_color(n, 0);
  for (ParticleId i = 0; i < n; ++i)
    if (partition.is_root(i)) root_color[i] = static_cast<Species>(1 + rng.below(q));
  std::vector<Species> colors(n);
  for (ParticleId i = 0; i < n; ++i) colors[i] = root_color[partition.find(i)];
  return colors;
}

}  // namespace cpotts
