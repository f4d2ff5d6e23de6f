#include "cpotts/dissociation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <stdexcept>

namespace cpotts {

namespace {

int grid_cells_for(std::size_t n, double L) {
  if (n == 0) return 1;
  return SpatialGrid::choose_n_hash(L, static_cast<double>(n) / (L * L));
}

std::vector<Particle> untyped(std::span<const Position> points) {
  std::vector<Particle> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(Particle{p, 1});
  return out;
}

}  // namespace

ExclusionIndex::ExclusionIndex(const ColoredConfiguration& config) : L_(config.L) {
  points_.reserve(config.size());
  for (const auto& p : config.particles) points_.push_back(Particle{p.pos, 1});
  grid_ = build_grid(points_, L_, grid_cells_for(points_.size(), L_), 1);
  RngStream unused;
  const auto edges = draw_edges(points_, grid_, 0.0, unused);
  partition_ = union_find_clusters(points_, edges);
  labels_ = partition_.labels();
}

bool ExclusionIndex::free_for(const Position& x, ParticleId cluster) const {
  for (ParticleId id : grid_.list(grid_.cell_of(x), 1))
    if (labels_[id] != cluster && periodic_distance_sq(points_[id].pos, x, L_) <= 1.0)
      return false;
  return true;
}

bool free_space_membership(const Position& x, std::span<const Position> outside_cluster,
                           double L) {
  return std::none_of(outside_cluster.begin(), outside_cluster.end(),
                      [&](const Position& y) { return periodic_distance_sq(x, y, L) <= 1.0; });
}

Estimate free_volume(const RegionPredicate& region, double L, std::size_t samples,
                     RngStream& rng) {
  if (samples == 0) throw std::invalid_argument("free volume needs at least one sample");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    Position x;
    x.x = rng.uniform(L);
    x.y = rng.uniform(L);
    if (region(x)) ++hits;
  }
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(hits) / n;
  return Estimate{L * L * p, L * L * std::sqrt(p * (1.0 - p) / n)};
}

std::optional<Position> sample_in_region(const RegionPredicate& region, double L,
                                         RngStream& rng, std::uint64_t budget) {
  for (std::uint64_t i = 0; i < budget; ++i) {
    Position x;
    x.x = rng.uniform(L);
    x.y = rng.uniform(L);
    if (region(x)) return x;
  }
  return std::nullopt;
}

std::size_t count_unit_clusters(std::span<const Position> points, double L) {
  const std::size_t n = points.size();
  if (n <= 128) {
    ClusterPartition partition(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (periodic_distance_sq(points[i], points[j], L) <= 1.0)
          partition.unite(static_cast<ParticleId>(i), static_cast<ParticleId>(j));
    return partition.cluster_count();
  }
  const auto particles = untyped(points);
  const auto grid = build_grid(particles, L, grid_cells_for(n, L), 1);
  RngStream unused;
  const auto edges = draw_edges(particles, grid, 0.0, unused);
  return union_find_clusters(n, edges).cluster_count();
}

DissociationEstimate dissociation_probability(const RegionPredicate& region, double L,
                                              std::size_t n_points, std::size_t trials,
                                              RngStream& rng, std::uint64_t budget) {
  DissociationEstimate out;
  if (n_points <= 1) return out;
  if (trials == 0) throw std::invalid_argument("dissociation needs at least one trial");

  std::vector<Position> xi(n_points);
  std::size_t split = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    for (auto& p : xi) {
      auto s = sample_in_region(region, L, rng, budget);
      if (!s) {
        out.defined = false;
        out.value = std::numeric_limits<double>::quiet_NaN();
        out.error = out.value;
        out.diagnostic = "no free-space hit in " + std::to_string(budget) + " proposals";
        return out;
      }
      p = *s;
    }
    if (count_unit_clusters(xi, L) >= 2) ++split;
  }
  const double n = static_cast<double>(trials);
  out.value = static_cast<double>(split) / n;
  out.error = std::sqrt(out.value * (1.0 - out.value) / n);
  return out;
}

DissociationReport scan_clusters(const ColoredConfiguration& config,
                                 const DissociationScanOptions& options) {
  const ExclusionIndex index(config);
  DissociationReport report;
  report.n0 = options.n0;
  for (ParticleId root : index.partition().roots()) {
    ClusterDissociation row;
    row.root = root;
    row.size = index.partition().cluster_size(root);
    RngStream rng(options.seed, root);
    const FreeSpace space(index, root);
    const auto region = space.predicate();
    if (options.volume_samples > 0) {
      row.free_volume = free_volume(region, config.L, options.volume_samples, rng);
    } else {
      row.free_volume = Estimate{std::numeric_limits<double>::quiet_NaN(),
                                 std::numeric_limits<double>::quiet_NaN()};
    }
    row.delta = dissociation_probability(region, config.L, row.size, options.trials, rng,
                                         options.budget);
    if (row.delta.defined) report.max_delta = std::max(report.max_delta, row.delta.value);
    if (row.size >= options.n0) report.large_cluster_event = true;
    report.clusters.push_back(std::move(row));
  }
  return report;
}

}  // namespace cpotts
