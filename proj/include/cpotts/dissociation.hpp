#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cpotts/cluster_graph.hpp"
#include "cpotts/model.hpp"
#include "cpotts/rng.hpp"
#include "cpotts/spatial_grid.hpp"

namespace cpotts {

/// Membership predicate of a region of the periodic box.
using RegionPredicate = std::function<bool(const Position&)>;

/// Hard-core (T = 0) configuration indexed for free-space queries: every
/// particle in a single-list grid together with its cluster root, where
/// clusters are the components of the graph of all pairs within unit distance.
class ExclusionIndex {
 public:
  explicit ExclusionIndex(const ColoredConfiguration& config);

  double L() const { return L_; }
  std::size_t size() const { return points_.size(); }
  const ClusterPartition& partition() const { return partition_; }
  ParticleId cluster_of(ParticleId i) const { return labels_[i]; }

  /// True iff x is at periodic distance > 1 from every particle outside the
  /// cluster rooted at `cluster`.
  bool free_for(const Position& x, ParticleId cluster) const;

 private:
  double L_;
  std::vector<Particle> points_;
  SpatialGrid grid_;
  ClusterPartition partition_;
  std::vector<ParticleId> labels_;
};

/// Free space Delta_C(X) of one cluster: the box minus the unit neighbourhood
/// of X \ C.
class FreeSpace {
 public:
  FreeSpace(const ExclusionIndex& index, ParticleId cluster) : index_(&index), cluster_(cluster) {}

  bool contains(const Position& x) const { return index_->free_for(x, cluster_); }
  RegionPredicate predicate() const {
    return [this](const Position& x) { return contains(x); };
  }
  double L() const { return index_->L(); }

 private:
  const ExclusionIndex* index_;
  ParticleId cluster_;
};

/// Brute-force form of the free-space predicate over explicit positions.
bool free_space_membership(const Position& x, std::span<const Position> outside_cluster,
                           double L);

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Hit-or-miss estimate of the region's area: L^2 times the hit fraction of
/// `samples` uniform points, with the binomial standard error.
Estimate free_volume(const RegionPredicate& region, double L, std::size_t samples,
                     RngStream& rng);

inline constexpr std::uint64_t kDefaultProposalBudget = 1'000'000;

struct DissociationEstimate {
  bool defined = true;
  double value = 0.0;
  double error = 0.0;
  std::string diagnostic;
};

/// Fraction of trials in which `n_points` points thrown uniformly into the
/// region (by rejection from the box) form at least two clusters under the
/// unit-distance graph, with its binomial error. A single point never
/// dissociates. If any point needs more than `budget` proposals the result is
/// undefined.
DissociationEstimate dissociation_probability(const RegionPredicate& region, double L,
                                              std::size_t n_points, std::size_t trials,
                                              RngStream& rng,
                                              std::uint64_t budget = kDefaultProposalBudget);

/// Uniform point of the region by rejection, or nullopt after `budget` misses.
std::optional<Position> sample_in_region(const RegionPredicate& region, double L,
                                         RngStream& rng, std::uint64_t budget);

/// Number of components of the unit-distance graph on the given points.
std::size_t count_unit_clusters(std::span<const Position> points, double L);

struct ClusterDissociation {
  ParticleId root = 0;
  std::size_t size = 0;
  Estimate free_volume;
  DissociationEstimate delta;
};

struct DissociationReport {
  std::vector<ClusterDissociation> clusters;
  /// Largest defined dissociation estimate.
  double max_delta = 0.0;
  /// Some cluster holds at least N0 particles.
  bool large_cluster_event = false;
  std::size_t n0 = 0;
};

struct DissociationScanOptions {
  std::size_t n0 = 1000;
  std::size_t trials = 1000;
  std::size_t volume_samples = 10000;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultProposalBudget;
};

/// Per-cluster free volume and dissociation estimates for a T = 0
/// configuration. Cluster rows follow increasing root index and each cluster
/// draws from its own stream (seed, root).
DissociationReport scan_clusters(const ColoredConfiguration& config,
                                 const DissociationScanOptions& options);

}  // namespace cpotts
