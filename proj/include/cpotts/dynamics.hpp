#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "cpotts/cluster_graph.hpp"
#include "cpotts/model.hpp"
#include "cpotts/rng.hpp"
#include "cpotts/spatial_grid.hpp"

namespace cpotts {

enum class InitialCondition { Ordered, DisorderedRandom, DisorderedCrystal };

InitialCondition parse_initial_condition(std::string_view name);
std::string_view to_string(InitialCondition init);

/// Lattice spacing of the disordered crystal, just above the interaction
/// radius so unlike neighbours never overlap.
inline constexpr double kCrystalSpacing = 1.001;

/// Starting configurations:
///  - Ordered: Poisson(z) sample, every particle of type 1.
///  - DisorderedRandom: Poisson(z) sample with i.i.d. uniform types.
///  - DisorderedCrystal: floor(L/s)^2 square lattice, type ((i + j) mod q) + 1,
///    so lattice neighbours are always unlike and at distance s > 1.
ColoredConfiguration make_initial(InitialCondition kind, const ModelParams& params,
                                  RngStream& rng, double crystal_spacing = kCrystalSpacing);

/// One chain of the systematic-scan dynamics.
struct ChainState {
  ColoredConfiguration config;
  std::uint64_t sweep_index = 0;
  RngStream rng;

  // scratch reused across sweeps
  SpatialGrid grid;
  std::vector<ParticleId> free_slots;
};

/// Systematic-scan sweep: resample X_a for a = 1..q in order, each conditioned
/// on the current (partly resampled) X_{!=a}; draw edges between like pairs;
/// recolor each cluster uniformly. Returns the cluster partition of the new
/// graph, indexed like state.config.particles.
ClusterPartition sweep_systematic(ChainState& state, const ModelParams& params);

/// Uncolored graph state of the random-scan dynamics.
struct ClusterGraph {
  double L = 0.0;
  std::vector<Position> points;
  std::vector<Edge> edges;
};

/// Graph built from a colored configuration by drawing edges between like pairs.
ClusterGraph to_cluster_graph(const ColoredConfiguration& config, const ModelParams& params,
                              RngStream& rng);

/// Random-scan step: delete each cluster with probability 1/q (decided for
/// roots in increasing index order), add a thinned Poisson sample conditioned
/// on the retained points, and draw edges among the new points only. Retained
/// points keep their relative order and come first.
ClusterGraph sweep_random_scan(const ClusterGraph& graph, const ModelParams& params,
                               RngStream& rng);

}  // namespace cpotts
