#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cpotts/model.hpp"
#include "cpotts/rng.hpp"

namespace cpotts {

/// Grand-canonical Metropolis sampler for the colored Gibbs measure with
/// density z^N exp(-H/T) against the Lebesgue-Poisson reference measure. It
/// shares nothing with the cluster dynamics beyond the model kernels: energy
/// changes come from direct O(N) scans and clusters from breadth-first search.
namespace oracle {

/// Hamiltonian of the step potential: the number of unlike pairs within unit
/// distance.
struct EnergyValue {
  std::uint64_t unlike_pair_count = 0;

  friend bool operator==(const EnergyValue&, const EnergyValue&) = default;
};

EnergyValue energy(const ColoredConfiguration& config);

enum class MoveKind { Birth = 0, Death = 1, Flip = 2 };

/// exp(-dH/T), with the T = 0 limit 1{dH <= 0}.
double boltzmann_factor(long delta_h, double T);

/// min(1, q z L^2 / (N+1) exp(-dH/T)) for a configuration holding N particles.
double birth_acceptance(const ModelParams& params, std::size_t n_before, long delta_h);
/// min(1, N / (q z L^2) exp(-dH/T)) for a configuration holding N particles.
double death_acceptance(const ModelParams& params, std::size_t n_before, long delta_h);
double flip_acceptance(const ModelParams& params, long delta_h);

/// Change in H when a particle of type t is added at x.
long birth_delta(const ColoredConfiguration& config, const Position& x, Species t);
/// Change in H when particle i is removed.
long death_delta(const ColoredConfiguration& config, std::size_t i);
/// Change in H when particle i is recolored to t.
long flip_delta(const ColoredConfiguration& config, std::size_t i, Species t);

struct MoveCounters {
  std::array<std::uint64_t, 3> proposed{};
  std::array<std::uint64_t, 3> accepted{};
};

/// One Metropolis move chosen uniformly among birth, death and flip. Death and
/// flip on an empty configuration are no-ops. Draw order: move kind, then the
/// proposal (birth: x, y, type; death: index; flip: index, type), then one
/// uniform when the acceptance is strictly between 0 and 1.
void metropolis_step(ColoredConfiguration& config, const ModelParams& params, RngStream& rng,
                     MoveCounters* counters = nullptr);

/// Connected components of the graph of like pairs within unit distance, each
/// such pair joined with probability edge_probability (all of them at T = 0).
/// Returns the component sizes.
std::vector<std::size_t> bfs_cluster_sizes(const ColoredConfiguration& config, double T,
                                           RngStream& rng);

}  // namespace oracle
}  // namespace cpotts
