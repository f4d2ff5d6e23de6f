#pragma once

#include <span>
#include <vector>

#include "cpotts/model.hpp"
#include "cpotts/rng.hpp"
#include "cpotts/spatial_grid.hpp"

namespace cpotts {

/// Homogeneous Poisson process of intensity z on [0,L)^2: the count is drawn
/// first, then that many i.i.d. uniform positions (x before y).
std::vector<Position> sample_poisson(double z, double L, RngStream& rng);

/// Point set indexed by a grid: the particles of `types` registered in `grid`,
/// with positions looked up in `particles`.
struct IndexedPoints {
  const SpatialGrid& grid;
  std::span<const Particle> particles;
  std::span<const Species> types;

  std::size_t count_within_one(const Position& x, std::size_t limit) const;
};

/// Keeps each point independently with probability exp(-n(x)/T), n(x) the
/// number of indexed points within unit distance. At T = 0 a point is kept
/// iff n(x) = 0 and no randomness is consumed; at T > 0 one uniform is drawn
/// per point that has at least one neighbour.
std::vector<Position> thin(std::span<const Position> points, const IndexedPoints& others, double T,
                           RngStream& rng);

/// Marker for a vacated slot during in-place resampling.
inline constexpr Species kDeadSlot = 0;

/// In-place position resampling of type a.
///
/// `slots` may contain vacated entries (type kDeadSlot); `grid` must register
/// every live slot. Type-a particles are vacated and replaced by a thinned
/// Poisson sample conditioned on the current X_{!=a}; new particles reuse
/// vacated slots (last vacated first) before growing the vector.
void resample_type_in_place(std::vector<Particle>& slots, std::vector<ParticleId>& free_slots,
                            SpatialGrid& grid, Species a, const ModelParams& params,
                            RngStream& rng);

/// Removes vacated slots, preserving the order of live particles.
void compact_slots(std::vector<Particle>& slots);

/// Replaces X_a by a sample of the conditional single-type law given X_{!=a}.
ColoredConfiguration resample_type(const ColoredConfiguration& config, Species a,
                                   const ModelParams& params, RngStream& rng);

}  // namespace cpotts
