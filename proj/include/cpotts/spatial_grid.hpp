#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "cpotts/model.hpp"

namespace cpotts {

using ParticleId = std::uint32_t;

/// Cell hash of the periodic box with one list per (cell, type).
///
/// A particle of type a is registered in list (c, a) of every cell c whose
/// closed square region lies within unit periodic distance of it. Any
/// particle within unit distance of a point x is therefore found in the
/// lists of the single cell containing x. Ids are indices into a particle
/// sequence owned elsewhere.
class SpatialGrid {
 public:
  SpatialGrid() = default;
  SpatialGrid(double L, int n_hash, int q);

  /// max(1, round(L * sqrt(z/10))): about ten Poisson points per cell.
  static int choose_n_hash(double L, double z);

  double L() const { return L_; }
  int n_hash() const { return n_hash_; }
  int q() const { return q_; }
  double cell_side() const { return cell_side_; }
  std::size_t cell_count() const { return static_cast<std::size_t>(n_hash_) * n_hash_; }

  std::size_t cell_of(const Position& x) const {
    const int i = std::min(static_cast<int>(x.x * inv_side_), n_hash_ - 1);
    const int j = std::min(static_cast<int>(x.y * inv_side_), n_hash_ - 1);
    return static_cast<std::size_t>(j) * n_hash_ + i;
  }

  void insert(ParticleId id, const Position& pos, Species type);
  void remove_type(Species a);
  void clear();
  /// Clears and registers every particle, keeping list capacity.
  void rebuild(std::span<const Particle> particles);
  bool same_shape(double L, int n_hash, int q) const {
    return L_ == L && n_hash_ == n_hash && q_ == q;
  }

  std::span<const ParticleId> list(std::size_t cell, Species a) const {
    return lists_[cell * q_ + (a - 1)];
  }

  /// Cells whose closed region is within unit periodic distance of pos.
  std::vector<std::size_t> registration_cells(const Position& pos) const;

  /// Lists with ids sorted, for set-valued comparison.
  std::vector<std::vector<ParticleId>> canonical_lists() const;

  /// Calls fn(id) for every particle of type a within unit distance of x.
  template <class Fn>
  void for_each_neighbor(std::span<const Particle> particles, const Position& x, Species a,
                         Fn&& fn) const {
    for (ParticleId id : list(cell_of(x), a))
      if (periodic_distance_sq(particles[id].pos, x, L_) <= 1.0) fn(id);
  }

  /// Number of particles of type a within unit distance of x, stopping early
  /// once `limit` is reached.
  std::size_t count_neighbors(std::span<const Particle> particles, const Position& x, Species a,
                              std::size_t limit) const {
    std::size_t n = 0;
    for (ParticleId id : list(cell_of(x), a))
      if (periodic_distance_sq(particles[id].pos, x, L_) <= 1.0 && ++n >= limit) break;
    return n;
  }

 private:
  double L_ = 0.0;
  int n_hash_ = 0;
  int q_ = 0;
  double cell_side_ = 0.0;
  double inv_side_ = 0.0;
  std::vector<std::vector<ParticleId>> lists_;
};

SpatialGrid build_grid(const ColoredConfiguration& config, const ModelParams& params);
SpatialGrid build_grid(std::span<const Particle> particles, double L, int n_hash, int q);

/// Copy of the grid with every list of type a emptied.
SpatialGrid remove_type(SpatialGrid grid, Species a);

/// Particles whose type is in `types` at periodic distance <= 1 from x,
/// scanning only the lists of the cell containing x.
std::vector<ParticleId> neighbors_within_one(const SpatialGrid& grid,
                                             std::span<const Particle> particles,
                                             const Position& x,
                                             std::span<const Species> types);

}  // namespace cpotts
