#include "cpotts/point_process.hpp"

#include <algorithm>
#include <limits>

namespace cpotts {

std::vector<Position> sample_poisson(double z, double L, RngStream& rng) {
  std::vector<Position> points;
  if (!(z > 0.0)) return points;
  const auto n = rng.poisson(z * L * L);
  points.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    Position p;
    p.x = rng.uniform(L);
    p.y = rng.uniform(L);
    points.push_back(p);
  }
  return points;
}

std::size_t IndexedPoints::count_within_one(const Position& x, std::size_t limit) const {
  std::size_t n = 0;
  for (Species a : types) {
    n += grid.count_neighbors(particles, x, a, limit - n);
    if (n >= limit) break;
  }
  return n;
}

std::vector<Position> thin(std::span<const Position> points, const IndexedPoints& others, double T,
                           RngStream& rng) {
  std::vector<Position> kept;
  kept.reserve(points.size());
  const std::size_t limit = T == 0.0 ? 1 : std::numeric_limits<std::size_t>::max();
  for (const auto& x : points) {
    const std::size_t n = others.count_within_one(x, limit);
    if (n == 0) {
      kept.push_back(x);
    } else if (T > 0.0 && rng.uniform() < exclusion_probability(n, T)) {
      kept.push_back(x);
    }
  }
  return kept;
}

void resample_type_in_place(std::vector<Particle>& slots, std::vector<ParticleId>& free_slots,
                            SpatialGrid& grid, Species a, const ModelParams& params,
                            RngStream& rng) {
  grid.remove_type(a);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].type == a) {
      slots[i].type = kDeadSlot;
      free_slots.push_back(static_cast<ParticleId>(i));
    }
  }

  std::vector<Species> other_types;
  for (int b = 1; b <= params.q; ++b)
    if (b != a) other_types.push_back(static_cast<Species>(b));

  const auto candidates = sample_poisson(params.z, params.L, rng);
  const IndexedPoints others{grid, slots, other_types};
  const auto kept = thin(candidates, others, params.T, rng);

  for (const auto& x : kept) {
    ParticleId slot;
    if (!free_slots.empty()) {
      slot = free_slots.back();
      free_slots.pop_back();
      slots[slot] = Particle{x, a};
    } else {
      slot = static_cast<ParticleId>(slots.size());
      slots.push_back(Particle{x, a});
    }
    grid.insert(slot, x, a);
  }
}

void compact_slots(std::vector<Particle>& slots) {
  std::erase_if(slots, [](const Particle& p) { return p.type == kDeadSlot; });
}

ColoredConfiguration resample_type(const ColoredConfiguration& config, Species a,
                                   const ModelParams& params, RngStream& rng) {
  ColoredConfiguration out = config;
  auto grid = build_grid(out, params);
  std::vector<ParticleId> free_slots;
  resample_type_in_place(out.particles, free_slots, grid, a, params, rng);
  compact_slots(out.particles);
  return out;
}

}  // namespace cpotts
