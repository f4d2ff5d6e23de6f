#include "cpotts/model.hpp"

#include <stdexcept>
#include <string>

namespace cpotts {

void ModelParams::validate() const {
  if (q < 1) throw std::invalid_argument("q must be >= 1, got " + std::to_string(q));
  if (!(z > 0.0)) throw std::invalid_argument("z must be > 0");
  if (!(T >= 0.0)) throw std::invalid_argument("T must be >= 0");
  if (!(L > 0.0)) throw std::invalid_argument("L must be > 0");
  if (interaction_radius != 1.0)
    throw std::invalid_argument("only the unit step potential is supported");
  if (L < 2.0 * interaction_radius)
    throw std::invalid_argument("L must be at least twice the interaction radius");
  if (q > 65535) throw std::invalid_argument("q too large");
}

std::vector<Position> ColoredConfiguration::of_type(Species a) const {
  std::vector<Position> out;
  for (const auto& p : particles)
    if (p.type == a) out.push_back(p.pos);
  return out;
}

std::vector<Position> ColoredConfiguration::except_type(Species a) const {
  std::vector<Position> out;
  for (const auto& p : particles)
    if (p.type != a) out.push_back(p.pos);
  return out;
}

std::vector<std::size_t> ColoredConfiguration::count_by_type() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(q), 0);
  for (const auto& p : particles)
    if (p.type >= 1 && p.type <= q) ++counts[p.type - 1];
  return counts;
}

bool ColoredConfiguration::labels_valid() const {
  for (const auto& p : particles)
    if (p.type < 1 || p.type > q) return false;
  return true;
}

bool ColoredConfiguration::hard_core_valid() const {
  for (std::size_t i = 0; i < particles.size(); ++i)
    for (std::size_t j = i + 1; j < particles.size(); ++j)
      if (particles[i].type != particles[j].type &&
          periodic_distance_sq(particles[i].pos, particles[j].pos, L) <= 1.0)
        return false;
  return true;
}

double edge_probability(double r, double T) {
  if (pair_potential(r) == 0) return 0.0;
  if (T == 0.0) return 1.0;
  return -std::expm1(-1.0 / T);
}

double exclusion_probability(std::size_t n_neighbours, double T) {
  if (n_neighbours == 0) return 1.0;
  if (T == 0.0) return 0.0;
  return std::exp(-static_cast<double>(n_neighbours) / T);
}

double exclusion_probability(const Position& x, std::span<const Position> others,
                             double L, double T) {
  std::size_t n = 0;
  for (const auto& y : others)
    if (periodic_distance_sq(x, y, L) <= 1.0) ++n;
  return exclusion_probability(n, T);
}

}  // namespace cpotts
