#include "cpotts/gibbs_oracle.hpp"

#include <algorithm>
#include <cmath>

namespace cpotts::oracle {

namespace {

bool within_one(const Position& a, const Position& b, double L) {
  return periodic_distance_sq(a, b, L) <= 1.0;
}

double accept(double ratio) { return std::min(1.0, ratio); }

}  // namespace

EnergyValue energy(const ColoredConfiguration& config) {
  EnergyValue e;
  const auto& ps = config.particles;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      if (ps[i].type != ps[j].type && within_one(ps[i].pos, ps[j].pos, config.L))
        ++e.unlike_pair_count;
  return e;
}

double boltzmann_factor(long delta_h, double T) {
  if (T == 0.0) return delta_h <= 0 ? 1.0 : 0.0;
  return std::exp(-static_cast<double>(delta_h) / T);
}

double birth_acceptance(const ModelParams& params, std::size_t n_before, long delta_h) {
  const double ratio = params.q * params.z * params.area() / static_cast<double>(n_before + 1);
  return accept(ratio * boltzmann_factor(delta_h, params.T));
}

double death_acceptance(const ModelParams& params, std::size_t n_before, long delta_h) {
  const double ratio = static_cast<double>(n_before) / (params.q * params.z * params.area());
  return accept(ratio * boltzmann_factor(delta_h, params.T));
}

double flip_acceptance(const ModelParams& params, long delta_h) {
  return accept(boltzmann_factor(delta_h, params.T));
}

long birth_delta(const ColoredConfiguration& config, const Position& x, Species t) {
  long d = 0;
  for (const auto& p : config.particles)
    if (p.type != t && within_one(p.pos, x, config.L)) ++d;
  return d;
}

long death_delta(const ColoredConfiguration& config, std::size_t i) {
  const auto& target = config.particles[i];
  long d = 0;
  for (std::size_t j = 0; j < config.size(); ++j) {
    const auto& p = config.particles[j];
    if (j != i && p.type != target.type && within_one(p.pos, target.pos, config.L)) --d;
  }
  return d;
}

long flip_delta(const ColoredConfiguration& config, std::size_t i, Species t) {
  const auto& target = config.particles[i];
  long d = 0;
  for (std::size_t j = 0; j < config.size(); ++j) {
    const auto& p = config.particles[j];
    if (j == i || !within_one(p.pos, target.pos, config.L)) continue;
    if (p.type != t) ++d;
    if (p.type != target.type) --d;
  }
  return d;
}

void metropolis_step(ColoredConfiguration& config, const ModelParams& params, RngStream& rng,
                     MoveCounters* counters) {
  const auto kind = static_cast<MoveKind>(rng.below(3));
  const auto k = static_cast<std::size_t>(kind);
  const std::size_t n = config.size();

  double acceptance = 0.0;
  Particle born;
  std::size_t index = 0;
  Species new_type = 1;

  switch (kind) {
    case MoveKind::Birth: {
      const double x = rng.uniform(params.L);
      const double y = rng.uniform(params.L);
      born.pos.x = x;
      born.pos.y = y;
      born.type = static_cast<Species>(1 + rng.below(params.q));
      acceptance = birth_acceptance(params, n, birth_delta(config, born.pos, born.type));
      break;
    }
    case MoveKind::Death:
      if (n == 0) return;
      index = rng.below(n);
      acceptance = death_acceptance(params, n, death_delta(config, index));
      break;
    case MoveKind::Flip:
      if (n == 0) return;
      index = rng.below(n);
      new_type = static_cast<Species>(1 + rng.below(params.q));
      acceptance = flip_acceptance(params, flip_delta(config, index, new_type));
      break;
  }
  if (counters) ++counters->proposed[k];

  bool accepted = acceptance >= 1.0;
  if (!accepted && acceptance > 0.0) accepted = rng.uniform() < acceptance;
  if (!accepted) return;
  if (counters) ++counters->accepted[k];

  switch (kind) {
    case MoveKind::Birth: config.particles.push_back(born); break;
    case MoveKind::Death:
      config.particles[index] = config.particles.back();
      config.particles.pop_back();
      break;
    case MoveKind::Flip: config.particles[index].type = new_type; break;
  }
}

std::vector<std::size_t> bfs_cluster_sizes(const ColoredConfiguration& config, double T,
                                           RngStream& rng) {
  const std::size_t n = config.size();
  const auto& ps = config.particles;
  std::vector<std::vector<std::size_t>> adjacency(n);
  const double p = T == 0.0 ? 1.0 : -std::expm1(-1.0 / T);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (ps[i].type == ps[j].type && within_one(ps[i].pos, ps[j].pos, config.L) &&
          (T == 0.0 || rng.uniform() < p)) {
        adjacency[i].push_back(j);
        adjacency[j].push_back(i);
      }

  std::vector<std::size_t> sizes;
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> queue;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (std::size_t v : adjacency[queue[head]])
        if (!seen[v]) {
          seen[v] = 1;
          queue.push_back(v);
        }
    sizes.push_back(queue.size());
  }
  return sizes;
}

}  // namespace cpotts::oracle
