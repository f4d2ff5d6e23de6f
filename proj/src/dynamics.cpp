#include "cpotts/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cpotts/point_process.hpp"

namespace cpotts {

InitialCondition parse_initial_condition(std::string_view name) {
  if (name == "ordered") return InitialCondition::Ordered;
  if (name == "disordered" || name == "random") return InitialCondition::DisorderedRandom;
  if (name == "crystal") return InitialCondition::DisorderedCrystal;
  throw std::invalid_argument("unknown initial condition '" + std::string(name) + "'");
}

std::string_view to_string(InitialCondition init) {
  switch (init) {
    case InitialCondition::Ordered: return "ordered";
    case InitialCondition::DisorderedRandom: return "disordered";
    case InitialCondition::DisorderedCrystal: return "crystal";
  }
  return "?";
}

ColoredConfiguration make_initial(InitialCondition kind, const ModelParams& params,
                                  RngStream& rng, double crystal_spacing) {
  params.validate();
  ColoredConfiguration config;
  config.L = params.L;
  config.q = params.q;

  if (kind == InitialCondition::DisorderedCrystal) {
    if (!(crystal_spacing > params.interaction_radius))
      throw std::invalid_argument("crystal spacing must exceed the interaction radius");
    const auto n = static_cast<int>(std::floor(params.L / crystal_spacing));
    config.particles.reserve(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const auto type = static_cast<Species>((i + j) % params.q + 1);
        config.particles.push_back(
            Particle{Position((i + 0.5) * crystal_spacing, (j + 0.5) * crystal_spacing, params.L),
                     type});
      }
    return config;
  }

  for (const auto& p : sample_poisson(params.z, params.L, rng)) {
    Species type = 1;
    if (kind == InitialCondition::DisorderedRandom)
      type = static_cast<Species>(1 + rng.below(static_cast<std::uint64_t>(params.q)));
    config.particles.push_back(Particle{p, type});
  }
  return config;
}

ClusterPartition sweep_systematic(ChainState& state, const ModelParams& params) {
  auto& particles = state.config.particles;
  const int n_hash = SpatialGrid::choose_n_hash(params.L, params.z);
  if (!state.grid.same_shape(params.L, n_hash, params.q))
    state.grid = SpatialGrid(params.L, n_hash, params.q);

  // CSW 1
  state.grid.rebuild(particles);
  state.free_slots.clear();
  for (int a = 1; a <= params.q; ++a)
    resample_type_in_place(particles, state.free_slots, state.grid, static_cast<Species>(a),
                           params, state.rng);
  compact_slots(particles);

  // CSW 2
  state.grid.rebuild(particles);
  const auto edges = draw_edges(particles, state.grid, params.T, state.rng);
  auto partition = union_find_clusters(particles, edges);

  // CSW 3
  const auto colors = assign_colors(partition, params.q, state.rng);
  for (std::size_t i = 0; i < particles.size(); ++i) particles[i].type = colors[i];

  ++state.sweep_index;
  return partition;
}

ClusterGraph to_cluster_graph(const ColoredConfiguration& config, const ModelParams& params,
                              RngStream& rng) {
  const auto grid = build_grid(config, params);
  ClusterGraph graph;
  graph.L = config.L;
  graph.edges = draw_edges(config.particles, grid, params.T, rng);
  graph.points.reserve(config.size());
  for (const auto& p : config.particles) graph.points.push_back(p.pos);
  return graph;
}

ClusterGraph sweep_random_scan(const ClusterGraph& graph, const ModelParams& params,
                               RngStream& rng) {
  const int n_hash = SpatialGrid::choose_n_hash(params.L, params.z);

  // step 1: delete whole clusters with probability 1/q
  auto partition = union_find_clusters(graph.points.size(), graph.edges);
  std::vector<char> keep_root(graph.points.size(), 0);
  for (ParticleId r : partition.roots()) keep_root[r] = rng.below(params.q) != 0;

  ClusterGraph next;
  next.L = graph.L;
  std::vector<ParticleId> new_index(graph.points.size(), 0);
  std::vector<Particle> old_particles;
  for (ParticleId i = 0; i < graph.points.size(); ++i) {
    if (!keep_root[partition.find(i)]) continue;
    new_index[i] = static_cast<ParticleId>(next.points.size());
    next.points.push_back(graph.points[i]);
    old_particles.push_back(Particle{graph.points[i], 1});
  }
  for (const auto& e : graph.edges)
    if (keep_root[partition.find(e.a)]) next.edges.push_back(Edge{new_index[e.a], new_index[e.b]});

  // step 2: thinned Poisson sample given the retained points, edges among it
  const auto old_grid = build_grid(old_particles, params.L, n_hash, 1);
  const Species old_type[] = {1};
  const IndexedPoints others{old_grid, old_particles, old_type};
  const auto candidates = sample_poisson(params.z, params.L, rng);
  const auto fresh = thin(candidates, others, params.T, rng);

  std::vector<Particle> fresh_particles;
  fresh_particles.reserve(fresh.size());
  for (const auto& p : fresh) fresh_particles.push_back(Particle{p, 1});
  const auto fresh_grid = build_grid(fresh_particles, params.L, n_hash, 1);
  const auto fresh_edges = draw_edges(fresh_particles, fresh_grid, params.T, rng);

  const auto offset = static_cast<ParticleId>(next.points.size());
  next.points.insert(next.points.end(), fresh.begin(), fresh.end());
  for (const auto& e : fresh_edges) next.edges.push_back(Edge{e.a + offset, e.b + offset});
  return next;
}

}  // namespace cpotts
