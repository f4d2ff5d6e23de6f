#include "cpotts/spatial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cpotts {

namespace {

// Registration tolerates rounding in the cell-offset arithmetic; queries
// filter on the exact distance, so over-registration is harmless.
constexpr double kReach = 1.0 + 1e-12;

struct AxisHit {
  int index;
  double dist;
};

constexpr int kInlineHits = 32;

// Cells along one axis whose closed interval lies within unit circle
// distance of u. Returns the number of hits written (at most n).
template <class Out>
int axis_hits(double u, int n, double side, double L, Out out) {
  int count = 0;
  auto consider = [&](int i) {
    double t = u - i * side;
    if (t < 0.0) t += L;
    if (t >= L) t -= L;
    double d = 0.0;
    if (t > side) d = std::min(t - side, L - t);
    if (d <= kReach) out[count++] = AxisHit{i, d};
  };
  const int reach = static_cast<int>(std::ceil(1.0 / side)) + 1;
  if (2 * reach + 1 >= n) {
    for (int i = 0; i < n; ++i) consider(i);
  } else {
    const int home = std::min(static_cast<int>(u / side), n - 1);
    for (int k = -reach; k <= reach; ++k) consider(((home + k) % n + n) % n);
  }
  return count;
}

template <class Fn>
void for_each_registration_cell(const Position& pos, int n, double side, double L, Fn&& fn) {
  const int reach = static_cast<int>(std::ceil(1.0 / side)) + 1;
  const int bound = std::min(n, 2 * reach + 1);
  if (bound <= kInlineHits) {
    AxisHit xs[kInlineHits], ys[kInlineHits];
    const int nx = axis_hits(pos.x, n, side, L, xs);
    const int ny = axis_hits(pos.y, n, side, L, ys);
    for (int b = 0; b < ny; ++b)
      for (int a = 0; a < nx; ++a)
        if (xs[a].dist * xs[a].dist + ys[b].dist * ys[b].dist <= kReach)
          fn(static_cast<std::size_t>(ys[b].index) * n + xs[a].index);
  } else {
    std::vector<AxisHit> xs(bound), ys(bound);
    const int nx = axis_hits(pos.x, n, side, L, xs.data());
    const int ny = axis_hits(pos.y, n, side, L, ys.data());
    for (int b = 0; b < ny; ++b)
      for (int a = 0; a < nx; ++a)
        if (xs[a].dist * xs[a].dist + ys[b].dist * ys[b].dist <= kReach)
          fn(static_cast<std::size_t>(ys[b].index) * n + xs[a].index);
  }
}

}  // namespace

SpatialGrid::SpatialGrid(double L, int n_hash, int q)
    : L_(L), n_hash_(n_hash), q_(q), cell_side_(L / n_hash), inv_side_(n_hash / L) {
  if (n_hash < 1 || q < 1 || !(L > 0.0)) throw std::invalid_argument("invalid grid shape");
  lists_.resize(cell_count() * static_cast<std::size_t>(q));
}

int SpatialGrid::choose_n_hash(double L, double z) {
  const double ideal = L * std::sqrt(z / 10.0);
  return std::max(1, static_cast<int>(std::floor(ideal + 0.5)));
}


std::vector<std::size_t> SpatialGrid::registration_cells(const Position& pos) const {
  std::vector<std::size_t> cells;
  for_each_registration_cell(pos, n_hash_, cell_side_, L_,
                             [&](std::size_t c) { cells.push_back(c); });
  return cells;
}

void SpatialGrid::insert(ParticleId id, const Position& pos, Species type) {
  const std::size_t offset = type - 1;
  for_each_registration_cell(pos, n_hash_, cell_side_, L_,
                             [&](std::size_t c) { lists_[c * q_ + offset].push_back(id); });
}

void SpatialGrid::remove_type(Species a) {
  for (std::size_t c = 0; c < cell_count(); ++c) lists_[c * q_ + (a - 1)].clear();
}

void SpatialGrid::clear() {
  for (auto& l : lists_) l.clear();
}

void SpatialGrid::rebuild(std::span<const Particle> particles) {
  clear();
  for (std::size_t i = 0; i < particles.size(); ++i)
    insert(static_cast<ParticleId>(i), particles[i].pos, particles[i].type);
}

std::vector<std::vector<ParticleId>> SpatialGrid::canonical_lists() const {
  auto out = lists_;
  for (auto& l : out) std::sort(l.begin(), l.end());
  return out;
}

SpatialGrid build_grid(std::span<const Particle> particles, double L, int n_hash, int q) {
  SpatialGrid grid(L, n_hash, q);
  grid.rebuild(particles);
  return grid;
}

SpatialGrid build_grid(const ColoredConfiguration& config, const ModelParams& params) {
  return build_grid(config.particles, params.L, SpatialGrid::choose_n_hash(params.L, params.z),
                    params.q);
}

SpatialGrid remove_type(SpatialGrid grid, Species a) {
  grid.remove_type(a);
  return grid;
}

std::vector<ParticleId> neighbors_within_one(const SpatialGrid& grid,
                                             std::span<const Particle> particles,
                                             const Position& x,
                                             std::span<const Species> types) {
  std::vector<ParticleId> out;
  for (Species a : types)
    grid.for_each_neighbor(particles, x, a, [&](ParticleId id) { out.push_back(id); });
  return out;
}

}  // namespace cpotts
