#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "cpotts/spatial_grid.hpp"

using namespace cpotts;

namespace {

// Distance from x to the closed square [x0,x0+s]x[y0,y0+s] on the torus.
double distance_to_cell(const Position& p, double x0, double y0, double s, double L) {
  auto axis = [&](double u, double lo) {
    double best = L;
    for (double shift : {-L, 0.0, L}) {
      const double v = u + shift;
      const double d = v < lo ? lo - v : (v > lo + s ? v - lo - s : 0.0);
      best = std::min(best, d);
    }
    return best;
  };
  const double dx = axis(p.x, x0), dy = axis(p.y, y0);
  return std::sqrt(dx * dx + dy * dy);
}

std::set<std::size_t> brute_cells(const Position& p, int n_hash, double L) {
  std::set<std::size_t> out;
  const double s = L / n_hash;
  for (int j = 0; j < n_hash; ++j)
    for (int i = 0; i < n_hash; ++i)
      if (distance_to_cell(p, i * s, j * s, s, L) <= 1.0)
        out.insert(static_cast<std::size_t>(j) * n_hash + i);
  return out;
}

std::vector<Particle> random_particles(std::mt19937_64& gen, std::size_t n, double L, int q) {
  std::uniform_real_distribution<double> u(0.0, L);
  std::uniform_int_distribution<int> t(1, q);
  std::vector<Particle> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({Position(u(gen), u(gen), L), static_cast<Species>(t(gen))});
  return out;
}

}  // namespace

TEST_CASE("hash size targets ten particles per cell") {
  CHECK(SpatialGrid::choose_n_hash(16, 2.5) == 8);
  CHECK(SpatialGrid::choose_n_hash(2, 0.1) == 1);
  CHECK(SpatialGrid::choose_n_hash(64, 1.7) == 26);
}

TEST_CASE("empty configuration has empty lists") {
  ColoredConfiguration c;
  c.L = 16;
  c.q = 3;
  ModelParams p;
  p.q = 3;
  p.L = 16;
  p.z = 2.5;
  const auto g = build_grid(c, p);
  CHECK(g.n_hash() == 8);
  for (std::size_t cell = 0; cell < g.cell_count(); ++cell)
    for (Species a = 1; a <= 3; ++a) CHECK(g.list(cell, a).empty());
  const std::vector<Species> types{1, 2, 3};
  CHECK(neighbors_within_one(g, c.particles, Position(3, 3, 16), types).empty());
}

TEST_CASE("particle at a cell centre registers in the brute-force cell set") {
  const double L = 16;
  SpatialGrid g(L, 8, 1);
  const Position centre(5.0, 7.0, L);
  g.insert(0, centre, 1);
  const auto expected = brute_cells(centre, 8, L);
  // own cell plus the four edge neighbours; diagonal cells are sqrt(2) away
  CHECK(expected.size() == 5);
  std::set<std::size_t> got;
  for (std::size_t c = 0; c < g.cell_count(); ++c)
    if (!g.list(c, 1).empty()) got.insert(c);
  CHECK(got == expected);
  const auto reg = g.registration_cells(centre);
  CHECK(std::set<std::size_t>(reg.begin(), reg.end()) == expected);
}

TEST_CASE("registration matches brute force for random points") {
  std::mt19937_64 gen(11);
  for (double L : {2.0, 3.7, 10.0, 16.0}) {
    for (int n_hash : {1, 2, 3, 5, 8}) {
      std::uniform_real_distribution<double> u(0.0, L);
      SpatialGrid g(L, n_hash, 1);
      for (int t = 0; t < 50; ++t) {
        const Position p(u(gen), u(gen), L);
        const auto reg = g.registration_cells(p);
        const std::set<std::size_t> got(reg.begin(), reg.end());
        CHECK(got.size() == reg.size());
        CHECK(got == brute_cells(p, n_hash, L));
      }
    }
  }
}

TEST_CASE("close particle is returned") {
  const double L = 10;
  std::vector<Particle> ps{{Position(4.0, 4.0, L), 2}};
  const auto g = build_grid(ps, L, 5, 2);
  const std::vector<Species> want{2}, other{1};
  CHECK(neighbors_within_one(g, ps, Position(4.99, 4.0, L), want) == std::vector<ParticleId>{0});
  CHECK(neighbors_within_one(g, ps, Position(4.99, 4.0, L), other).empty());
  CHECK(neighbors_within_one(g, ps, Position(5.01, 4.0, L), want).empty());
}

TEST_CASE("queries equal brute-force scans on 1000 random cases") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> ul(2.0, 20.0);
  std::uniform_int_distribution<int> uq(1, 4);
  int mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    const double L = ul(gen);
    const int q = uq(gen);
    const double z = std::uniform_real_distribution<double>(0.2, 3.0)(gen);
    const auto ps = random_particles(gen, 200, L, q);
    const auto g = build_grid(ps, L, SpatialGrid::choose_n_hash(L, z), q);
    std::uniform_real_distribution<double> u(0.0, L);
    const Position x(u(gen), u(gen), L);
    std::vector<Species> types;
    for (Species a = 1; a <= q; ++a)
      if (gen() & 1) types.push_back(a);
    auto got = neighbors_within_one(g, ps, x, types);
    std::sort(got.begin(), got.end());
    std::vector<ParticleId> want;
    for (ParticleId i = 0; i < ps.size(); ++i)
      if (std::find(types.begin(), types.end(), ps[i].type) != types.end() &&
          periodic_distance_sq(ps[i].pos, x, L) <= 1.0)
        want.push_back(i);
    if (got != want) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("remove_type") {
  const double L = 12;
  SpatialGrid empty(L, 4, 2);
  CHECK(remove_type(empty, 1).canonical_lists() == empty.canonical_lists());

  std::vector<Particle> only_a{{Position(1, 1, L), 1}, {Position(6, 9, L), 1}};
  const auto ga = remove_type(build_grid(only_a, L, 4, 2), 1);
  for (const auto& list : ga.canonical_lists()) CHECK(list.empty());

  std::mt19937_64 gen(5);
  for (int t = 0; t < 50; ++t) {
    auto ps = random_particles(gen, 150, L, 3);
    const Species a = static_cast<Species>(1 + t % 3);
    const auto removed = remove_type(build_grid(ps, L, 4, 3), a);
    // rebuild oracle: same ids, with type-a particles skipped
    SpatialGrid want(L, 4, 3);
    for (ParticleId i = 0; i < ps.size(); ++i)
      if (ps[i].type != a) want.insert(i, ps[i].pos, ps[i].type);
    CHECK(removed.canonical_lists() == want.canonical_lists());
  }
}

TEST_CASE("rebuild is idempotent") {
  std::mt19937_64 gen(9);
  const double L = 9;
  const auto ps = random_particles(gen, 120, L, 2);
  SpatialGrid g = build_grid(ps, L, 3, 2);
  const auto once = g.canonical_lists();
  g.rebuild(ps);
  CHECK(g.canonical_lists() == once);
  g.clear();
  for (const auto& list : g.canonical_lists()) CHECK(list.empty());
}
