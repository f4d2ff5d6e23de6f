#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace cpotts {

/// Type label of a particle, in 1..q.
using Species = std::uint16_t;

/// Parameters of the continuum Potts model with a unit step potential on the
/// periodic square [0,L)^2.
struct ModelParams {
  int q = 2;
  double z = 1.0;
  double T = 0.0;
  double L = 16.0;
  double interaction_radius = 1.0;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
  double area() const { return L * L; }
};

/// Point of the torus, always reduced into [0,L).
struct Position {
  double x = 0.0;
  double y = 0.0;

  Position() = default;
  Position(double px, double py, double L) : x(wrap(px, L)), y(wrap(py, L)) {}

  static double wrap(double u, double L) {
    double r = std::fmod(u, L);
    if (r < 0.0) r += L;
    // fmod of a tiny negative number can round back up to L
    if (r >= L) r = 0.0;
    return r;
  }

  friend bool operator==(const Position&, const Position&) = default;
};

struct Particle {
  Position pos;
  Species type = 1;

  friend bool operator==(const Particle&, const Particle&) = default;
};

/// The colored configuration (X, sigma): positions with type labels.
struct ColoredConfiguration {
  double L = 0.0;
  int q = 1;
  std::vector<Particle> particles;

  std::size_t size() const { return particles.size(); }
  bool empty() const { return particles.empty(); }

  /// Positions of type a (X_a).
  std::vector<Position> of_type(Species a) const;
  /// Positions of every type except a (X_{!=a}).
  std::vector<Position> except_type(Species a) const;
  std::vector<std::size_t> count_by_type() const;

  /// True when every label is in 1..q.
  bool labels_valid() const;
  /// True when no unlike pair lies within the interaction radius (O(N^2)).
  bool hard_core_valid() const;
};

/// Shortest displacement between two coordinates on a circle of length L.
inline double periodic_delta(double a, double b, double L) {
  double d = std::fabs(a - b);
  return d > 0.5 * L ? L - d : d;
}

inline double periodic_distance_sq(const Position& a, const Position& b, double L) {
  const double dx = periodic_delta(a.x, b.x, L);
  const double dy = periodic_delta(a.y, b.y, L);
  return dx * dx + dy * dy;
}

/// Euclidean distance between the nearest periodic images of a and b.
inline double periodic_distance(const Position& a, const Position& b, double L) {
  return std::sqrt(periodic_distance_sq(a, b, L));
}

/// Unit step potential: 1 for r <= 1, else 0.
inline int pair_potential(double r) { return r <= 1.0 ? 1 : 0; }

/// Probability 1 - exp(-phi(r)/T) of an edge between like particles.
/// T == 0 is the hard-core limit.
double edge_probability(double r, double T);

/// exp(-n/T) for a point with n unlike neighbours within unit distance,
/// with the T == 0 limit 1{n == 0}.
double exclusion_probability(std::size_t n_neighbours, double T);

/// exp(-sum_y phi(x-y)/T) over the given point set.
double exclusion_probability(const Position& x, std::span<const Position> others,
                             double L, double T);

}  // namespace cpotts
