#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cpotts/dynamics.hpp"
#include "cpotts/gibbs_oracle.hpp"
#include "cpotts/model.hpp"
#include "cpotts/observables.hpp"

namespace cpotts {

enum class SweepVariant { Systematic, RandomScan };

SweepVariant parse_sweep_variant(std::string_view name);
std::string_view to_string(SweepVariant v);

struct RunConfig {
  ModelParams params;
  InitialCondition init = InitialCondition::Ordered;
  std::uint64_t n0 = 250;
  std::uint64_t nm = 2500;
  std::uint64_t seed = 1;
  SweepVariant variant = SweepVariant::Systematic;

  /// Throws std::invalid_argument on an unusable configuration.
  void validate() const;
};

struct EquilibrationCheck {
  bool equilibrated = true;
  /// |mean(first half) - mean(second half)| in units of the combined blocking error.
  double drift_sigma = 0.0;
};

inline constexpr double kDriftThresholdSigma = 4.0;

/// Drift test on the series after its first n0 entries: the two halves must
/// agree in mean within four combined blocking errors. Each half needs at
/// least ten samples.
EquilibrationCheck equilibration_check(std::span<const double> series, std::size_t n0);

struct SummaryStats {
  BlockingResult N;
  BlockingResult rho;
  BlockingResult gamma;
  BlockingResult dperc;
  SlopeEstimate rho_prime;
  std::uint64_t n0 = 0;
  std::uint64_t nm = 0;
  EquilibrationCheck equilibration;
};

SummaryStats summarize(std::span<const SweepRecord> series, double z, double L,
                       std::uint64_t n0);

struct ChainResult {
  std::vector<SweepRecord> series;
  SummaryStats summary;
  std::array<double, kHistogramBins> histogram{};
  std::array<double, kSmallClusterSizes> small_clusters{};
  ColoredConfiguration final_config;
};

/// n0 burn-in sweeps then nm measured sweeps. With the random-scan variant one
/// sweep is q random-scan steps, the same work as one systematic sweep.
ChainResult run_chain(const RunConfig& config);

struct OracleRunConfig {
  ModelParams params;
  std::uint64_t n0 = 1000;
  std::uint64_t nm = 100000;
  /// Metropolis moves between measurements; 0 picks 3 * z * L^2.
  std::uint64_t steps_per_sweep = 0;
  std::uint64_t seed = 1;
};

struct OracleResult {
  std::vector<SweepRecord> series;
  SummaryStats summary;
  oracle::MoveCounters counters;
};

/// Metropolis run started from the empty configuration.
OracleResult run_oracle(const OracleRunConfig& config);

// --- transition scans -----------------------------------------------------

struct ScanConfig {
  int q = 2;
  double T = 0.0;
  double z_min = 1.0;
  double z_max = 2.0;
  double z_step = 0.1;
  std::vector<double> L_schedule{8.0};
  bool both_inits = true;
  /// Number of box doublings after which the grid is narrowed to the current
  /// estimate +- 4 steps at half the step.
  int refine = 0;
  std::uint64_t n0 = 250;
  std::uint64_t nm = 2500;
  std::uint64_t seed = 1;
  SweepVariant variant = SweepVariant::Systematic;
  /// Worker threads; 0 uses the hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

struct ScanPoint {
  double L = 0.0;
  double z = 0.0;
  InitialCondition init = InitialCondition::Ordered;
  SummaryStats stats;
};

enum class TransitionOrder { First, Second };
enum class TransitionEvidence { DensityGap, RhoPrimePeak };

std::string_view to_string(TransitionOrder order);
std::string_view to_string(TransitionEvidence evidence);

struct PeakInfo {
  double L = 0.0;
  double z = 0.0;
  double height = 0.0;
  double error = 0.0;
};

struct ScanLevel {
  double L = 0.0;
  double z_step = 0.0;
  std::vector<double> z_values;
};

struct TransitionVerdict {
  double z_c = 0.0;
  double error = 0.0;
  TransitionOrder order = TransitionOrder::Second;
  TransitionEvidence evidence = TransitionEvidence::RhoPrimePeak;
  /// z values of the largest box where both branches differ beyond the gap threshold.
  std::vector<double> coexistence;
  /// z values (largest box) where no branch equilibrated.
  std::vector<double> inconclusive;
  /// rho' maximum per box size, in schedule order.
  std::vector<PeakInfo> peaks;
  std::vector<ScanLevel> levels;
  std::vector<ScanPoint> points;
};

inline constexpr double kGapThresholdSigma = 5.0;
inline constexpr double kRhoPrimeAgreementSigma = 3.0;

/// Equidistant grid from z_min to z_max inclusive (to within 1e-9).
std::vector<double> make_z_grid(double z_min, double z_max, double step);

/// Seed of one scan chain, a function of the values (not the order) of L, z
/// and the initial condition.
std::uint64_t scan_chain_seed(std::uint64_t seed, double L, double z, InitialCondition init);

/// Verdict from finished scan points. Branches flagged non-equilibrated never
/// enter any estimate.
TransitionVerdict classify_transition(std::vector<ScanPoint> points,
                                      std::vector<ScanLevel> levels);

TransitionVerdict scan_transition(const ScanConfig& config);

}  // namespace cpotts
