#include "cpotts/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "cpotts/parallel.hpp"

namespace cpotts {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> column(std::span<const SweepRecord> series, double SweepRecord::*field) {
  std::vector<double> out;
  out.reserve(series.size());
  for (const auto& r : series) out.push_back(r.*field);
  return out;
}

ClusterPartition graph_partition(const ClusterGraph& graph) {
  ClusterPartition partition(std::span<const Position>(graph.points));
  for (const auto& e : graph.edges) partition.unite(e.a, e.b);
  return partition;
}

}  // namespace

SweepVariant parse_sweep_variant(std::string_view name) {
  if (name == "systematic") return SweepVariant::Systematic;
  if (name == "random") return SweepVariant::RandomScan;
  throw std::invalid_argument("unknown sweep variant '" + std::string(name) + "'");
}

std::string_view to_string(SweepVariant v) {
  return v == SweepVariant::Systematic ? "systematic" : "random";
}

std::string_view to_string(TransitionOrder order) {
  return order == TransitionOrder::First ? "first" : "second";
}

std::string_view to_string(TransitionEvidence evidence) {
  return evidence == TransitionEvidence::DensityGap ? "density-gap" : "rho-prime-peak";
}

void RunConfig::validate() const {
  params.validate();
  if (nm < 10 || nm % 10 != 0)
    throw std::invalid_argument("measured sweeps must be a positive multiple of 10, got " +
                                std::to_string(nm));
}

EquilibrationCheck equilibration_check(std::span<const double> series, std::size_t n0) {
  if (series.size() < n0 + 20)
    throw std::invalid_argument("equilibration check needs at least 20 samples after burn-in");
  const auto tail = series.subspan(n0);
  const std::size_t half = tail.size() / 2;
  const auto first = blocking_stats(tail.subspan(0, half));
  const auto second = blocking_stats(tail.subspan(half, half));
  EquilibrationCheck check;
  const double diff = std::fabs(first.mean - second.mean);
  const double combined = std::hypot(first.error, second.error);
  if (combined > 0.0) {
    check.drift_sigma = diff / combined;
  } else {
    check.drift_sigma = diff > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  check.equilibrated = !(check.drift_sigma > kDriftThresholdSigma);
  return check;
}

SummaryStats summarize(std::span<const SweepRecord> series, double z, double L,
                       std::uint64_t n0) {
  SummaryStats s;
  s.n0 = n0;
  s.nm = series.size();
  std::vector<double> n_col;
  n_col.reserve(series.size());
  for (const auto& r : series) n_col.push_back(static_cast<double>(r.N));
  const auto rho = column(series, &SweepRecord::rho);
  s.N = blocking_stats(n_col);
  s.rho = blocking_stats(rho);
  s.gamma = blocking_stats(column(series, &SweepRecord::gamma));
  s.dperc = blocking_stats(column(series, &SweepRecord::dperc));
  if (rho.size() >= 2) s.rho_prime = slope_estimator(rho, z, L);
  else s.rho_prime = SlopeEstimate{kNaN, kNaN};
  if (rho.size() >= 20) s.equilibration = equilibration_check(rho, 0);
  return s;
}

ChainResult run_chain(const RunConfig& config) {
  config.validate();
  const auto& params = config.params;
  ChainResult out;
  out.series.reserve(config.nm);
  HistogramAccumulator histograms;
  const std::uint64_t total = config.n0 + config.nm;

  if (config.variant == SweepVariant::Systematic) {
    ChainState state;
    state.rng = RngStream(config.seed, 0);
    state.config = make_initial(config.init, params, state.rng);
    for (std::uint64_t s = 0; s < total; ++s) {
      const auto partition = sweep_systematic(state, params);
      if (s < config.n0) continue;
      out.series.push_back(measure(partition, state.config.particles, params.L, state.sweep_index));
      histograms.add(partition);
    }
    out.final_config = std::move(state.config);
  } else {
    RngStream rng(config.seed, 0);
    auto graph = to_cluster_graph(make_initial(config.init, params, rng), params, rng);
    for (std::uint64_t s = 0; s < total; ++s) {
      for (int k = 0; k < params.q; ++k) graph = sweep_random_scan(graph, params, rng);
      if (s < config.n0) continue;
      const auto partition = graph_partition(graph);
      out.series.push_back(measure(partition, graph.points, params.L, s + 1));
      histograms.add(partition);
    }
    auto partition = graph_partition(graph);
    const auto colors = assign_colors(partition, params.q, rng);
    out.final_config.L = params.L;
    out.final_config.q = params.q;
    for (std::size_t i = 0; i < graph.points.size(); ++i)
      out.final_config.particles.push_back(Particle{graph.points[i], colors[i]});
  }

  out.summary = summarize(out.series, params.z, params.L, config.n0);
  out.histogram = histograms.histogram();
  out.small_clusters = histograms.small_clusters();
  return out;
}

OracleResult run_oracle(const OracleRunConfig& config) {
  const auto& params = config.params;
  params.validate();
  if (config.nm < 10 || config.nm % 10 != 0)
    throw std::invalid_argument("measured sweeps must be a positive multiple of 10");
  const std::uint64_t steps =
      config.steps_per_sweep > 0
          ? config.steps_per_sweep
          : static_cast<std::uint64_t>(std::ceil(3.0 * params.z * params.area()));

  RngStream rng(config.seed, 0);
  ColoredConfiguration state;
  state.L = params.L;
  state.q = params.q;
  OracleResult out;
  out.series.reserve(config.nm);
  for (std::uint64_t s = 0; s < config.n0 + config.nm; ++s) {
    for (std::uint64_t k = 0; k < steps; ++k)
      oracle::metropolis_step(state, params, rng, &out.counters);
    if (s < config.n0) continue;
    SweepRecord r;
    r.sweep = s + 1;
    r.N = state.size();
    r.rho = density(r.N, params.L);
    if (r.N > 0) {
      const auto sizes = oracle::bfs_cluster_sizes(state, params.T, rng);
      r.gamma = static_cast<double>(*std::max_element(sizes.begin(), sizes.end())) /
                static_cast<double>(r.N);
    }
    r.dperc = kNaN;
    out.series.push_back(r);
  }
  out.summary = summarize(out.series, params.z, params.L, config.n0);
  return out;
}

// --- scans ----------------------------------------------------------------

void ScanConfig::validate() const {
  ModelParams p;
  p.q = q;
  p.T = T;
  p.z = z_min;
  for (double L : L_schedule) {
    p.L = L;
    p.validate();
  }
  if (L_schedule.empty()) throw std::invalid_argument("empty box-size schedule");
  if (!(z_step > 0.0)) throw std::invalid_argument("z step must be > 0");
  if (!(z_min > 0.0) || z_max < z_min) throw std::invalid_argument("invalid z range");
  if (refine < 0) throw std::invalid_argument("refine must be >= 0");
  if (nm < 10 || nm % 10 != 0)
    throw std::invalid_argument("measured sweeps must be a positive multiple of 10");
}

std::vector<double> make_z_grid(double z_min, double z_max, double step) {
  std::vector<double> grid;
  const auto n = static_cast<long>(std::floor((z_max - z_min) / step + 1e-9)) + 1;
  for (long i = 0; i < n; ++i) grid.push_back(std::round((z_min + i * step) * 1e9) / 1e9);
  return grid;
}

std::uint64_t scan_chain_seed(std::uint64_t seed, double L, double z, InitialCondition init) {
  const auto z_key = static_cast<std::uint64_t>(std::llround(z * 1e9));
  std::uint64_t h = mix_seed(seed, std::bit_cast<std::uint64_t>(L));
  h = mix_seed(h, z_key);
  return mix_seed(h, static_cast<std::uint64_t>(init));
}

namespace {

struct Branches {
  const ScanPoint* ordered = nullptr;
  const ScanPoint* disordered = nullptr;
};

bool usable(const ScanPoint* p) { return p && p->stats.equilibration.equilibrated; }

std::map<double, Branches> branches_at(const std::vector<ScanPoint>& points, double L) {
  std::map<double, Branches> out;
  for (const auto& p : points) {
    if (p.L != L) continue;
    auto& b = out[p.z];
    if (p.init == InitialCondition::Ordered) b.ordered = &p;
    else b.disordered = &p;
  }
  return out;
}

// rho' averaged over the equilibrated branches; nullopt if none is.
std::optional<SlopeEstimate> branch_rho_prime(const Branches& b) {
  double sum = 0.0, var = 0.0;
  int n = 0;
  for (const ScanPoint* p : {b.ordered, b.disordered}) {
    if (!usable(p) || std::isnan(p->stats.rho_prime.value)) continue;
    sum += p->stats.rho_prime.value;
    const double e = p->stats.rho_prime.error;
    var += std::isnan(e) ? 0.0 : e * e;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return SlopeEstimate{sum / n, std::sqrt(var) / n};
}

}  // namespace

TransitionVerdict classify_transition(std::vector<ScanPoint> points,
                                      std::vector<ScanLevel> levels) {
  if (levels.empty()) throw std::invalid_argument("scan has no levels");
  std::sort(points.begin(), points.end(), [](const ScanPoint& a, const ScanPoint& b) {
    return std::tie(a.L, a.z, a.init) < std::tie(b.L, b.z, b.init);
  });
  std::sort(levels.begin(), levels.end(),
            [](const ScanLevel& a, const ScanLevel& b) { return a.L < b.L; });

  TransitionVerdict v;
  const auto& top = levels.back();

  for (const auto& [z, b] : branches_at(points, top.L)) {
    if (!usable(b.ordered) && !usable(b.disordered)) {
      v.inconclusive.push_back(z);
      continue;
    }
    if (!usable(b.ordered) || !usable(b.disordered)) continue;
    const auto& o = b.ordered->stats.rho;
    const auto& d = b.disordered->stats.rho;
    const double combined = std::hypot(o.error, d.error);
    if (std::fabs(o.mean - d.mean) > kGapThresholdSigma * combined) v.coexistence.push_back(z);
  }

  std::vector<std::map<double, SlopeEstimate>> rho_prime(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    PeakInfo peak;
    peak.L = levels[k].L;
    peak.height = -std::numeric_limits<double>::infinity();
    for (const auto& [z, b] : branches_at(points, levels[k].L)) {
      const auto rp = branch_rho_prime(b);
      if (!rp) continue;
      rho_prime[k][z] = *rp;
      if (rp->value > peak.height) {
        peak.height = rp->value;
        peak.z = z;
        peak.error = rp->error;
      }
    }
    if (!rho_prime[k].empty()) v.peaks.push_back(peak);
  }

  if (!v.coexistence.empty()) {
    const double lo = v.coexistence.front();
    const double hi = v.coexistence.back();
    v.order = TransitionOrder::First;
    v.evidence = TransitionEvidence::DensityGap;
    v.z_c = 0.5 * (lo + hi);
    v.error = (hi - lo) + top.z_step;
  } else if (!v.peaks.empty()) {
    v.order = TransitionOrder::Second;
    v.evidence = TransitionEvidence::RhoPrimePeak;
    v.z_c = v.peaks.back().z;
    v.error = top.z_step;
    if (levels.size() >= 2 && v.peaks.back().L == top.L) {
      // smallest offset beyond which the two largest boxes agree on rho'
      const auto& big = rho_prime[levels.size() - 1];
      const auto& prev = rho_prime[levels.size() - 2];
      std::vector<std::pair<double, bool>> agree;
      for (const auto& [z, a] : big) {
        if (z < v.z_c) continue;
        const auto it = prev.find(z);
        if (it == prev.end()) continue;
        const double combined = std::hypot(a.error, it->second.error);
        agree.emplace_back(z, std::fabs(a.value - it->second.value) <=
                                  kRhoPrimeAgreementSigma * combined);
      }
      if (!agree.empty()) {
        double offset = agree.back().first - v.z_c + top.z_step;
        for (auto it = agree.rbegin(); it != agree.rend() && it->second; ++it)
          offset = it->first - v.z_c;
        v.error = std::max(offset, top.z_step);
      }
    }
  }

  v.levels = std::move(levels);
  v.points = std::move(points);
  return v;
}

TransitionVerdict scan_transition(const ScanConfig& config) {
  config.validate();
  std::vector<InitialCondition> inits{InitialCondition::Ordered};
  if (config.both_inits) inits.push_back(InitialCondition::DisorderedRandom);

  std::vector<ScanLevel> levels;
  std::vector<ScanPoint> points;
  for (std::size_t k = 0; k < config.L_schedule.size(); ++k) {
    ScanLevel level;
    level.L = config.L_schedule[k];
    if (k == 0) {
      level.z_step = config.z_step;
      level.z_values = make_z_grid(config.z_min, config.z_max, config.z_step);
    } else if (static_cast<int>(k) <= config.refine) {
      const auto& prev = levels.back();
      std::vector<ScanPoint> prev_points;
      for (const auto& p : points)
        if (p.L == prev.L) prev_points.push_back(p);
      const double centre = classify_transition(prev_points, {prev}).z_c;
      level.z_step = 0.5 * prev.z_step;
      const double lo = std::max(level.z_step, centre - 4.0 * prev.z_step);
      level.z_values = make_z_grid(lo, centre + 4.0 * prev.z_step, level.z_step);
    } else {
      level.z_step = levels.back().z_step;
      level.z_values = levels.back().z_values;
    }

    std::vector<ScanPoint> batch;
    for (double z : level.z_values)
      for (auto init : inits) batch.push_back(ScanPoint{level.L, z, init, {}});
    parallel_for(batch.size(), config.threads, [&](std::size_t i) {
      auto& p = batch[i];
      RunConfig run;
      run.params.q = config.q;
      run.params.T = config.T;
      run.params.L = p.L;
      run.params.z = p.z;
      run.init = p.init;
      run.n0 = config.n0;
      run.nm = config.nm;
      run.variant = config.variant;
      run.seed = scan_chain_seed(config.seed, p.L, p.z, p.init);
      p.stats = run_chain(run).summary;
    });
    points.insert(points.end(), batch.begin(), batch.end());
    levels.push_back(std::move(level));
  }
  return classify_transition(std::move(points), std::move(levels));
}

}  // namespace cpotts
