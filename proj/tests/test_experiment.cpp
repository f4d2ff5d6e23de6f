#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cpotts/experiment.hpp"
#include "cpotts/io.hpp"

using namespace cpotts;

namespace {

RunConfig small_run(int q, double z, double L, std::uint64_t nm, std::uint64_t seed) {
  RunConfig c;
  c.params.q = q;
  c.params.z = z;
  c.params.L = L;
  c.n0 = 5;
  c.nm = nm;
  c.seed = seed;
  return c;
}

ScanPoint synthetic(double L, double z, InitialCondition init, double rho, double rho_err,
                    double rp, double rp_err, bool equilibrated = true) {
  ScanPoint p;
  p.L = L;
  p.z = z;
  p.init = init;
  p.stats.rho = BlockingResult{rho, rho_err, 2500, false};
  p.stats.rho_prime = SlopeEstimate{rp, rp_err};
  p.stats.equilibration.equilibrated = equilibrated;
  return p;
}

ScanLevel level(double L, double step, std::vector<double> zs) { return ScanLevel{L, step, std::move(zs)}; }

}  // namespace

TEST_CASE("run config validation") {
  auto c = small_run(1, 1.0, 8, 10, 1);
  CHECK_NOTHROW(c.validate());
  c.nm = 15;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.nm = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = small_run(0, 1.0, 8, 10, 1);
  CHECK_THROWS_AS(run_chain(c), std::invalid_argument);
  CHECK(parse_sweep_variant("random") == SweepVariant::RandomScan);
  CHECK_THROWS_AS(parse_sweep_variant("sideways"), std::invalid_argument);
}

TEST_CASE("short q=1 chain") {
  const auto r = run_chain(small_run(1, 1.0, 8, 10, 3));
  CHECK(r.series.size() == 10);
  for (const auto& rec : r.series) {
    CHECK(rec.rho == static_cast<double>(rec.N) / 64.0);
    CHECK(rec.gamma >= 0.0);
    CHECK(rec.gamma <= 1.0);
    CHECK(rec.dperc >= 0.0);
    CHECK(rec.dperc <= 3.0);
  }
  CHECK(r.series.front().sweep == 6);
  CHECK(std::fabs(r.summary.rho.mean - 1.0) < 0.2);
  CHECK(r.summary.nm == 10);
}

TEST_CASE("chains are deterministic for both variants") {
  for (auto variant : {SweepVariant::Systematic, SweepVariant::RandomScan}) {
    auto c = small_run(3, 1.2, 8, 20, 42);
    c.variant = variant;
    c.params.T = 0.4;
    const auto a = run_chain(c);
    const auto b = run_chain(c);
    CHECK(io::series_csv(a.series) == io::series_csv(b.series));
    CHECK(io::key_values(io::run_summary(c, a.summary)) ==
          io::key_values(io::run_summary(c, b.summary)));
    CHECK(io::configuration_csv(a.final_config) == io::configuration_csv(b.final_config));
    c.seed = 43;
    CHECK(io::series_csv(run_chain(c).series) != io::series_csv(a.series));
  }
}

TEST_CASE("random-scan final configuration is valid") {
  auto c = small_run(3, 1.5, 8, 20, 5);
  c.variant = SweepVariant::RandomScan;
  const auto r = run_chain(c);
  CHECK(r.final_config.labels_valid());
  CHECK(r.final_config.hard_core_valid());
  CHECK(r.final_config.size() == r.series.back().N);
}

TEST_CASE("equilibration check") {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> nd(0, 1);
  std::vector<double> noise(2000);
  for (auto& x : noise) x = nd(gen);
  CHECK(equilibration_check(noise, 0).equilibrated);

  std::vector<double> ramp(2000);
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = 1e-3 * i + 0.01 * nd(gen);
  CHECK_FALSE(equilibration_check(ramp, 0).equilibrated);

  // late jump between two density plateaus
  std::vector<double> jump(2500);
  for (std::size_t i = 0; i < jump.size(); ++i) jump[i] = (i < 1700 ? 2.20 : 2.45) + 0.02 * nd(gen);
  const auto check = equilibration_check(jump, 0);
  CHECK_FALSE(check.equilibrated);
  CHECK(check.drift_sigma > kDriftThresholdSigma);

  // burn-in is discarded before testing
  std::vector<double> settled(2250, 1.0);
  for (std::size_t i = 0; i < 250; ++i) settled[i] = 5.0;
  for (std::size_t i = 250; i < settled.size(); ++i) settled[i] += 0.01 * nd(gen);
  CHECK(equilibration_check(settled, 250).equilibrated);
  CHECK_THROWS_AS(equilibration_check(settled, 2240), std::invalid_argument);
}

TEST_CASE("z grid") {
  const auto g = make_z_grid(1.5, 1.9, 0.1);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 1.5);
  CHECK(g.back() == 1.9);
  CHECK(g[3] == 1.8);
  CHECK(make_z_grid(2.0, 2.0, 0.1).size() == 1);
}

TEST_CASE("scan seeds depend on values only") {
  const auto a = scan_chain_seed(1, 32, 1.7, InitialCondition::Ordered);
  CHECK(a == scan_chain_seed(1, 32, 1.7, InitialCondition::Ordered));
  CHECK(a != scan_chain_seed(1, 32, 1.7, InitialCondition::DisorderedRandom));
  CHECK(a != scan_chain_seed(1, 64, 1.7, InitialCondition::Ordered));
  CHECK(a != scan_chain_seed(1, 32, 1.8, InitialCondition::Ordered));
  CHECK(a != scan_chain_seed(2, 32, 1.7, InitialCondition::Ordered));
}

TEST_CASE("synthetic first-order data") {
  std::vector<ScanPoint> pts;
  for (double z : {2.4, 2.5, 2.6}) {
    const bool gap = z == 2.5;
    pts.push_back(synthetic(32, z, InitialCondition::Ordered, gap ? 2.30 : 2.0, 0.01, 1, 0.1));
    pts.push_back(synthetic(32, z, InitialCondition::DisorderedRandom, 2.00, 0.01, 1, 0.1));
  }
  const auto v = classify_transition(pts, {level(32, 0.1, {2.4, 2.5, 2.6})});
  CHECK(v.order == TransitionOrder::First);
  CHECK(v.evidence == TransitionEvidence::DensityGap);
  CHECK(v.z_c == doctest::Approx(2.5));
  CHECK(v.error == doctest::Approx(0.1));
  CHECK(v.coexistence == std::vector<double>{2.5});
}

TEST_CASE("synthetic second-order data") {
  std::vector<ScanPoint> pts;
  const std::vector<double> zs{1.5, 1.6, 1.7, 1.8, 1.9};
  const std::vector<double> rp16{1.2, 2.0, 3.0, 2.0, 1.2};
  const std::vector<double> rp32{1.2, 2.5, 5.0, 2.6, 1.25};
  for (double L : {16.0, 32.0})
    for (std::size_t k = 0; k < zs.size(); ++k)
      for (auto init : {InitialCondition::Ordered, InitialCondition::DisorderedRandom})
        pts.push_back(synthetic(L, zs[k], init, zs[k], 0.01, L == 16 ? rp16[k] : rp32[k], 0.05));
  const std::vector<ScanLevel> levels{level(16, 0.1, zs), level(32, 0.1, zs)};
  const auto v = classify_transition(pts, levels);
  CHECK(v.order == TransitionOrder::Second);
  CHECK(v.evidence == TransitionEvidence::RhoPrimePeak);
  CHECK(v.z_c == doctest::Approx(1.7));
  REQUIRE(v.peaks.size() == 2);
  CHECK(v.peaks[0].height < v.peaks[1].height);
  // rho' of the two boxes differs at 1.8 and agrees from 1.9 on
  CHECK(v.error == doctest::Approx(0.2));

  // invariance under reversed input order
  auto reversed = pts;
  std::reverse(reversed.begin(), reversed.end());
  const auto w = classify_transition(reversed, {levels[1], levels[0]});
  CHECK(w.z_c == v.z_c);
  CHECK(w.error == v.error);
  CHECK(w.order == v.order);
  CHECK(io::scan_csv(w) == io::scan_csv(v));
}

TEST_CASE("non-equilibrated branches never enter the verdict") {
  std::vector<ScanPoint> pts;
  pts.push_back(synthetic(16, 1.0, InitialCondition::Ordered, 2.3, 0.01, 50, 1, false));
  pts.push_back(synthetic(16, 1.0, InitialCondition::DisorderedRandom, 2.0, 0.01, 1, 0.1));
  pts.push_back(synthetic(16, 1.1, InitialCondition::Ordered, 2.0, 0.01, 2, 0.1));
  pts.push_back(synthetic(16, 1.1, InitialCondition::DisorderedRandom, 2.0, 0.01, 2, 0.1));
  pts.push_back(synthetic(16, 1.2, InitialCondition::Ordered, 2.0, 0.01, 9, 0.1, false));
  pts.push_back(synthetic(16, 1.2, InitialCondition::DisorderedRandom, 2.0, 0.01, 9, 0.1, false));
  const auto v = classify_transition(pts, {level(16, 0.1, {1.0, 1.1, 1.2})});
  CHECK(v.order == TransitionOrder::Second);
  CHECK(v.coexistence.empty());
  CHECK(v.inconclusive == std::vector<double>{1.2});
  CHECK(v.z_c == doctest::Approx(1.1));
  CHECK(v.peaks.at(0).height == 2.0);
}

TEST_CASE("small scan is identical serially and in parallel") {
  ScanConfig c;
  c.q = 2;
  c.z_min = 0.8;
  c.z_max = 1.2;
  c.z_step = 0.2;
  c.L_schedule = {8, 10};
  c.n0 = 5;
  c.nm = 40;
  c.refine = 1;
  c.threads = 1;
  const auto serial = scan_transition(c);
  c.threads = 3;
  const auto parallel = scan_transition(c);
  CHECK(io::scan_csv(serial) == io::scan_csv(parallel));
  CHECK(io::key_values(io::verdict_summary(c, serial)) ==
        io::key_values(io::verdict_summary(c, parallel)));
  REQUIRE(serial.levels.size() == 2);
  CHECK(serial.levels[1].z_step == doctest::Approx(0.1));
  CHECK(serial.points.size() == 2 * (serial.levels[0].z_values.size() + serial.levels[1].z_values.size()));
  c.L_schedule.clear();
  CHECK_THROWS_AS(scan_transition(c), std::invalid_argument);
}

TEST_CASE("oracle run") {
  OracleRunConfig c;
  c.params.q = 2;
  c.params.z = 1.0;
  c.params.L = 3;
  c.n0 = 10;
  c.nm = 100;
  const auto r = run_oracle(c);
  CHECK(r.series.size() == 100);
  CHECK(std::isnan(r.series.front().dperc));
  CHECK(r.counters.proposed[0] > 0);
  CHECK(r.summary.rho.mean > 0.0);
}

TEST_CASE("output formats") {
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(2.0) == "2");
  CHECK(io::format_double(std::nan("")) == "nan");
  CHECK(io::format_double(-INFINITY) == "-inf");

  std::vector<SweepRecord> s{{7, 3, 0.5, 1.0 / 3.0, 0.0}};
  CHECK(io::series_csv(s) == "sweep,N,rho,gamma,dperc\n7,3,0.5,0.3333333333333333,0\n");

  std::array<double, kHistogramBins> h{};
  h[99] = 1.0;
  const auto hist = io::histogram_csv(h);
  CHECK(hist.rfind("bin_low,bin_high,weight\n0,0.01,0\n", 0) == 0);
  CHECK(hist.find("0.99,1,1\n") != std::string::npos);
  std::array<double, kSmallClusterSizes> sm{};
  sm[0] = 1.0;
  CHECK(io::small_clusters_csv(sm).rfind("size,weight\n1,1\n2,0\n", 0) == 0);
  CHECK(io::key_values({{"a", "1"}, {"b", "x"}}) == "a=1\nb=x\n");
}

TEST_CASE("snapshot round trip") {
  ColoredConfiguration c;
  c.L = 12.5;
  c.q = 3;
  c.particles = {{Position(0.1, 11.9, 12.5), 1}, {Position(5.123456789012345, 2, 12.5), 3}};
  const auto text = io::configuration_csv(c);
  const auto back = io::parse_configuration_csv(text);
  CHECK(back.L == c.L);
  CHECK(back.q == c.q);
  CHECK(back.particles == c.particles);
  CHECK_THROWS_AS(io::parse_configuration_csv("x,y,type\n"), std::runtime_error);
  CHECK_THROWS_AS(io::parse_configuration_csv("# L=5 q=2\nx,y,type\n1,1,3\n"), std::runtime_error);
  CHECK_THROWS_AS(io::parse_configuration_csv("# L=5 q=2\nx,y,type\n1,oops,1\n"), std::runtime_error);
  CHECK_THROWS_AS(io::read_file("/nonexistent/dir/file"), std::runtime_error);
  CHECK_THROWS_AS(io::write_file("/nonexistent/dir/file", "x"), std::runtime_error);
}
