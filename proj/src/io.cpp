#include "cpotts/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace cpotts::io {

namespace {

std::string fmt(std::uint64_t v) { return std::to_string(v); }
std::string fmt_bool(bool b) { return b ? "true" : "false"; }

double parse_double(std::string_view s, const std::string& what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error("cannot parse " + what + " from '" + std::string(s) + "'");
  return v;
}

void add_blocking(KeyValues& kv, const std::string& name, const BlockingResult& r) {
  kv.emplace_back("mean_" + name, format_double(r.mean));
  kv.emplace_back("stderr_" + name, format_double(r.error));
}

void add_params(KeyValues& kv, const ModelParams& p) {
  kv.emplace_back("q", std::to_string(p.q));
  kv.emplace_back("z", format_double(p.z));
  kv.emplace_back("T", format_double(p.T));
  kv.emplace_back("L", format_double(p.L));
}

void add_stats(KeyValues& kv, const SummaryStats& s) {
  kv.emplace_back("n0", fmt(s.n0));
  kv.emplace_back("nm", fmt(s.nm));
  add_blocking(kv, "N", s.N);
  add_blocking(kv, "rho", s.rho);
  add_blocking(kv, "gamma", s.gamma);
  add_blocking(kv, "dperc", s.dperc);
  kv.emplace_back("rho_prime", format_double(s.rho_prime.value));
  kv.emplace_back("stderr_rho_prime", format_double(s.rho_prime.error));
  kv.emplace_back("blocking_truncated", fmt_bool(s.rho.truncated));
  kv.emplace_back("equilibrated", fmt_bool(s.equilibration.equilibrated));
  kv.emplace_back("drift_sigma", format_double(s.equilibration.drift_sigma));
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

std::string series_csv(std::span<const SweepRecord> series) {
  std::string out = "sweep,N,rho,gamma,dperc\n";
  for (const auto& r : series) {
    out += fmt(r.sweep);
    out += ',';
    out += fmt(r.N);
    out += ',';
    out += format_double(r.rho);
    out += ',';
    out += format_double(r.gamma);
    out += ',';
    out += format_double(r.dperc);
    out += '\n';
  }
  return out;
}

std::string histogram_csv(const std::array<double, kHistogramBins>& histogram) {
  std::string out = "bin_low,bin_high,weight\n";
  for (std::size_t k = 0; k < kHistogramBins; ++k)
    out += format_double(static_cast<double>(k) / 100.0) + ',' +
           format_double(static_cast<double>(k + 1) / 100.0) + ',' +
           format_double(histogram[k]) + '\n';
  return out;
}

std::string small_clusters_csv(const std::array<double, kSmallClusterSizes>& weights) {
  std::string out = "size,weight\n";
  for (std::size_t s = 0; s < kSmallClusterSizes; ++s)
    out += std::to_string(s + 1) + ',' + format_double(weights[s]) + '\n';
  return out;
}

std::string key_values(const KeyValues& record) {
  std::string out;
  for (const auto& [k, v] : record) out += k + '=' + v + '\n';
  return out;
}

KeyValues run_summary(const RunConfig& config, const SummaryStats& stats) {
  KeyValues kv;
  kv.emplace_back("command", "run");
  add_params(kv, config.params);
  kv.emplace_back("init", std::string(to_string(config.init)));
  kv.emplace_back("variant", std::string(to_string(config.variant)));
  kv.emplace_back("burnin", fmt(config.n0));
  kv.emplace_back("sweeps", fmt(config.nm));
  kv.emplace_back("seed", fmt(config.seed));
  add_stats(kv, stats);
  return kv;
}

KeyValues oracle_summary(const OracleRunConfig& config, const OracleResult& result) {
  KeyValues kv;
  kv.emplace_back("command", "oracle");
  add_params(kv, config.params);
  kv.emplace_back("burnin", fmt(config.n0));
  kv.emplace_back("sweeps", fmt(config.nm));
  kv.emplace_back("steps_per_sweep", fmt(config.steps_per_sweep));
  kv.emplace_back("seed", fmt(config.seed));
  add_stats(kv, result.summary);
  const char* names[] = {"birth", "death", "flip"};
  for (std::size_t k = 0; k < 3; ++k) {
    kv.emplace_back(std::string("proposed_") + names[k], fmt(result.counters.proposed[k]));
    kv.emplace_back(std::string("accepted_") + names[k], fmt(result.counters.accepted[k]));
  }
  return kv;
}

std::string scan_csv(const TransitionVerdict& verdict) {
  std::string out =
      "L,z,init,mean_rho,stderr_rho,rho_prime,stderr_rho_prime,mean_gamma,stderr_gamma,"
      "mean_dperc,stderr_dperc,equilibrated,drift_sigma\n";
  for (const auto& p : verdict.points) {
    const auto& s = p.stats;
    out += format_double(p.L) + ',' + format_double(p.z) + ',' + std::string(to_string(p.init)) +
           ',' + format_double(s.rho.mean) + ',' + format_double(s.rho.error) + ',' +
           format_double(s.rho_prime.value) + ',' + format_double(s.rho_prime.error) + ',' +
           format_double(s.gamma.mean) + ',' + format_double(s.gamma.error) + ',' +
           format_double(s.dperc.mean) + ',' + format_double(s.dperc.error) + ',' +
           fmt_bool(s.equilibration.equilibrated) + ',' +
           format_double(s.equilibration.drift_sigma) + '\n';
  }
  return out;
}

KeyValues verdict_summary(const ScanConfig& config, const TransitionVerdict& verdict) {
  auto join = [](const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ";" : "") + format_double(xs[i]);
    return s;
  };
  KeyValues kv;
  kv.emplace_back("command", "scan");
  kv.emplace_back("q", std::to_string(config.q));
  kv.emplace_back("T", format_double(config.T));
  kv.emplace_back("z_min", format_double(config.z_min));
  kv.emplace_back("z_max", format_double(config.z_max));
  kv.emplace_back("z_step", format_double(config.z_step));
  kv.emplace_back("L_schedule", join(config.L_schedule));
  kv.emplace_back("refine", std::to_string(config.refine));
  kv.emplace_back("burnin", fmt(config.n0));
  kv.emplace_back("sweeps", fmt(config.nm));
  kv.emplace_back("seed", fmt(config.seed));
  kv.emplace_back("variant", std::string(to_string(config.variant)));
  kv.emplace_back("order", std::string(to_string(verdict.order)));
  kv.emplace_back("evidence", std::string(to_string(verdict.evidence)));
  kv.emplace_back("z_c", format_double(verdict.z_c));
  kv.emplace_back("z_c_error", format_double(verdict.error));
  kv.emplace_back("coexistence", join(verdict.coexistence));
  kv.emplace_back("inconclusive", join(verdict.inconclusive));
  for (const auto& p : verdict.peaks) {
    const std::string tag = "peak_L" + format_double(p.L);
    kv.emplace_back(tag + "_z", format_double(p.z));
    kv.emplace_back(tag + "_height", format_double(p.height));
    kv.emplace_back(tag + "_stderr", format_double(p.error));
  }
  return kv;
}

std::string dissociation_csv(const DissociationReport& report) {
  std::string out = "root,size,free_volume,stderr_free_volume,delta,stderr_delta,defined\n";
  for (const auto& c : report.clusters) {
    out += std::to_string(c.root) + ',' + std::to_string(c.size) + ',' +
           format_double(c.free_volume.value) + ',' + format_double(c.free_volume.error) + ',' +
           format_double(c.delta.value) + ',' + format_double(c.delta.error) + ',' +
           fmt_bool(c.delta.defined) + '\n';
  }
  return out;
}

KeyValues dissociation_summary(const DissociationScanOptions& options,
                               const DissociationReport& report) {
  KeyValues kv;
  kv.emplace_back("command", "dissoc");
  kv.emplace_back("N0", fmt(options.n0));
  kv.emplace_back("trials", fmt(options.trials));
  kv.emplace_back("volume_samples", fmt(options.volume_samples));
  kv.emplace_back("budget", fmt(options.budget));
  kv.emplace_back("seed", fmt(options.seed));
  kv.emplace_back("clusters", fmt(report.clusters.size()));
  kv.emplace_back("max_delta", format_double(report.max_delta));
  kv.emplace_back("large_cluster_event", fmt_bool(report.large_cluster_event));
  std::size_t undefined = 0;
  for (const auto& c : report.clusters) undefined += c.delta.defined ? 0 : 1;
  kv.emplace_back("undefined_estimates", fmt(undefined));
  return kv;
}

std::string configuration_csv(const ColoredConfiguration& config) {
  std::string out = "# L=" + format_double(config.L) + " q=" + std::to_string(config.q) + "\n";
  out += "x,y,type\n";
  for (const auto& p : config.particles)
    out += format_double(p.pos.x) + ',' + format_double(p.pos.y) + ',' +
           std::to_string(p.type) + '\n';
  return out;
}

ColoredConfiguration parse_configuration_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  ColoredConfiguration config;
  if (!std::getline(in, line) || line.rfind("# L=", 0) != 0)
    throw std::runtime_error("snapshot must start with '# L=<L> q=<q>'");
  const auto qpos = line.find(" q=");
  if (qpos == std::string::npos) throw std::runtime_error("snapshot header lacks q");
  config.L = parse_double(std::string_view(line).substr(4, qpos - 4), "L");
  config.q = static_cast<int>(parse_double(std::string_view(line).substr(qpos + 3), "q"));
  if (!(config.L > 0.0) || config.q < 1) throw std::runtime_error("invalid snapshot header");
  if (!std::getline(in, line) || line != "x,y,type")
    throw std::runtime_error("snapshot column header must be 'x,y,type'");
  std::size_t row = 2;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw std::runtime_error("malformed snapshot row " + std::to_string(row));
    const std::string_view sv(line);
    const double x = parse_double(sv.substr(0, c1), "x");
    const double y = parse_double(sv.substr(c1 + 1, c2 - c1 - 1), "y");
    const double t = parse_double(sv.substr(c2 + 1), "type");
    if (t < 1 || t > config.q) throw std::runtime_error("type out of range in row " + std::to_string(row));
    config.particles.push_back(Particle{Position(x, y, config.L), static_cast<Species>(t)});
  }
  return config;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cpotts::io
