// Command-line driver: run, scan, dissoc and oracle subcommands.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cpotts/dissociation.hpp"
#include "cpotts/experiment.hpp"
#include "cpotts/io.hpp"

using namespace cpotts;

namespace {

struct ModelOptions {
  int q = 2;
  double z = 1.0;
  double T = 0.0;
  double L = 16.0;
  std::uint64_t sweeps = 2500;
  std::uint64_t burnin = 250;
  std::uint64_t seed = 1;
  std::string init = "ordered";
  std::string variant = "systematic";
  std::string out = "cpotts";

  ModelParams params() const {
    ModelParams p;
    p.q = q;
    p.z = z;
    p.T = T;
    p.L = L;
    return p;
  }

  RunConfig run_config() const {
    RunConfig c;
    c.params = params();
    c.init = parse_initial_condition(init);
    c.variant = parse_sweep_variant(variant);
    c.n0 = burnin;
    c.nm = sweeps;
    c.seed = seed;
    return c;
  }
};

void add_model_options(CLI::App* cmd, ModelOptions& o, bool with_init) {
  cmd->add_option("--q", o.q, "Number of particle types")->capture_default_str();
  cmd->add_option("--z", o.z, "Activity")->capture_default_str();
  cmd->add_option("--T", o.T, "Temperature (0 = Widom-Rowlinson)")->capture_default_str();
  cmd->add_option("--L", o.L, "Box side")->capture_default_str();
  cmd->add_option("--sweeps", o.sweeps, "Measured sweeps (multiple of 10)")->capture_default_str();
  cmd->add_option("--burnin", o.burnin, "Burn-in sweeps")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  if (with_init) {
    cmd->add_option("--init", o.init, "Initial condition")
        ->check(CLI::IsMember({"ordered", "disordered", "crystal"}))
        ->capture_default_str();
    cmd->add_option("--variant", o.variant, "Sweep variant")
        ->check(CLI::IsMember({"systematic", "random"}))
        ->capture_default_str();
  }
  cmd->add_option("--out", o.out, "Output path prefix")->capture_default_str();
}

std::vector<double> parse_schedule(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("bad L schedule entry '" + item + "'");
    }
  }
  return out;
}

int report_error(const char* category, const std::string& message) {
  std::cerr << "error: " << category << ": " << message << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuum Potts / Widom-Rowlinson simulator"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML/INI file");

  ModelOptions run_opts;
  auto* run = app.add_subcommand("run", "Run one chain and write its series and summary");
  add_model_options(run, run_opts, true);

  ModelOptions scan_opts;
  double z_min = 1.0, z_max = 2.0, z_step = 0.1;
  std::string schedule = "8,16";
  int refine = 0;
  unsigned threads = 0;
  bool single_init = false;
  auto* scan = app.add_subcommand("scan", "Scan z over box sizes and classify the transition");
  add_model_options(scan, scan_opts, false);
  scan->add_option("--variant", scan_opts.variant, "Sweep variant")
      ->check(CLI::IsMember({"systematic", "random"}))
      ->capture_default_str();
  scan->add_option("--z-min", z_min)->capture_default_str();
  scan->add_option("--z-max", z_max)->capture_default_str();
  scan->add_option("--z-step", z_step)->capture_default_str();
  scan->add_option("--L-schedule", schedule, "Comma-separated box sides")->capture_default_str();
  scan->add_option("--refine", refine, "Box doublings that narrow the z grid")->capture_default_str();
  scan->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
  scan->add_flag("--ordered-only", single_init, "Skip the disordered branch");

  ModelOptions dissoc_opts;
  std::string snapshot;
  DissociationScanOptions dopts;
  auto* dissoc = app.add_subcommand(
      "dissoc", "Dissociation report of a T=0 snapshot (read, or generated by a chain)");
  add_model_options(dissoc, dissoc_opts, true);
  dissoc->add_option("--snapshot", snapshot, "Configuration file (x,y,type)");
  dissoc->add_option("--N0", dopts.n0, "Large-cluster threshold")->capture_default_str();
  dissoc->add_option("--trials", dopts.trials, "Resampling trials per cluster")->capture_default_str();
  dissoc->add_option("--volume-samples", dopts.volume_samples, "Hit-or-miss samples per cluster")
      ->capture_default_str();
  dissoc->add_option("--budget", dopts.budget, "Rejection proposals per point")->capture_default_str();

  ModelOptions oracle_opts;
  oracle_opts.sweeps = 100000;
  oracle_opts.burnin = 1000;
  oracle_opts.L = 6.0;
  std::uint64_t steps = 0;
  auto* oracle_cmd = app.add_subcommand("oracle", "Metropolis reference run of the Gibbs measure");
  add_model_options(oracle_cmd, oracle_opts, false);
  oracle_cmd->add_option("--steps", steps, "Moves per measurement (0 = 3 z L^2)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) {
      const auto config = run_opts.run_config();
      const auto result = run_chain(config);
      const std::string& p = run_opts.out;
      io::write_file(p + ".series.csv", io::series_csv(result.series));
      io::write_file(p + ".summary.txt", io::key_values(io::run_summary(config, result.summary)));
      io::write_file(p + ".hist.csv", io::histogram_csv(result.histogram));
      io::write_file(p + ".small.csv", io::small_clusters_csv(result.small_clusters));
      io::write_file(p + ".config.csv", io::configuration_csv(result.final_config));
    } else if (*scan) {
      ScanConfig config;
      config.q = scan_opts.q;
      config.T = scan_opts.T;
      config.z_min = z_min;
      config.z_max = z_max;
      config.z_step = z_step;
      config.L_schedule = parse_schedule(schedule);
      config.both_inits = !single_init;
      config.refine = refine;
      config.n0 = scan_opts.burnin;
      config.nm = scan_opts.sweeps;
      config.seed = scan_opts.seed;
      config.variant = parse_sweep_variant(scan_opts.variant);
      config.threads = threads;
      const auto verdict = scan_transition(config);
      io::write_file(scan_opts.out + ".scan.csv", io::scan_csv(verdict));
      io::write_file(scan_opts.out + ".verdict.txt",
                     io::key_values(io::verdict_summary(config, verdict)));
    } else if (*dissoc) {
      dopts.seed = dissoc_opts.seed;
      ColoredConfiguration config;
      if (!snapshot.empty()) {
        config = io::parse_configuration_csv(io::read_file(snapshot));
      } else {
        auto rc = dissoc_opts.run_config();
        if (rc.params.T != 0.0) throw std::invalid_argument("dissociation analysis requires T = 0");
        config = run_chain(rc).final_config;
        io::write_file(dissoc_opts.out + ".config.csv", io::configuration_csv(config));
      }
      if (!config.hard_core_valid())
        throw std::invalid_argument("snapshot violates the hard-core constraint");
      const auto report = scan_clusters(config, dopts);
      io::write_file(dissoc_opts.out + ".dissoc.csv", io::dissociation_csv(report));
      io::write_file(dissoc_opts.out + ".dissoc_summary.txt",
                     io::key_values(io::dissociation_summary(dopts, report)));
    } else if (*oracle_cmd) {
      OracleRunConfig config;
      config.params = oracle_opts.params();
      config.n0 = oracle_opts.burnin;
      config.nm = oracle_opts.sweeps;
      config.steps_per_sweep = steps;
      config.seed = oracle_opts.seed;
      const auto result = run_oracle(config);
      io::write_file(oracle_opts.out + ".series.csv", io::series_csv(result.series));
      io::write_file(oracle_opts.out + ".summary.txt",
                     io::key_values(io::oracle_summary(config, result)));
    }
  } catch (const std::invalid_argument& e) {
    return report_error("invalid-config", e.what());
  } catch (const std::runtime_error& e) {
    return report_error("io", e.what());
  } catch (const std::exception& e) {
    return report_error("internal", e.what());
  }
  return 0;
}
