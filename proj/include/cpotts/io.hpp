#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "cpotts/dissociation.hpp"
#include "cpotts/experiment.hpp"
#include "cpotts/observables.hpp"

namespace cpotts::io {

/// Shortest round-trip decimal form, locale independent; "nan"/"inf" for
/// non-finite values.
std::string format_double(double v);

/// Ordered key=value record, one pair per line.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

std::string series_csv(std::span<const SweepRecord> series);
std::string histogram_csv(const std::array<double, kHistogramBins>& histogram);
std::string small_clusters_csv(const std::array<double, kSmallClusterSizes>& weights);
std::string key_values(const KeyValues& record);

KeyValues run_summary(const RunConfig& config, const SummaryStats& stats);
KeyValues oracle_summary(const OracleRunConfig& config, const OracleResult& result);

std::string scan_csv(const TransitionVerdict& verdict);
KeyValues verdict_summary(const ScanConfig& config, const TransitionVerdict& verdict);

std::string dissociation_csv(const DissociationReport& report);
KeyValues dissociation_summary(const DissociationScanOptions& options,
                               const DissociationReport& report);

/// Snapshot format: "# L=<L> q=<q>" then "x,y,type" rows.
std::string configuration_csv(const ColoredConfiguration& config);
ColoredConfiguration parse_configuration_csv(const std::string& text);

/// Writes the file, throwing std::runtime_error naming the path on failure.
void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace cpotts::io
