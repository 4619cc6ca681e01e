#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "minormax/experiments.hpp"

namespace minormax {

struct GofReport {
  double ks = 0.0;
  std::int64_t n_samples = 0;
  LimitLaw law = Gumbel{};
  std::vector<std::pair<double, double>> ecdf_grid;
  std::vector<std::pair<double, double>> theory_grid;
  double sample_median = 0.0;
  std::string config_hash;
};

/// KS, median and 101-point ECDF/theory grids spanning the sample range.
GofReport make_report(const std::vector<ReplicateStat>& stats, const LimitLaw& law, const ExperimentConfig& config);

/// CSV path next to a JSON report: run.json -> run.csv.
std::filesystem::path samples_path(const std::filesystem::path& report_path);

/// Header `replicate,raw_stat,normalized_stat`, shortest round-trip
/// decimals, LF line endings.
std::string samples_csv(const std::vector<ReplicateStat>& stats);
std::vector<ReplicateStat> parse_samples_csv(const std::string& text);
std::vector<ReplicateStat> read_samples_csv(const std::filesystem::path& path);

/// JSON text with fixed key order. `timestamp` is the only field that
/// differs between identical runs; pass an empty string to omit it.
std::string report_json(const GofReport& report, const ExperimentConfig& config, const std::string& timestamp);

/// Writes config.output_path (JSON) and samples_path(config.output_path)
/// (CSV). Throws std::runtime_error on I/O failure.
GofReport write_report(const std::vector<ReplicateStat>& stats, const LimitLaw& law, const ExperimentConfig& config);

}  // namespace minormax
