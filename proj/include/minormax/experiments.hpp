#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "minormax/ensembles.hpp"
#include "minormax/limit_laws.hpp"

namespace minormax {

enum class Statistic {
  kPairMax,  ///< max over 2x2 principal minors
  kDiagMax,  ///< max over 1x1 minors (GOE diagonal only)
};

struct ExperimentConfig {
  EnsembleSpec ensemble = DeformedGoe{};
  std::int64_t replicates = 1;
  std::uint64_t master_seed = 0;
  /// 0 means one worker per hardware thread.
  int threads = 1;
  std::optional<LimitLaw> law_override;
  std::string output_path;
  /// Trend studies: p values for the GOE, n values for Wishart.
  std::vector<std::int64_t> grid;
  Statistic statistic = Statistic::kPairMax;
};

/// Throws DomainError on an invalid config.
void validate(const ExperimentConfig& config);

/// One line per field that affects the statistics (threads and
/// output_path excluded), in fixed order.
std::string canonical_text(const ExperimentConfig& config);

/// Hex FNV-1a 64 of canonical_text.
std::string config_hash(const ExperimentConfig& config);

/// Override if present, else law_for(xi) (Gumbel for the diagonal statistic).
LimitLaw resolve_law(const ExperimentConfig& config);

struct ReplicateStat {
  double raw = 0.0;
  double normalized = 0.0;
};

/// Statistic of replicate `index` under the config's ensemble.
ReplicateStat run_replicate(const ExperimentConfig& config, std::uint64_t index);

/// All replicates, index-ordered. Workers pull replicate indices from a
/// shared counter and write into a pre-sized vector, so the output is the
/// same for every thread count. The first R values do not change when
/// replicates grows beyond R.
std::vector<ReplicateStat> run_mc(const ExperimentConfig& config);

/// One-sample two-sided Kolmogorov-Smirnov distance
///   max_i max(F(x_(i)) - (i-1)/R, i/R - F(x_(i))).
/// DomainError on an empty sample.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);
double ks_distance(std::vector<double> samples, const LimitLaw& law);

double sample_median(std::vector<double> samples);

std::vector<double> normalized_values(const std::vector<ReplicateStat>& stats);

struct TrendPoint {
  std::int64_t size = 0;  ///< p (GOE) or n (Wishart)
  double ks = 0.0;
  double median = 0.0;
};

/// run_mc at every grid value (p for the GOE, n for Wishart) with the
/// same seed family; KS against resolve_law of each sized config.
std::vector<TrendPoint> run_trend(const ExperimentConfig& config);

/// Copy of config with the grid dimension set to `size`.
ExperimentConfig with_size(const ExperimentConfig& config, std::int64_t size);

}  // namespace minormax
