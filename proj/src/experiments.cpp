#include "minormax/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "minormax/errors.hpp"
#include "minormax/format.hpp"
#include "minormax/minor_stats.hpp"

namespace minormax {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::string law_text(const std::optional<LimitLaw>& law) { return law ? describe(*law) : std::string("auto"); }

}  // namespace

void validate(const ExperimentConfig& config) {
  validate(config.ensemble);
  if (config.replicates < 1) {
    throw DomainError("ExperimentConfig: replicates must be >= 1");
  }
  if (config.threads < 0) {
    throw DomainError("ExperimentConfig: threads must be >= 0 (0 = auto)");
  }
  if (config.statistic == Statistic::kDiagMax) {
    const auto* goe = std::get_if<DeformedGoe>(&config.ensemble);
    if (goe == nullptr || !(goe->xi > 0.0)) {
      throw DomainError("ExperimentConfig: the diagonal statistic needs a deformed GOE with xi > 0");
    }
  }
  for (std::int64_t size : config.grid) {
    validate(with_size(config, size).ensemble);
  }
}

std::string canonical_text(const ExperimentConfig& config) {
  std::ostringstream out;
  std::visit(Overloaded{[&](const DeformedGoe& g) {
                          out << "ensemble=deformed_goe\n"
                              << "xi=" << shortest(g.xi) << "\n"
                              << "p=" << g.p << "\n";
                        },
                        [&](const Wishart& w) {
                          out << "ensemble=wishart\n"
                              << "n=" << w.n << "\n"
                              << "p=" << w.p << "\n"
                              << "dist=" << entry_name(w.dist) << "\n";
                          if (const auto* t = std::get_if<ScaledTable>(&w.dist)) {
                            out << "table=";
                            for (std::size_t k = 0; k < t->magnitudes.size(); ++k) {
                              out << (k ? ";" : "") << shortest(t->magnitudes[k]) << ":"
                                  << shortest(t->probabilities[k]);
                            }
                            out << "\n";
                          }
                        }},
             config.ensemble);
  out << "statistic=" << (config.statistic == Statistic::kPairMax ? "pair_max" : "diag_max") << "\n"
      << "replicates=" << config.replicates << "\n"
      << "seed=" << config.master_seed << "\n"
      << "law=" << law_text(config.law_override) << "\n"
      << "grid=";
  for (std::size_t k = 0; k < config.grid.size(); ++k) {
    out << (k ? "," : "") << config.grid[k];
  }
  out << "\n";
  return out.str();
}

std::string config_hash(const ExperimentConfig& config) { return hex64(fnv1a64(canonical_text(config))); }

LimitLaw resolve_law(const ExperimentConfig& config) {
  if (config.law_override) {
    return *config.law_override;
  }
  if (config.statistic == Statistic::kDiagMax) {
    return Gumbel{};
  }
  return law_for(ensemble_xi(config.ensemble));
}

ReplicateStat run_replicate(const ExperimentConfig& config, std::uint64_t index) {
  const SeedSpec seed{config.master_seed, index};
  return std::visit(
      Overloaded{[&](const DeformedGoe& g) -> ReplicateStat {
                   if (config.statistic == Statistic::kDiagMax) {
                     const double raw = diag_max_raw(g.xi, g.p, seed);
                     const NormConstants k = norm_constants(g.xi, static_cast<double>(g.p));
                     return {raw, k.alpha_p * (raw - k.beta_p)};
                   }
                   const PairMaxResult r = goe_pair_max(g.xi, g.p, seed);
                   return {r.raw_max, r.normalized};
                 },
                 [&](const Wishart& w) -> ReplicateStat {
                   const PairMaxResult r = wishart_pair_max(w.n, w.p, w.dist, seed);
                   return {r.raw_max, r.normalized};
                 }},
      config.ensemble);
}

std::vector<ReplicateStat> run_mc(const ExperimentConfig& config) {
  validate(config);
  const auto total = static_cast<std::size_t>(config.replicates);
  std::vector<ReplicateStat> results(total);

  unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t index = next.fetch_add(1, std::memory_order_relaxed);
      if (index >= total || failed.load(std::memory_order_relaxed)) {
        return;
      }
      try {
        results[index] = run_replicate(config, index);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(work);
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
  return results;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) {
    throw DomainError("ks_distance: empty sample");
  }
  std::sort(samples.begin(), samples.end());
  const double r = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    const double below = f - static_cast<double>(i) / r;
    const double above = static_cast<double>(i + 1) / r - f;
    d = std::max({d, below, above});
  }
  return std::clamp(d, 0.0, 1.0);
}

double ks_distance(std::vector<double> samples, const LimitLaw& law) {
  return ks_distance(std::move(samples), [&law](double z) { return law_cdf(law, z); });
}

double sample_median(std::vector<double> samples) {
  if (samples.empty()) {
    throw DomainError("sample_median: empty sample");
  }
  std::sort(samples.begin(), samples.end());
  const std::size_t m = samples.size() / 2;
  return samples.size() % 2 == 1 ? samples[m] : 0.5 * (samples[m - 1] + samples[m]);
}

std::vector<double> normalized_values(const std::vector<ReplicateStat>& stats) {
  std::vector<double> out;
  out.reserve(stats.size());
  for (const ReplicateStat& s : stats) out.push_back(s.normalized);
  return out;
}

ExperimentConfig with_size(const ExperimentConfig& config, std::int64_t size) {
  ExperimentConfig sized = config;
  sized.grid.clear();
  std::visit(Overloaded{[size](DeformedGoe& g) { g.p = size; }, [size](Wishart& w) { w.n = size; }},
             sized.ensemble);
  return sized;
}

std::vector<TrendPoint> run_trend(const ExperimentConfig& config) {
  if (config.grid.empty()) {
    throw DomainError("run_trend: empty grid");
  }
  std::vector<TrendPoint> points;
  for (std::int64_t size : config.grid) {
    const ExperimentConfig sized = with_size(config, size);
    const std::vector<double> values = normalized_values(run_mc(sized));
    points.push_back({size, ks_distance(values, resolve_law(sized)), sample_median(values)});
  }
  return points;
}

}  // namespace minormax
