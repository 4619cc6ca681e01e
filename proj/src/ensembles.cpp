#include "minormax/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "minormax/errors.hpp"

namespace minormax {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kSqrt3 = 1.732050807568877293527446341505872367;

}  // namespace

const NormalSampler::Table& NormalSampler::Table::instance() {
  static const Table table = [] {
    Table t;
    double f = std::exp(-0.5 * kR * kR);
    t.x[0] = kV / f;
    t.x[1] = kR;
    t.x[kLayers] = 0.0;
    for (int i = 2; i < kLayers; ++i) {
      t.x[i] = std::sqrt(-2.0 * std::log(kV / t.x[i - 1] + f));
      f = std::exp(-0.5 * t.x[i] * t.x[i]);
    }
    for (int i = 0; i < kLayers; ++i) {
      t.ratio[i] = t.x[i + 1] / t.x[i];
    }
    return t;
  }();
  return table;
}

// ---------------------------------------------------------------------------

EntryDistribution normalized(EntryDistribution dist) {
  if (auto* table = std::get_if<ScaledTable>(&dist)) {
    if (table->magnitudes.empty() || table->magnitudes.size() != table->probabilities.size()) {
      throw DomainError("ScaledTable: magnitudes and probabilities must be nonempty and equally long");
    }
    double mass = 0.0;
    for (std::size_t k = 0; k < table->magnitudes.size(); ++k) {
      if (!(table->magnitudes[k] >= 0.0) || !(table->probabilities[k] >= 0.0)) {
        throw DomainError("ScaledTable: entries must be nonnegative");
      }
      mass += table->probabilities[k];
    }
    if (!(mass > 0.0)) {
      throw DomainError("ScaledTable: probabilities must have positive mass");
    }
    double second = 0.0;
    for (std::size_t k = 0; k < table->magnitudes.size(); ++k) {
      table->probabilities[k] /= mass;
      second += table->probabilities[k] * table->magnitudes[k] * table->magnitudes[k];
    }
    if (!(second > 0.0)) {
      throw DomainError("ScaledTable: second moment must be positive");
    }
    const double scale = 1.0 / std::sqrt(second);
    for (double& m : table->magnitudes) {
      m *= scale;
    }
  }
  return dist;
}

double entry_xi(const EntryDistribution& dist) {
  return std::visit(Overloaded{[](const StdGaussian&) { return 2.0; }, [](const Rademacher&) { return 0.0; },
                               [](const UniformVar1&) { return 0.8; },
                               [](const ScaledTable& t) {
                                 double second = 0.0;
                                 double fourth = 0.0;
                                 for (std::size_t k = 0; k < t.magnitudes.size(); ++k) {
                                   const double m2 = t.magnitudes[k] * t.magnitudes[k];
                                   second += t.probabilities[k] * m2;
                                   fourth += t.probabilities[k] * m2 * m2;
                                 }
                                 return fourth / (second * second) - 1.0;
                               }},
                    dist);
}

std::string entry_name(const EntryDistribution& dist) {
  return std::visit(Overloaded{[](const StdGaussian&) { return std::string("gaussian"); },
                               [](const Rademacher&) { return std::string("rademacher"); },
                               [](const UniformVar1&) { return std::string("uniform"); },
                               [](const ScaledTable&) { return std::string("table"); }},
                    dist);
}

EntryDistribution parse_entry_distribution(std::string_view name) {
  if (name == "gaussian") return StdGaussian{};
  if (name == "rademacher") return Rademacher{};
  if (name == "uniform") return UniformVar1{};
  throw DomainError("unknown entry distribution '" + std::string(name) + "'");
}

void validate(const EnsembleSpec& spec) {
  std::visit(Overloaded{[](const DeformedGoe& g) {
                          if (!(g.xi >= 0.0) || !std::isfinite(g.xi)) {
                            throw DomainError("DeformedGoe: xi must be finite and >= 0");
                          }
                          if (g.p < 2) throw DomainError("DeformedGoe: p must be >= 2");
                        },
                        [](const Wishart& w) {
                          if (w.p < 2) throw DomainError("Wishart: p must be >= 2");
                          if (w.n < 1) throw DomainError("Wishart: n must be >= 1");
                          normalized(w.dist);
                        }},
             spec);
}

double ensemble_xi(const EnsembleSpec& spec) {
  return std::visit(Overloaded{[](const DeformedGoe& g) { return g.xi; },
                               [](const Wishart& w) { return entry_xi(normalized(w.dist)); }},
                    spec);
}

// ---------------------------------------------------------------------------

std::vector<double> draw_goe_diag(double xi, std::int64_t p, const SeedSpec& seed) {
  if (!(xi >= 0.0)) {
    throw DomainError("draw_goe_diag: xi must be >= 0");
  }
  if (p < 1) {
    throw DomainError("draw_goe_diag: p must be >= 1");
  }
  std::vector<double> diag(static_cast<std::size_t>(p), 0.0);
  if (xi == 0.0) {
    return diag;
  }
  const double sd = std::sqrt(xi);
  NormalSampler normal(derive_stream_seed(seed, Stream::kGoeDiagonal));
  for (double& d : diag) {
    d = sd * normal();
  }
  return diag;
}

void draw_wishart_column(std::int64_t n, std::int64_t col, const EntryDistribution& dist, const SeedSpec& seed,
                         std::span<double> out) {
  if (static_cast<std::int64_t>(out.size()) != n) {
    throw std::invalid_argument("draw_wishart_column: output span must have n entries");
  }
  const std::uint64_t stream_seed = derive_stream_seed(seed, Stream::kWishartColumn, static_cast<std::uint64_t>(col));
  std::visit(Overloaded{[&](const StdGaussian&) {
                          NormalSampler normal(stream_seed);
                          for (double& v : out) v = normal();
                        },
                        [&](const Rademacher&) {
                          Xoshiro256pp rng(stream_seed);
                          std::uint64_t bits = 0;
                          int left = 0;
                          for (double& v : out) {
                            if (left == 0) {
                              bits = rng();
                              left = 64;
                            }
                            v = (bits & 1u) ? 1.0 : -1.0;
                            bits >>= 1;
                            --left;
                          }
                        },
                        [&](const UniformVar1&) {
                          Xoshiro256pp rng(stream_seed);
                          for (double& v : out) {
                            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                            v = (2.0 * u - 1.0) * kSqrt3;
                          }
                        },
                        [&](const ScaledTable& table) {
                          Xoshiro256pp rng(stream_seed);
                          std::vector<double> cumulative(table.probabilities.size());
                          std::partial_sum(table.probabilities.begin(), table.probabilities.end(), cumulative.begin());
                          cumulative.back() = 1.0;
                          for (double& v : out) {
                            const std::uint64_t bits = rng();
                            const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
                            const auto k = static_cast<std::size_t>(
                                std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
                            const double m = table.magnitudes[std::min(k, table.magnitudes.size() - 1)];
                            v = (bits & 1u) ? m : -m;
                          }
                        }},
             dist);
}

DataMatrix draw_wishart_X(std::int64_t n, std::int64_t p, const EntryDistribution& dist, const SeedSpec& seed,
                          std::int64_t entry_budget) {
  if (n < 1 || p < 1) {
    throw DomainError("draw_wishart_X: n and p must be positive");
  }
  if (n > entry_budget / p) {
    throw BudgetError("draw_wishart_X: n * p exceeds the entry budget");
  }
  const EntryDistribution unit = normalized(dist);
  DataMatrix x{n, p, std::vector<double>(static_cast<std::size_t>(n * p))};
  for (std::int64_t j = 0; j < p; ++j) {
    draw_wishart_column(n, j, unit,
                        seed, std::span<double>(x.values.data() + j * n, static_cast<std::size_t>(n)));
  }
  return x;
}

}  // namespace minormax
