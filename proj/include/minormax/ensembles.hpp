#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "minormax/rng.hpp"

namespace minormax {

// ---------------------------------------------------------------------------
// Entry distributions for Wishart data matrices
// ---------------------------------------------------------------------------

/// N(0, 1); xi = E x^4 - 1 = 2.
struct StdGaussian {};
/// +-1 with probability 1/2; xi = 0.
struct Rademacher {};
/// Uniform on [-sqrt 3, sqrt 3]; xi = 9/5 - 1 = 4/5.
struct UniformVar1 {};
/// Symmetric discrete law given by a finite table of nonnegative support
/// points and their probabilities; the sign is drawn separately. The table
/// is rescaled to unit variance at construction, so any table with a
/// nonzero second moment is admissible (all moments are finite).
struct ScaledTable {
  std::vector<double> magnitudes;
  std::vector<double> probabilities;
};

using EntryDistribution = std::variant<StdGaussian, Rademacher, UniformVar1, ScaledTable>;

/// Var(x^2) = E x^4 - 1 of the unit-variance law.
double entry_xi(const EntryDistribution& dist);
std::string entry_name(const EntryDistribution& dist);
/// "gaussian", "rademacher" or "uniform"; throws std::invalid_argument.
EntryDistribution parse_entry_distribution(std::string_view name);

/// Validates and normalizes a ScaledTable (probabilities sum to 1, unit
/// variance); the other alternatives pass through unchanged. Throws
/// DomainError on an invalid table.
EntryDistribution normalized(EntryDistribution dist);

// ---------------------------------------------------------------------------
// Ensemble specifications
// ---------------------------------------------------------------------------

struct DeformedGoe {
  double xi = 2.0;
  std::int64_t p = 2;
};

struct Wishart {
  std::int64_t n = 1;
  std::int64_t p = 2;
  EntryDistribution dist = StdGaussian{};
};

using EnsembleSpec = std::variant<DeformedGoe, Wishart>;

/// Throws DomainError unless p >= 2, n >= 1, xi >= 0 (finite).
void validate(const EnsembleSpec& spec);

/// The xi governing the limit law: the GOE diagonal variance, or
/// entry_xi(dist) for Wishart.
double ensemble_xi(const EnsembleSpec& spec);

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

/// p independent N(0, xi) diagonal entries. For xi = 0 the result is all
/// zeros and the diagonal stream is never touched; off-diagonal entries
/// come from a separate stream, so they are identical for every xi.
std::vector<double> draw_goe_diag(double xi, std::int64_t p, const SeedSpec& seed);

/// Streams the p(p-1)/2 N(0, 1) upper-triangular entries z_ij (0-based,
/// i < j) in row-major order. The consumer returns false to stop early.
/// No matrix storage is used.
template <class Consumer>
void stream_goe_offdiag(std::int64_t p, const SeedSpec& seed, Consumer&& consumer) {
  NormalSampler normal(derive_stream_seed(seed, Stream::kGoeOffDiagonal));
  for (std::int64_t i = 0; i + 1 < p; ++i) {
    for (std::int64_t j = i + 1; j < p; ++j) {
      if (!consumer(i, j, normal())) {
        return;
      }
    }
  }
}

inline constexpr std::int64_t kDefaultEntryBudget = 200'000'000;

/// Column-major n x p matrix of i.i.d. entries.
struct DataMatrix {
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::vector<double> values;

  std::span<const double> column(std::int64_t j) const {
    return {values.data() + j * n, static_cast<std::size_t>(n)};
  }
};

/// Fills out[0..n) with column `col` of X. Column j has its own stream
/// derived from (seed, j), so any column block can be regenerated alone.
void draw_wishart_column(std::int64_t n, std::int64_t col, const EntryDistribution& dist, const SeedSpec& seed,
                         std::span<double> out);

/// The full n x p data matrix X; BudgetError if n * p exceeds
/// entry_budget.
DataMatrix draw_wishart_X(std::int64_t n, std::int64_t p, const EntryDistribution& dist, const SeedSpec& seed,
                          std::int64_t entry_budget = kDefaultEntryBudget);

}  // namespace minormax
