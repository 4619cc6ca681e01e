#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include "minormax/ensembles.hpp"
#include "minormax/limit_laws.hpp"

namespace minormax {

/// Largest eigenvalue of [[a, b], [b, d]], sqrt(b^2 + ((a - d)/2)^2) + (a + d)/2.
/// When (a + d)/2 < 0 the sum cancels, so the value is taken as det / lambda_min
/// with the determinant formed by Kahan's fma scheme.
inline double top_eig_2x2(double a, double d, double b) {
  const double half_gap = 0.5 * (a - d);
  const double radius = std::sqrt(b * b + half_gap * half_gap);
  const double mid = 0.5 * (a + d);
  if (mid >= 0.0 || radius == 0.0) {
    return radius + mid;
  }
  const double bb = b * b;
  const double det = std::fma(a, d, -bb) + std::fma(-b, b, bb);
  return det / (mid - radius);
}

struct PairMaxResult {
  double raw_max = 0.0;
  /// 0-based (i, j), i < j; first maximizer in row-major order.
  std::pair<std::int64_t, std::int64_t> argmax_pair{0, 1};
  double normalized = 0.0;
};

/// Maximum over i < j of the top eigenvalue of the 2x2 principal minor of
/// the deformed GOE, normalized as A (raw - B). O(p^2) time, O(p) memory.
PairMaxResult goe_pair_max(double xi, std::int64_t p, const SeedSpec& seed);

/// Same scan against a caller-supplied diagonal, with off-diagonals from
/// the replicate's stream. Exposed so tests can check the statistic
/// against an independent accumulator over the same stream.
double goe_pair_max_raw(std::span<const double> diag, const SeedSpec& seed,
                        std::pair<std::int64_t, std::int64_t>* argmax = nullptr);

inline constexpr std::int64_t kDefaultGramBlock = 64;

struct WishartOptions {
  std::int64_t block_width = kDefaultGramBlock;
  std::int64_t entry_budget = kDefaultEntryBudget;
};

/// Pair maximum of the Gram matrix W = X^T X. Columns are generated in
/// blocks of block_width from their per-column streams; at most two blocks
/// are resident. Normalized as A ((raw - n)/sqrt(n) - B) with the
/// population xi of dist.
PairMaxResult wishart_pair_max(std::int64_t n, std::int64_t p, const EntryDistribution& dist,
                               const SeedSpec& seed, const WishartOptions& options = {});

/// Pair maximum of the Gram matrix of an explicit data matrix (raw_max and
/// argmax only; normalized is left at 0).
PairMaxResult gram_pair_max(const DataMatrix& x);

/// alpha_p (max_i z_ii / sqrt(xi) - beta_p) over the p diagonal entries of
/// the replicate (the same diagonal goe_pair_max sees). DomainError for
/// xi <= 0, and for p < 3 since alpha_p needs ln p > 1.
double diag_max(double xi, std::int64_t p, const SeedSpec& seed);

/// max_i z_ii / sqrt(xi) without normalization; any p >= 1.
double diag_max_raw(double xi, std::int64_t p, const SeedSpec& seed);

}  // namespace minormax
