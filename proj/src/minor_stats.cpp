#include "minormax/minor_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "minormax/errors.hpp"

namespace minormax {

double goe_pair_max_raw(std::span<const double> diag, const SeedSpec& seed,
                        std::pair<std::int64_t, std::int64_t>* argmax) {
  const auto p = static_cast<std::int64_t>(diag.size());
  if (p < 2) {
    throw DomainError("goe_pair_max: p must be >= 2");
  }
  double best = -std::numeric_limits<double>::infinity();
  std::int64_t best_i = 0;
  std::int64_t best_j = 1;
  constexpr double kSlack = 8.0 * std::numeric_limits<double>::epsilon();
  stream_goe_offdiag(p, seed, [&](std::int64_t i, std::int64_t j, double z) {
    // The plain sum is within a few ulps of top_eig_2x2; the exact form is
    // evaluated only for pairs that can reach the running maximum.
    const double a = diag[i], d = diag[j];
    const double half_gap = 0.5 * (a - d);
    const double radius = std::sqrt(z * z + half_gap * half_gap);
    const double mid = 0.5 * (a + d);
    if (radius + mid + kSlack * (radius + std::fabs(mid)) < best) {
      return true;
    }
    const double l = top_eig_2x2(a, d, z);
    if (l > best) {
      best = l;
      best_i = i;
      best_j = j;
    }
    return true;
  });
  if (argmax != nullptr) {
    *argmax = {best_i, best_j};
  }
  return best;
}

PairMaxResult goe_pair_max(double xi, std::int64_t p, const SeedSpec& seed) {
  validate(DeformedGoe{xi, p});
  const std::vector<double> diag = draw_goe_diag(xi, p, seed);
  PairMaxResult result;
  result.raw_max = goe_pair_max_raw(diag, seed, &result.argmax_pair);
  if (static_cast<double>(p) > std::exp(1.0)) {
    const NormConstants k = norm_constants(xi, static_cast<double>(p));
    result.normalized = k.A * (result.raw_max - k.B);
  } else {
    result.normalized = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

namespace {

// Dot product with four interleaved partial sums combined in a fixed order,
// so the result is bit-stable for a given build.
double dot(const double* x, const double* y, std::int64_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::int64_t k = 0;
  for (; k + 4 <= n; k += 4) {
    s0 += x[k] * y[k];
    s1 += x[k + 1] * y[k + 1];
    s2 += x[k + 2] * y[k + 2];
    s3 += x[k + 3] * y[k + 3];
  }
  for (; k < n; ++k) {
    s0 += x[k] * y[k];
  }
  return (s0 + s1) + (s2 + s3);
}

struct PairScan {
  double best = -std::numeric_limits<double>::infinity();
  std::int64_t i = 0;
  std::int64_t j = 1;

  void offer(double l, std::int64_t row, std::int64_t col) {
    // Block order differs from row-major, so ties are settled explicitly.
    if (l > best || (l == best && std::pair(row, col) < std::pair(i, j))) {
      best = l;
      i = row;
      j = col;
    }
  }
};

}  // namespace

PairMaxResult wishart_pair_max(std::int64_t n, std::int64_t p, const EntryDistribution& dist, const SeedSpec& seed,
                               const WishartOptions& options) {
  validate(Wishart{n, p, dist});
  if (options.block_width < 1) {
    throw DomainError("wishart_pair_max: block_width must be >= 1");
  }
  const EntryDistribution unit = normalized(dist);
  const std::int64_t width = std::min(options.block_width, p);
  if (n > options.entry_budget / (2 * width)) {
    throw BudgetError("wishart_pair_max: two column blocks exceed the entry budget");
  }

  std::vector<double> diag(static_cast<std::size_t>(p));
  // Scratch reused across replicates on the same thread; the second block
  // is needed only when the columns span more than one block.
  thread_local std::vector<double> row_block;
  thread_local std::vector<double> col_block;
  row_block.resize(static_cast<std::size_t>(n * width));
  if (p > width) col_block.resize(static_cast<std::size_t>(n * width));
  std::int64_t row_block_first = -1;
  auto fill = [&](std::vector<double>& block, std::int64_t first, std::int64_t count) {
    if (&block == &row_block) {
      if (row_block_first == first) return;
      row_block_first = first;
    }
    for (std::int64_t c = 0; c < count; ++c) {
      draw_wishart_column(n, first + c, unit, seed,
                          std::span<double>(block.data() + c * n, static_cast<std::size_t>(n)));
    }
  };

  // Diagonal first: every off-diagonal pair needs both w_ii and w_jj.
  for (std::int64_t first = 0; first < p; first += width) {
    const std::int64_t count = std::min(width, p - first);
    fill(row_block, first, count);
    for (std::int64_t c = 0; c < count; ++c) {
      const double* col = row_block.data() + c * n;
      diag[static_cast<std::size_t>(first + c)] = dot(col, col, n);
    }
  }

  PairScan scan;
  for (std::int64_t r0 = 0; r0 < p; r0 += width) {
    const std::int64_t rows = std::min(width, p - r0);
    fill(row_block, r0, rows);
    for (std::int64_t c0 = r0; c0 < p; c0 += width) {
      const std::int64_t cols = std::min(width, p - c0);
      const double* other = row_block.data();
      if (c0 != r0) {
        fill(col_block, c0, cols);
        other = col_block.data();
      }
      for (std::int64_t a = 0; a < rows; ++a) {
        const std::int64_t i = r0 + a;
        for (std::int64_t b = 0; b < cols; ++b) {
          const std::int64_t j = c0 + b;
          if (j <= i) continue;
          const double w = dot(row_block.data() + a * n, other + b * n, n);
          scan.offer(top_eig_2x2(diag[static_cast<std::size_t>(i)], diag[static_cast<std::size_t>(j)], w), i, j);
        }
      }
    }
  }

  PairMaxResult result;
  result.raw_max = scan.best;
  result.argmax_pair = {scan.i, scan.j};
  const double xi = entry_xi(unit);
  if (static_cast<double>(p) > std::exp(1.0)) {
    const NormConstants k = norm_constants(xi, static_cast<double>(p));
    const double centered = (result.raw_max - static_cast<double>(n)) / std::sqrt(static_cast<double>(n));
    result.normalized = k.A * (centered - k.B);
  } else {
    result.normalized = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

PairMaxResult gram_pair_max(const DataMatrix& x) {
  if (x.p < 2 || x.n < 1 || static_cast<std::int64_t>(x.values.size()) != x.n * x.p) {
    throw DomainError("gram_pair_max: need a well-formed matrix with p >= 2");
  }
  std::vector<double> diag(static_cast<std::size_t>(x.p));
  for (std::int64_t i = 0; i < x.p; ++i) {
    diag[static_cast<std::size_t>(i)] = dot(x.column(i).data(), x.column(i).data(), x.n);
  }
  PairScan scan;
  for (std::int64_t i = 0; i < x.p; ++i) {
    for (std::int64_t j = i + 1; j < x.p; ++j) {
      const double w = dot(x.column(i).data(), x.column(j).data(), x.n);
      scan.offer(top_eig_2x2(diag[static_cast<std::size_t>(i)], diag[static_cast<std::size_t>(j)], w), i, j);
    }
  }
  PairMaxResult result;
  result.raw_max = scan.best;
  result.argmax_pair = {scan.i, scan.j};
  return result;
}

double diag_max_raw(double xi, std::int64_t p, const SeedSpec& seed) {
  if (!(xi > 0.0)) {
    throw DomainError("diag_max: xi must be > 0");
  }
  const std::vector<double> diag = draw_goe_diag(xi, p, seed);
  return *std::max_element(diag.begin(), diag.end()) / std::sqrt(xi);
}

double diag_max(double xi, std::int64_t p, const SeedSpec& seed) {
  if (p < 3) {
    throw DomainError("diag_max: normalization needs p >= 3");
  }
  const double raw = diag_max_raw(xi, p, seed);
  const NormConstants k = norm_constants(xi, static_cast<double>(p));
  return k.alpha_p * (raw - k.beta_p);
}

}  // namespace minormax
