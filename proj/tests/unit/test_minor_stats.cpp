#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "minormax/ensembles.hpp"
#include "minormax/errors.hpp"
#include "minormax/limit_laws.hpp"
#include "minormax/minor_stats.hpp"
#include "oracles.hpp"

using namespace minormax;

TEST_CASE("top eigenvalue of a 2x2 minor") {
  CHECK(top_eig_2x2(0.0, 0.0, 1.0) == 1.0);
  CHECK(top_eig_2x2(1.0, 1.0, 2.0) == 3.0);
  CHECK(top_eig_2x2(3.0, 1.0, 0.0) == 3.0);

  std::mt19937_64 gen(2024);
  std::normal_distribution<double> n01;
  for (int k = 0; k < 100000; ++k) {
    const double a = 3.0 * n01(gen), d = 3.0 * n01(gen), b = n01(gen);
    const double v = top_eig_2x2(a, d, b);
    CHECK(v == top_eig_2x2(d, a, b));
    CHECK(v == top_eig_2x2(a, d, -b));
    const double ref = oracle::top_eig_quadratic(a, d, b);
    if (std::fabs(v - ref) > 1e-12 * std::max(std::fabs(ref), 1.0)) {
      FAIL("a=" << a << " d=" << d << " b=" << b);
    }
  }
}

TEST_CASE("GOE pair maximum at xi = 0 is the max |z_ij|") {
  for (std::uint64_t r = 0; r < 5; ++r) {
    const SeedSpec seed{77, r};
    double max_abs = 0.0;
    stream_goe_offdiag(300, seed, [&](std::int64_t, std::int64_t, double z) {
      max_abs = std::max(max_abs, std::fabs(z));
      return true;
    });
    CHECK(goe_pair_max(0.0, 300, seed).raw_max == max_abs);
  }
}

TEST_CASE("GOE pair maximum dominates the diagonal and reconstructs its argmax") {
  const SeedSpec seed{78, 0};
  const std::int64_t p = 200;
  const auto diag = draw_goe_diag(3.0, p, seed);
  std::pair<std::int64_t, std::int64_t> arg;
  const double raw = goe_pair_max_raw(diag, seed, &arg);
  CHECK(raw >= *std::max_element(diag.begin(), diag.end()));
  double z_arg = 0.0;
  stream_goe_offdiag(p, seed, [&](std::int64_t i, std::int64_t j, double z) {
    if (i == arg.first && j == arg.second) {
      z_arg = z;
      return false;
    }
    return true;
  });
  const auto i = static_cast<std::size_t>(arg.first), j = static_cast<std::size_t>(arg.second);
  CHECK(std::fabs(raw - top_eig_2x2(diag[i], diag[j], z_arg)) <= 1e-12 * std::fabs(raw));

  const PairMaxResult r = goe_pair_max(3.0, p, seed);
  CHECK(r.raw_max == raw);
  CHECK(r.argmax_pair == arg);
  const NormConstants k = norm_constants(3.0, static_cast<double>(p));
  CHECK(r.normalized == doctest::Approx(k.A * (raw - k.B)).epsilon(1e-15));
  CHECK(goe_pair_max(3.0, p, seed).raw_max == raw);
}

TEST_CASE("GOE pair maximum with p = 2 is the single minor") {
  const SeedSpec seed{79, 4};
  const auto diag = draw_goe_diag(1.0, 2, seed);
  double z12 = 0.0;
  stream_goe_offdiag(2, seed, [&](std::int64_t, std::int64_t, double z) {
    z12 = z;
    return true;
  });
  CHECK(goe_pair_max(1.0, 2, seed).raw_max == top_eig_2x2(diag[0], diag[1], z12));
}

TEST_CASE("Wishart: explicit tiny matrices") {
  DataMatrix rank1{1, 2, {1.0, -1.0}};
  CHECK(gram_pair_max(rank1).raw_max == 2.0);

  // Orthogonal columns of squared norm 4.
  DataMatrix ortho{4, 3, {1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1}};
  CHECK(gram_pair_max(ortho).raw_max == 4.0);

  DataMatrix x{3, 3, {1.0, 2.0, -0.5, 0.3, -1.2, 2.2, 1.5, 0.1, 0.7}};
  double best = -1e300;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      auto dot = [&](int a, int b) {
        double s = 0.0;
        for (int r = 0; r < 3; ++r) s += x.values[a * 3 + r] * x.values[b * 3 + r];
        return s;
      };
      best = std::max(best, oracle::top_eig_quadratic(dot(i, i), dot(j, j), dot(i, j)));
    }
  }
  CHECK(gram_pair_max(x).raw_max == doctest::Approx(best).epsilon(1e-14));
}

TEST_CASE("Wishart: blocked scan equals the full Gram scan") {
  for (const EntryDistribution& dist : {EntryDistribution{StdGaussian{}}, EntryDistribution{UniformVar1{}}}) {
    const SeedSpec seed{80, 1};
    const DataMatrix x = draw_wishart_X(300, 23, dist, seed);
    const PairMaxResult full = gram_pair_max(x);
    for (std::int64_t width : {1, 4, 7, 23, 64}) {
      const PairMaxResult blocked = wishart_pair_max(300, 23, dist, seed, WishartOptions{width});
      CHECK(blocked.raw_max == full.raw_max);
      CHECK(blocked.argmax_pair == full.argmax_pair);
    }
  }
}

TEST_CASE("Wishart: Rademacher identity raw_max - n = max |w_ij|") {
  const std::int64_t n = 1000, p = 20;
  for (std::uint64_t r = 0; r < 10; ++r) {
    const SeedSpec seed{81, r};
    const DataMatrix x = draw_wishart_X(n, p, Rademacher{}, seed);
    double max_abs = 0.0;
    for (std::int64_t i = 0; i < p; ++i) {
      for (std::int64_t j = i + 1; j < p; ++j) {
        long long s = 0;
        for (std::int64_t k = 0; k < n; ++k) s += static_cast<long long>(x.column(i)[k] * x.column(j)[k]);
        max_abs = std::max(max_abs, static_cast<double>(std::llabs(s)));
      }
    }
    CHECK(wishart_pair_max(n, p, Rademacher{}, seed).raw_max - static_cast<double>(n) == max_abs);
  }
}

TEST_CASE("Wishart: normalization uses the population xi and budget is enforced") {
  const SeedSpec seed{82, 0};
  const PairMaxResult r = wishart_pair_max(500, 10, UniformVar1{}, seed);
  const NormConstants k = norm_constants(0.8, 10.0);
  CHECK(r.normalized == doctest::Approx(k.A * ((r.raw_max - 500.0) / std::sqrt(500.0) - k.B)).epsilon(1e-14));
  CHECK_THROWS_AS(wishart_pair_max(1'000'000, 10, StdGaussian{}, seed, WishartOptions{64, 1000}), BudgetError);
}

TEST_CASE("diagonal maximum") {
  const SeedSpec seed{83, 0};
  const auto d1 = draw_goe_diag(1.0, 1000, seed);
  const auto d4 = draw_goe_diag(4.0, 1000, seed);
  CHECK(*std::max_element(d4.begin(), d4.end()) == 2.0 * *std::max_element(d1.begin(), d1.end()));
  CHECK(diag_max_raw(4.0, 1000, seed) == doctest::Approx(diag_max_raw(1.0, 1000, seed)).epsilon(1e-15));
  const auto d = draw_goe_diag(1.0, 1, seed);
  CHECK(diag_max_raw(1.0, 1, seed) == d[0]);
  const double raw = diag_max_raw(2.0, 5000, seed);
  const NormConstants k = norm_constants(2.0, 5000.0);
  CHECK(diag_max(2.0, 5000, seed) == doctest::Approx(k.alpha_p * (raw - k.beta_p)).epsilon(1e-15));
  CHECK_THROWS_AS(diag_max(0.0, 100, seed), DomainError);
}

TEST_CASE("replicate statistics are uncorrelated") {
  std::vector<double> v;
  for (std::uint64_t r = 0; r <= 10000; ++r) v.push_back(goe_pair_max(1.0, 20, SeedSpec{84, r}).raw_max);
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < 10000; ++k) { mx += v[k]; my += v[k + 1]; }
  mx /= 10000; my /= 10000;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < 10000; ++k) {
    sxy += (v[k] - mx) * (v[k + 1] - my);
    sxx += (v[k] - mx) * (v[k] - mx);
    syy += (v[k + 1] - my) * (v[k + 1] - my);
  }
  CHECK(std::fabs(sxy / std::sqrt(sxx * syy)) <= 0.05);
}
