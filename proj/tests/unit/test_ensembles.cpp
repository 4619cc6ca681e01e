#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "minormax/ensembles.hpp"
#include "minormax/errors.hpp"
#include "minormax/rng.hpp"

using namespace minormax;

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
  double xi = 0.0;  // E x^4 / (E x^2)^2 - 1
};

Moments moments(const std::vector<double>& v) {
  long double s1 = 0, s2 = 0, s4 = 0;
  for (double x : v) {
    s1 += x;
    s2 += x * x;
    s4 += static_cast<long double>(x) * x * x * x;
  }
  const long double n = v.size();
  Moments m;
  m.mean = static_cast<double>(s1 / n);
  m.var = static_cast<double>(s2 / n - (s1 / n) * (s1 / n));
  m.xi = static_cast<double>((s4 / n) / ((s2 / n) * (s2 / n)) - 1.0L);
  return m;
}

}  // namespace

TEST_CASE("seed derivation is deterministic and label-sensitive") {
  const SeedSpec s{42, 7};
  CHECK(derive_stream_seed(s, Stream::kGoeDiagonal) == derive_stream_seed(s, Stream::kGoeDiagonal));
  std::set<std::uint64_t> seen;
  for (std::uint64_t r = 0; r < 50; ++r) {
    for (auto label : {Stream::kGoeDiagonal, Stream::kGoeOffDiagonal, Stream::kWishartColumn}) {
      for (std::uint64_t i = 0; i < 4; ++i) {
        seen.insert(derive_stream_seed(SeedSpec{42, r}, label, i));
      }
    }
  }
  CHECK(seen.size() == 50 * 3 * 4);
}

TEST_CASE("normal sampler moments") {
  NormalSampler normal(derive_stream_seed(SeedSpec{1, 0}, Stream::kGoeOffDiagonal));
  std::vector<double> v(2'000'000);
  for (double& x : v) x = normal();
  const Moments m = moments(v);
  CHECK(std::fabs(m.mean) <= 4.0 / std::sqrt(v.size()));
  CHECK(m.var == doctest::Approx(1.0).epsilon(0.005));
  CHECK(m.xi == doctest::Approx(2.0).epsilon(0.03));
  // Tail mass beyond the ziggurat base layer (x > 3.4426) should be 2 sf(kR).
  const auto tail = std::count_if(v.begin(), v.end(), [](double x) { return std::fabs(x) > 3.442619855899; });
  const double expected = 2.0 * 0.5 * std::erfc(3.442619855899 / std::sqrt(2.0)) * v.size();
  CHECK(std::fabs(tail - expected) <= 5.0 * std::sqrt(expected));
}

TEST_CASE("GOE diagonal") {
  const auto zero = draw_goe_diag(0.0, 100, SeedSpec{3, 0});
  CHECK(std::all_of(zero.begin(), zero.end(), [](double x) { return x == 0.0; }));
  const auto d = draw_goe_diag(3.0, 1'000'000, SeedSpec{3, 1});
  CHECK(moments(d).var == doctest::Approx(3.0).epsilon(0.02));
  CHECK(draw_goe_diag(3.0, 1000, SeedSpec{3, 1}) == draw_goe_diag(3.0, 1000, SeedSpec{3, 1}));
  CHECK(draw_goe_diag(3.0, 1000, SeedSpec{3, 1}) != draw_goe_diag(3.0, 1000, SeedSpec{3, 2}));
  CHECK_THROWS_AS(draw_goe_diag(-1.0, 10, SeedSpec{}), DomainError);
}

TEST_CASE("GOE off-diagonal stream") {
  std::vector<std::pair<std::int64_t, std::int64_t>> calls;
  stream_goe_offdiag(3, SeedSpec{5, 0}, [&](std::int64_t i, std::int64_t j, double) {
    calls.emplace_back(i, j);
    return true;
  });
  CHECK(calls == std::vector<std::pair<std::int64_t, std::int64_t>>{{0, 1}, {0, 2}, {1, 2}});

  std::vector<double> a, b;
  stream_goe_offdiag(2000, SeedSpec{5, 1}, [&](std::int64_t, std::int64_t, double z) {
    a.push_back(z);
    return true;
  });
  CHECK(a.size() == 2000u * 1999u / 2u);
  CHECK(moments(a).var == doctest::Approx(1.0).epsilon(0.01));
  stream_goe_offdiag(2000, SeedSpec{5, 1}, [&](std::int64_t, std::int64_t, double z) {
    b.push_back(z);
    return b.size() < 10;
  });
  CHECK(b.size() == 10);
  CHECK(std::equal(b.begin(), b.end(), a.begin()));
}

TEST_CASE("entry distributions") {
  CHECK(entry_xi(StdGaussian{}) == 2.0);
  CHECK(entry_xi(Rademacher{}) == 0.0);
  CHECK(entry_xi(UniformVar1{}) == doctest::Approx(0.8));
  CHECK(entry_name(parse_entry_distribution("rademacher")) == "rademacher");
  CHECK_THROWS_AS(parse_entry_distribution("cauchy"), DomainError);

  const ScaledTable table{{1.0, 3.0}, {0.9, 0.1}};
  const EntryDistribution unit = normalized(table);
  const auto& t = std::get<ScaledTable>(unit);
  const double second = t.probabilities[0] * t.magnitudes[0] * t.magnitudes[0] +
                        t.probabilities[1] * t.magnitudes[1] * t.magnitudes[1];
  CHECK(second == doctest::Approx(1.0).epsilon(1e-15));

  for (const EntryDistribution& dist : {EntryDistribution{StdGaussian{}}, EntryDistribution{Rademacher{}},
                                        EntryDistribution{UniformVar1{}}, unit}) {
    std::vector<double> col(10'000'000);
    draw_wishart_column(static_cast<std::int64_t>(col.size()), 0, dist, SeedSpec{9, 0}, col);
    const Moments m = moments(col);
    CHECK_MESSAGE(std::fabs(m.mean) <= 4.0 * std::pow(10.0, -3.5), entry_name(dist));
    CHECK_MESSAGE(std::fabs(m.var - 1.0) <= 0.01, entry_name(dist));
    CHECK_MESSAGE(std::fabs(m.xi - entry_xi(dist)) <= 0.03 * std::max(entry_xi(dist), 1.0), entry_name(dist));
  }
}

TEST_CASE("Wishart data matrix") {
  const DataMatrix x = draw_wishart_X(50, 4, Rademacher{}, SeedSpec{2, 0});
  CHECK(std::all_of(x.values.begin(), x.values.end(), [](double v) { return v == 1.0 || v == -1.0; }));
  CHECK(draw_wishart_X(50, 4, StdGaussian{}, SeedSpec{2, 0}).values ==
        draw_wishart_X(50, 4, StdGaussian{}, SeedSpec{2, 0}).values);

  const DataMatrix g = draw_wishart_X(1'000'000, 1, StdGaussian{}, SeedSpec{2, 1});
  const double mean = std::accumulate(g.values.begin(), g.values.end(), 0.0) / 1e6;
  CHECK(std::fabs(mean) <= 4.0 / std::sqrt(1e6));

  // Columns come from their own streams: a column is the same whatever p is.
  std::vector<double> col(50);
  draw_wishart_column(50, 2, StdGaussian{}, SeedSpec{2, 0}, col);
  const DataMatrix wide = draw_wishart_X(50, 6, StdGaussian{}, SeedSpec{2, 0});
  CHECK(std::equal(col.begin(), col.end(), wide.column(2).begin()));

  CHECK_THROWS_AS(draw_wishart_X(1000, 1000, StdGaussian{}, SeedSpec{}, 10'000), BudgetError);
}

TEST_CASE("ensemble validation") {
  CHECK_NOTHROW(validate(EnsembleSpec{DeformedGoe{1.0, 10}}));
  CHECK_THROWS_AS(validate(EnsembleSpec{DeformedGoe{-1.0, 10}}), DomainError);
  CHECK_THROWS_AS(validate(EnsembleSpec{DeformedGoe{1.0, 1}}), DomainError);
  CHECK_THROWS_AS(validate(EnsembleSpec{Wishart{0, 10, StdGaussian{}}}), DomainError);
  CHECK(ensemble_xi(EnsembleSpec{Wishart{10, 10, UniformVar1{}}}) == doctest::Approx(0.8));
}
