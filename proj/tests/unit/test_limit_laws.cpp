#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "minormax/errors.hpp"
#include "minormax/limit_laws.hpp"
#include "oracles.hpp"

using namespace minormax;

TEST_CASE("normalizing constants follow the three branches") {
  const double p = std::exp(8.0);
  const NormConstants k0 = norm_constants(0.0, p);
  CHECK(k0.alpha_p == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(k0.A == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-15));

  // Reference values from 40-digit evaluation of each branch formula.
  const NormConstants k1 = norm_constants(1.0, p);
  CHECK(k1.A == doctest::Approx(4.6188021535170061).epsilon(1e-15));
  CHECK(k1.B == doctest::Approx(6.4291056682443591).epsilon(1e-15));
  const NormConstants k2 = norm_constants(2.0, p);
  CHECK(k2.A == k2.alpha_p);
  CHECK(k2.B == doctest::Approx(7.4144773210642451).epsilon(1e-15));
  const NormConstants k4 = norm_constants(4.0, p);
  CHECK(k4.A == doctest::Approx(2.6666666666666667).epsilon(1e-15));
  CHECK(k4.B == doctest::Approx(8.7684764952436068).epsilon(1e-15));

  for (double xi : {0.0, 0.5, 1.999, 2.0, 2.001, 9.0}) {
    for (double pp : {10.0, 1e4, 1e100}) {
      const NormConstants k = norm_constants(xi, pp);
      CHECK(k.A > 0.0);
      CHECK(k.alpha_p == doctest::Approx(std::sqrt(2.0 * std::log(pp))).epsilon(1e-15));
      CHECK(k.beta_p == doctest::Approx(k.alpha_p - std::log(std::sqrt(2.0 * kPi) * k.alpha_p) / k.alpha_p));
    }
  }
  CHECK_THROWS_AS(norm_constants(-0.1, 100.0), DomainError);
  CHECK_THROWS_AS(norm_constants(1.0, 2.0), DomainError);
}

TEST_CASE("eta") {
  CHECK(eta(4.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(eta(9.0) == doctest::Approx(5.0 / 12.0).epsilon(1e-15));
  const double near = eta(2.0 + 1e-6);
  CHECK(near < 1.0);
  CHECK(near > 0.9999);
  CHECK_THROWS_AS(eta(2.0), DomainError);
}

TEST_CASE("gumbel") {
  CHECK(gumbel_cdf(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-16));
  CHECK(gumbel_pdf(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-16));
  for (double q : {0.1, 0.5, 0.9}) {
    CHECK(std::fabs(law_cdf(Gumbel{}, law_quantile(Gumbel{}, q)) - q) <= 1e-12);
  }
  CHECK(std::fabs(law_quantile(Gumbel{}, std::exp(-1.0))) <= 1e-12);
}

TEST_CASE("inner integral against direct quadrature") {
  CHECK(inner_integral(0.0, 0.3) == 0.0);
  CHECK(inner_integral(1.0, 0.5) == doctest::Approx(1.7230554135925927).epsilon(1e-12));
  CHECK(inner_integral(1e-8, 0.5) / (std::pow(1e-8, 0.5) / 0.5) == doctest::Approx(1.0).epsilon(1e-6));
  for (double tau : {1e-6, 1e-2, 1.0, 10.0, 1e3}) {
    for (double e : {0.05, 0.3, 2.0 / 3.0, 0.95}) {
      const double ref = oracle::inner_integral(tau, e, 20000);
      CHECK_MESSAGE(inner_integral(tau, e) == doctest::Approx(ref).epsilon(1e-9), "tau=" << tau << " eta=" << e);
    }
  }
}

TEST_CASE("inner integral near the transition warns, then refuses") {
  std::vector<std::string> warnings;
  auto previous = set_warning_handler([&](std::string_view m) { warnings.emplace_back(m); });
  CHECK(std::isfinite(inner_integral(1.0, 0.9995)));
  CHECK(warnings.size() == 1);
  CHECK_THROWS_AS(inner_integral(1.0, 1.0 - 1e-7), DomainError);
  set_warning_handler(previous);
}

TEST_CASE("gxi cdf tails and bounds") {
  for (double e : {0.1, 0.4, 2.0 / 3.0, 0.9}) {
    CHECK(gxi_cdf(-40.0, e) < 1e-6);
    CHECK(gxi_cdf(80.0, e) > 1.0 - 1e-6);
    double prev = 0.0;
    for (int k = 0; k < 200; ++k) {
      const double z = -10.0 + 40.0 * k / 199.0;
      const double f = gxi_cdf(z, e);
      CHECK(f >= 0.0);
      CHECK(f <= 1.0);
      CHECK_MESSAGE(f >= prev - 1e-9, "eta=" << e << " z=" << z);
      prev = f;
    }
  }
}

TEST_CASE("gxi cdf against a 2-D tensor quadrature") {
  const double ref = oracle::gxi_cdf(0.0, 2.0 / 3.0);
  CHECK(std::fabs(gxi_cdf(0.0, 2.0 / 3.0) - ref) <= 1e-6);
}

TEST_CASE("law selection, quantiles and description") {
  CHECK(std::holds_alternative<Gumbel>(law_for(1.5)));
  CHECK(std::holds_alternative<Gumbel>(law_for(2.0)));
  CHECK(std::holds_alternative<Gumbel>(law_for(0.0)));
  const LimitLaw g4 = law_for(4.0);
  REQUIRE(std::holds_alternative<GXi>(g4));
  CHECK(std::get<GXi>(g4).eta == doctest::Approx(2.0 / 3.0));
  CHECK(describe(Gumbel{}) == "gumbel");
  CHECK(describe(g4).rfind("gxi(eta=0.666", 0) == 0);
  for (int k = 1; k <= 99; k += 7) {
    const double q = k / 100.0;
    CHECK(std::fabs(law_cdf(g4, law_quantile(g4, q)) - q) <= 1e-8);
  }
  CHECK_THROWS_AS(law_quantile(Gumbel{}, 1.0), DomainError);
  CHECK_THROWS_AS(law_for(-1.0), DomainError);
}

TEST_CASE("m = 2 GOE eigenvalue law") {
  CHECK(kFengC2 == doctest::Approx(0.096126454902614618).epsilon(1e-15));
  const double p = 1e20;
  CHECK(feng_m2_cdf(1e3, p) == doctest::Approx(1.0));
  CHECK(feng_m2_cdf(std::sqrt(8.0 * std::log(p)), p) == doctest::Approx(std::exp(-kFengC2)).epsilon(1e-14));
  for (double z : {-2.0, 0.0, 2.0}) {
    CHECK(feng_consistency_delta(1e100, z) <= 0.01);
    CHECK(feng_consistency_delta(1e100, z) < feng_consistency_delta(1e8, z));
  }
}
