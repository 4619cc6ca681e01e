#include <doctest.h>

#include <cmath>
#include <vector>

#include "minormax/errors.hpp"
#include "minormax/special_functions.hpp"
#include "oracles.hpp"

using namespace minormax;

TEST_CASE("normal pdf") {
  CHECK(std_normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-16));
  for (double x : {0.3, 1.7, 5.0, 12.5, 37.0}) {
    CHECK(std_normal_pdf(x) == std_normal_pdf(-x));
  }
  // log phi(40) = -800.918..., below the double range: flushed to zero.
  CHECK(log_std_normal_pdf(40.0) == doctest::Approx(-800.0 - kLogSqrt2Pi).epsilon(1e-15));
  CHECK(std_normal_pdf(40.0) == 0.0);
  CHECK(std_normal_pdf(38.0) > 0.0);
  CHECK(std::log(std_normal_pdf(38.0)) == doctest::Approx(log_std_normal_pdf(38.0)).epsilon(1e-12));
}

TEST_CASE("normal cdf and survival function") {
  CHECK(std_normal_cdf(0.0) == 0.5);
  CHECK(std_normal_sf(0.0) == 0.5);
  // Mills-ratio asymptotics; the next-order term is 1/z^2.
  const double z = 40.0;
  const double ratio = std::exp(log_std_normal_sf(z) + std::log(std::sqrt(2.0 * kPi) * z) + 0.5 * z * z);
  CHECK(ratio == doctest::Approx(1.0).epsilon(2e-3));
  for (double x = -10.0; x <= 10.0; x += 0.37) {
    CHECK(std_normal_sf(-x) + std_normal_sf(x) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::fabs(std_normal_sf(x) - std_normal_cdf(-x)) <= 1e-14);
  }
  // Values frozen from 50-digit arithmetic.
  CHECK(std_normal_sf(5.0) == doctest::Approx(2.866515718791939e-07).epsilon(1e-14));
  CHECK(std_normal_sf(10.0) == doctest::Approx(7.619853024160527e-24).epsilon(1e-14));
  CHECK(std_normal_sf(30.0) == doctest::Approx(4.906713927148187e-198).epsilon(1e-13));
  CHECK(log_std_normal_sf(100.0) == doctest::Approx(-5005.524208694205).epsilon(1e-15));
}

TEST_CASE("normal cdf is monotone on a fine grid") {
  double prev = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double x = -10.0 + 20.0 * k / 9999.0;
    const double f = std_normal_cdf(x);
    CHECK_MESSAGE(f >= prev, "x=" << x);
    prev = f;
  }
}

TEST_CASE("erfcx matches erfc in the overlap and the continued fraction past it") {
  for (double u : {0.0, 0.5, 2.0, 6.0, 20.0}) {
    CHECK(erfcx(u) == doctest::Approx(std::exp(u * u) * std::erfc(u)).epsilon(1e-13));
  }
  // 1/(sqrt(pi) u) (1 - 1/(2u^2) + 3/(4u^4)) for large u.
  const double u = 1e4;
  CHECK(erfcx(u) == doctest::Approx((1.0 - 0.5 / (u * u)) / (std::sqrt(kPi) * u)).epsilon(1e-15));
  CHECK(erfcx(25.999) == doctest::Approx(erfcx(26.0)).epsilon(1e-4));
}

TEST_CASE("lower incomplete gamma") {
  for (double x : {0.0, 0.1, 1.0, 3.0, 30.0}) {
    CHECK(lower_incomplete_gamma(1.0, x) == doctest::Approx(-std::expm1(-x)).epsilon(1e-14));
  }
  CHECK(lower_incomplete_gamma(0.4, 0.0) == 0.0);
  CHECK(lower_incomplete_gamma(0.5, 1.0) == doctest::Approx(oracle::lower_gamma_series(0.5, 1.0)).epsilon(1e-12));
  CHECK(oracle::lower_gamma_series(0.5, 1.0) == doctest::Approx(1.4936482656248540).epsilon(1e-14));
  for (double a : {0.05, 1.0 / 3.0, 0.5, 0.9}) {
    for (double x : {0.01, 0.7, 1.5, 4.0, 12.0}) {
      CHECK(lower_incomplete_gamma(a, x) == doctest::Approx(oracle::lower_gamma_series(a, x)).epsilon(1e-12));
    }
    double prev = 0.0;
    for (double x = 0.0; x < 60.0; x += 0.25) {
      const double g = lower_incomplete_gamma(a, x);
      CHECK(g >= prev);
      CHECK(g <= std::tgamma(a) * (1.0 + 1e-15));
      prev = g;
    }
  }
  CHECK_THROWS_AS(lower_incomplete_gamma(1.5, 1.0), DomainError);
  CHECK_THROWS_AS(lower_incomplete_gamma(0.5, -1.0), DomainError);
}

TEST_CASE("adaptive quadrature") {
  CHECK(adaptive_integrate([](double) { return 1.0; }, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(adaptive_integrate(std_normal_pdf, -8.0, 8.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(integrate_left_singular([](double s) { return 1.0 / std::sqrt(s); }, 0.0, 1.0, 0.5) ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(adaptive_integrate([](double x) { return std::sin(x); }, 0.0, kPi) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(adaptive_integrate([](double x) { return x; }, 1.0, 1.0) == 0.0);
  CHECK_THROWS_AS(adaptive_integrate([](double x) { return x; }, 1.0, 0.0), DomainError);
}

TEST_CASE("adaptive quadrature is deterministic and reports failure") {
  auto f = [](double x) { return std::exp(-x * x) * std::cos(7.0 * x); };
  const double a = adaptive_integrate(f, -3.0, 4.0);
  const double b = adaptive_integrate(f, -3.0, 4.0);
  CHECK(a == b);
  CHECK_THROWS_AS(adaptive_integrate([](double) { return std::nan(""); }, 0.0, 1.0), QuadratureError);
  CHECK_THROWS_AS(adaptive_integrate([](double x) { return 1.0 / x; }, -1.0, 1.0, QuadratureSpec{1e-14, 1e-14, 3}),
                  QuadratureError);
  CHECK_THROWS_AS(adaptive_integrate([](double x) { return x; }, 0.0, 1.0, QuadratureSpec{0.0, 1e-10, 10}),
                  DomainError);
}
