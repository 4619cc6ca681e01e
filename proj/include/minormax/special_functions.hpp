#pragma once

#include <cstdint>
#include <functional>

namespace minormax {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrt2 = 1.414213562373095048801688724209698079;
inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934381868;
inline constexpr double kLogSqrt2Pi = 0.918938533204672741780329736405617640;

// ---------------------------------------------------------------------------
// Standard normal distribution
// ---------------------------------------------------------------------------

/// phi(x). Flushes to 0 once exp(-x^2/2) leaves the double range
/// (|x| > ~38.6); use log_std_normal_pdf in that regime.
double std_normal_pdf(double x);
double log_std_normal_pdf(double x);

double std_normal_cdf(double x);

/// Upper tail 1 - Phi(x). For x > 0 this is evaluated as
/// phi(x) * sqrt(pi/2) * erfcx(x/sqrt(2)), never as 1 - Phi(x), so the
/// relative accuracy holds all the way out to the underflow threshold.
double std_normal_sf(double x);

/// log(1 - Phi(x)); finite for every finite x.
double log_std_normal_sf(double x);
double log_std_normal_cdf(double x);

/// Scaled complementary error function exp(u^2) erfc(u).
double erfcx(double u);

// ---------------------------------------------------------------------------
// Incomplete gamma
// ---------------------------------------------------------------------------

/// Lower incomplete gamma gamma(a, x) = int_0^x s^{a-1} e^{-s} ds for
/// a in (0, 1] and x >= 0. Series for x < a + 1, Legendre continued
/// fraction for the complement otherwise. Throws DomainError outside.
double lower_incomplete_gamma(double a, double x);

// ---------------------------------------------------------------------------
// Adaptive quadrature
// ---------------------------------------------------------------------------

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_depth = 48;

  /// Throws DomainError unless abs_tol > 0, rel_tol > 0, max_depth >= 1.
  void validate() const;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) quadrature over the finite
/// interval [a, b].
///
/// The interval with the largest |K15 - G7| is bisected until the summed
/// error estimate is <= max(abs_tol, rel_tol * |result|). An interval that
/// would need splitting beyond max_depth bisections raises QuadratureError,
/// as does any non-finite integrand value. Ties between equal error
/// estimates are broken by left endpoint, so the result is a pure function
/// of the inputs.
///
/// The rule never evaluates f at a or b, but it assumes f is finite and
/// integrable there. Remove endpoint singularities first, e.g. with
/// integrate_left_singular.
double adaptive_integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

/// Integrates f over [a, b] when f(s) behaves like (s - a)^(-theta) near a,
/// theta in [0, 1). Substitutes s = a + (b - a) u^(1/(1-theta)), which
/// turns the singular factor into a bounded one, then calls
/// adaptive_integrate on u in [0, 1].
double integrate_left_singular(const Integrand& f, double a, double b, double theta,
                               const QuadratureSpec& spec = {});

}  // namespace minormax
