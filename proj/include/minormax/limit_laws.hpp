#pragma once

#include <string>
#include <variant>

#include "minormax/special_functions.hpp"

namespace minormax {

/// Location/scale sequences for the pair-maximum statistic at diagonal
/// variance xi and dimension p. p is a real so that asymptotic checks can
/// run at p = 1e100; only ln p enters.
struct NormConstants {
  double xi = 0.0;
  double p = 0.0;
  double alpha_p = 0.0;  ///< sqrt(2 ln p)
  double beta_p = 0.0;   ///< alpha_p - ln(sqrt(2 pi) alpha_p) / alpha_p
  double A = 0.0;        ///< scale
  double B = 0.0;        ///< location
};

/// Three-branch constants: xi in [0, 2), xi == 2, xi > 2.
/// Throws DomainError for xi < 0 or p <= e.
NormConstants norm_constants(double xi, double p);

/// Shape of the non-Gumbel law, (2 + sqrt(xi)) / (xi + sqrt(xi)), in (0, 1).
/// Throws DomainError for xi <= 2.
double eta(double xi);

double gumbel_cdf(double z);
double gumbel_pdf(double z);

/// The family's shape parameter is refused at or above this value.
inline constexpr double kMaxEta = 1.0 - 1e-6;

/// int_0^tau s^{-1-eta} (1 - e^{-s}) ds, via integration by parts:
///   (gamma(1 - eta, tau) - tau^{-eta} (1 - e^{-tau})) / eta.
/// Warns for eta > 0.999 and throws DomainError for eta >= kMaxEta.
double inner_integral(double tau, double eta);

/// Default tolerances for gxi_cdf: tight enough that the CDF is monotone
/// on fine grids to within 1e-9.
inline constexpr QuadratureSpec kGxiQuadrature{1e-14, 1e-12, 60};

/// CDF of the non-Gumbel limit law with shape eta,
///   int exp(-tau(y) - eta e^{-z} I(tau(y), eta)) lambda(y) dy,
///   tau(y) = exp((y - z) / eta).
///
/// The outer integral runs over [y_lo, y_hi]. The left tail is bounded by
/// Lambda(y_lo) and the right tail by exp(-exp((y_hi - z)/eta)); both
/// endpoints start at y_lo = -15, y_hi = z + 40 eta and move outward until
/// the bound is below abs_tol * 1e-3.
double gxi_cdf(double z, double eta, const QuadratureSpec& spec = kGxiQuadrature);

struct Gumbel {};
struct GXi {
  double eta = 0.0;
};

/// Gumbel for xi in [0, 2]; GXi(eta(xi)) for xi > 2.
using LimitLaw = std::variant<Gumbel, GXi>;

LimitLaw law_for(double xi);
double law_cdf(const LimitLaw& law, double z);

/// Bisection on law_cdf. The bracket starts at [-10, 10] and doubles
/// outward; DomainError if q is outside (0, 1) or no bracket is found.
double law_quantile(const LimitLaw& law, double q);

/// "gumbel" or "gxi(eta=...)" with the shortest round-trip eta.
std::string describe(const LimitLaw& law);

/// c_2 of the m = 2 GOE extreme-eigenvalue law:
///   -1/(2 sqrt 2) + (sqrt 2 / pi) arcsin(2^{-1/4}).
extern const double kFengC2;

/// exp(-c_2 exp(-(t^2 - 8 ln p) / 4)).
double feng_m2_cdf(double t, double p);

/// |Lambda(z) - feng_m2_cdf(B_{p,2} + z / alpha_p, p)|.
double feng_consistency_delta(double p, double z);

}  // namespace minormax
