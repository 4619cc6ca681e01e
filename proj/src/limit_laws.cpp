#include "minormax/limit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "minormax/errors.hpp"
#include "minormax/format.hpp"

namespace minormax {

namespace {

constexpr double kE = 2.718281828459045235360287471352662498;

// ln(sqrt(2) pi / arcsin(sqrt(2) - 1)), the xi = 2 location offset.
const double kXi2Offset = std::log(kSqrt2 * kPi / std::asin(kSqrt2 - 1.0));

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

const double kFengC2 = -1.0 / (2.0 * kSqrt2) + (kSqrt2 / kPi) * std::asin(std::pow(2.0, -0.25));

NormConstants norm_constants(double xi, double p) {
  if (!(xi >= 0.0) || !std::isfinite(xi)) {
    throw DomainError("norm_constants: xi must be finite and >= 0");
  }
  if (!(p > kE) || !std::isfinite(p)) {
    throw DomainError("norm_constants: p must be finite and > e");
  }
  NormConstants k;
  k.xi = xi;
  k.p = p;
  const double alpha = std::sqrt(2.0 * std::log(p));
  const double beta = alpha - std::log(std::sqrt(2.0 * kPi) * alpha) / alpha;
  k.alpha_p = alpha;
  k.beta_p = beta;
  if (xi < 2.0) {
    const double s = std::sqrt(2.0 + xi);
    k.A = 2.0 / s * alpha;
    k.B = s * alpha - s / (2.0 * alpha) * std::log(std::sqrt(2.0 * kPi * (2.0 - xi)) * alpha);
  } else if (xi == 2.0) {
    k.A = alpha;
    k.B = 2.0 * alpha - kXi2Offset / alpha;
  } else {
    const double r = std::sqrt(xi);
    k.A = (2.0 + r) / (xi + r) * alpha;
    k.B = (xi + 2.0 * r + 2.0) / (2.0 + r) * beta - std::log(std::sqrt(1.0 + r) / (2.0 + r)) / alpha;
  }
  return k;
}

double eta(double xi) {
  if (!(xi > 2.0)) {
    throw DomainError("eta: xi must be > 2");
  }
  const double r = std::sqrt(xi);
  return (2.0 + r) / (xi + r);
}

double gumbel_cdf(double z) { return std::exp(-std::exp(-z)); }

double gumbel_pdf(double z) { return std::exp(-z - std::exp(-z)); }

namespace {

void check_eta(double eta_value) {
  if (!(eta_value > 0.0 && eta_value < 1.0)) {
    throw DomainError("eta must lie in (0, 1)");
  }
  if (eta_value >= kMaxEta) {
    throw DomainError("eta >= 1 - 1e-6: the law is not evaluated this close to the xi = 2 transition");
  }
}

// inner_integral without the warning, for use inside quadrature loops.
double inner_integral_unchecked(double tau, double eta_value) {
  if (tau == 0.0) {
    return 0.0;
  }
  const double g = lower_incomplete_gamma(1.0 - eta_value, tau);
  const double boundary = std::pow(tau, -eta_value) * -std::expm1(-tau);
  return (g - boundary) / eta_value;
}

}  // namespace

double inner_integral(double tau, double eta_value) {
  check_eta(eta_value);
  if (!(tau >= 0.0)) {
    throw DomainError("inner_integral: tau must be >= 0");
  }
  if (eta_value > 0.999) {
    warn("inner_integral: eta > 0.999, gamma(1 - eta, tau) is close to its pole");
  }
  return inner_integral_unchecked(tau, eta_value);
}

double gxi_cdf(double z, double eta_value, const QuadratureSpec& spec) {
  check_eta(eta_value);
  spec.validate();
  if (eta_value > 0.999) {
    warn("gxi_cdf: eta > 0.999, gamma(1 - eta, tau) is close to its pole");
  }
  if (std::isnan(z)) {
    throw DomainError("gxi_cdf: z is NaN");
  }
  if (z == std::numeric_limits<double>::infinity()) return 1.0;
  if (z == -std::numeric_limits<double>::infinity()) return 0.0;

  const double tail_budget = spec.abs_tol * 1e-3;
  double lo = -15.0;
  while (gumbel_cdf(lo) > tail_budget) {
    lo -= 5.0;
  }
  double hi = z + 40.0 * eta_value;
  while (std::exp(-std::exp((hi - z) / eta_value)) > tail_budget) {
    hi += 5.0 * eta_value;
  }
  if (hi <= lo) {
    // Everything left of hi is already inside the left-tail bound.
    return 0.0;
  }

  auto integrand = [z, eta_value](double y) {
    const double tau = std::exp((y - z) / eta_value);
    if (tau > 800.0) {
      return 0.0;
    }
    const double inner = inner_integral_unchecked(tau, eta_value);
    const double penalty = inner > 0.0 ? std::exp(std::log(eta_value * inner) - z) : 0.0;
    return std::exp(-tau - penalty) * gumbel_pdf(y);
  };

  std::vector<double> cuts = {lo};
  for (double c : {std::min(0.0, z), std::max(0.0, z)}) {
    if (c > cuts.back() && c < hi) cuts.push_back(c);
  }
  cuts.push_back(hi);

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += adaptive_integrate(integrand, cuts[i], cuts[i + 1], spec);
  }
  return std::clamp(total, 0.0, 1.0);
}

LimitLaw law_for(double xi) {
  if (!(xi >= 0.0)) {
    throw DomainError("law_for: xi must be >= 0");
  }
  if (xi <= 2.0) {
    return Gumbel{};
  }
  return GXi{eta(xi)};
}

double law_cdf(const LimitLaw& law, double z) {
  return std::visit(Overloaded{[z](const Gumbel&) { return gumbel_cdf(z); },
                               [z](const GXi& g) { return gxi_cdf(z, g.eta); }},
                    law);
}

double law_quantile(const LimitLaw& law, double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("law_quantile: q must lie in (0, 1)");
  }
  double lo = -10.0;
  double hi = 10.0;
  for (int i = 0; i < 12 && law_cdf(law, lo) >= q; ++i) {
    lo -= (hi - lo);
  }
  for (int i = 0; i < 12 && law_cdf(law, hi) < q; ++i) {
    hi += (hi - lo);
  }
  if (!(law_cdf(law, lo) < q && law_cdf(law, hi) >= q)) {
    throw DomainError("law_quantile: could not bracket the quantile");
  }
  // Stops once the midpoint is no longer representable between lo and hi.
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      break;
    }
    if (law_cdf(law, mid) < q) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::string describe(const LimitLaw& law) {
  return std::visit(Overloaded{[](const Gumbel&) { return std::string("gumbel"); },
                               [](const GXi& g) { return "gxi(eta=" + shortest(g.eta) + ")"; }},
                    law);
}

double feng_m2_cdf(double t, double p) {
  if (!(p > kE)) {
    throw DomainError("feng_m2_cdf: p must be > e");
  }
  return std::exp(-kFengC2 * std::exp(-(t * t - 8.0 * std::log(p)) / 4.0));
}

double feng_consistency_delta(double p, double z) {
  const NormConstants k = norm_constants(2.0, p);
  return std::abs(gumbel_cdf(z) - feng_m2_cdf(k.B + z / k.alpha_p, p));
}

}  // namespace minormax
