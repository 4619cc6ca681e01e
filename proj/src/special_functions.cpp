#include "minormax/special_functions.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "minormax/errors.hpp"

namespace minormax {

namespace {

constexpr double kSqrtPi = 1.772453850905516027298167483341145183;
constexpr double kSqrtHalfPi = 1.253314137315500251207882642405522627;

// Keeps the top 26 significand bits so that hi * hi is exact in double.
double high_part(double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x) & ~((std::uint64_t{1} << 27) - 1);
  return std::bit_cast<double>(bits);
}

// exp(sign * x^2 * scale) with x^2 carried as hi^2 + lo, hi^2 exact.
// Plain exp(-x*x/2) loses ~x^2 ulps to the rounding of x*x.
double exp_of_square(double x, double factor) {
  const double hi = high_part(x);
  const double lo = (x - hi) * (x + hi);
  return std::exp(factor * hi * hi) * std::exp(factor * lo);
}

}  // namespace

double std_normal_pdf(double x) { return kInvSqrt2Pi * exp_of_square(x, -0.5); }

double log_std_normal_pdf(double x) { return -0.5 * x * x - kLogSqrt2Pi; }

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double erfcx(double u) {
  if (u < 26.0) {
    return exp_of_square(u, 1.0) * std::erfc(u);
  }
  // Laplace continued fraction, partial numerators k/2; 40 levels are far
  // past convergence for u >= 26.
  double t = u;
  for (int k = 40; k >= 1; --k) {
    t = u + 0.5 * k / t;
  }
  return 1.0 / (kSqrtPi * t);
}

double std_normal_sf(double x) {
  if (x <= 0.0) {
    return 0.5 * std::erfc(x / kSqrt2);
  }
  // sf(x) = phi(x) * sqrt(pi/2) * erfcx(x/sqrt2)
  return kInvSqrt2Pi * exp_of_square(x, -0.5) * kSqrtHalfPi * erfcx(x / kSqrt2);
}

double log_std_normal_sf(double x) {
  if (x <= 0.0) {
    return std::log1p(-0.5 * std::erfc(-x / kSqrt2));
  }
  return std::log(0.5 * erfcx(x / kSqrt2)) - 0.5 * x * x;
}

double log_std_normal_cdf(double x) { return log_std_normal_sf(-x); }

double lower_incomplete_gamma(double a, double x) {
  if (!(a > 0.0 && a <= 1.0)) {
    throw DomainError("lower_incomplete_gamma: a must lie in (0, 1]");
  }
  if (!(x >= 0.0)) {
    throw DomainError("lower_incomplete_gamma: x must be >= 0");
  }
  if (x == 0.0) {
    return 0.0;
  }
  const double log_prefactor = a * std::log(x) - x;
  if (x < a + 1.0) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 500; ++n) {
      term *= x / (a + n);
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-17) {
        break;
      }
    }
    return std::exp(log_prefactor) * sum;
  }
  // Modified Lentz for the upper tail Gamma(a, x).
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) {
      break;
    }
  }
  const double upper = std::exp(log_prefactor) * h;
  return std::tgamma(a) - upper;
}

// ---------------------------------------------------------------------------

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_depth < 1) {
    throw DomainError("QuadratureSpec: need abs_tol > 0, rel_tol > 0, max_depth >= 1");
  }
}

namespace {

// Kronrod 15-point nodes (positive half) and weights; Gauss 7-point weights
// on the even-indexed Kronrod nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  int depth;
};

Segment gauss_kronrod(const Integrand& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto eval = [&](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "adaptive_integrate: non-finite integrand value at x=" << x;
      throw QuadratureError(msg.str());
    }
    return v;
  };
  const double fc = eval(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = eval(center - dx) + eval(center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) {
      gauss += kWg[j / 2] * pair;
    }
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss), depth};
}

bool less_urgent(const Segment& x, const Segment& y) {
  if (x.error != y.error) return x.error < y.error;
  return x.a > y.a;
}

}  // namespace

double adaptive_integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  if (!std::isfinite(a) || !std::isfinite(b) || a > b) {
    throw DomainError("adaptive_integrate: need finite a <= b");
  }
  if (a == b) {
    return 0.0;
  }

  std::vector<Segment> heap;
  heap.push_back(gauss_kronrod(f, a, b, 0));
  double total = heap.front().value;
  double total_err = heap.front().error;

  constexpr std::size_t kMaxSegments = 1 << 15;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    std::pop_heap(heap.begin(), heap.end(), less_urgent);
    const Segment worst = heap.back();
    heap.pop_back();
    if (worst.depth >= spec.max_depth || heap.size() + 2 > kMaxSegments) {
      std::ostringstream msg;
      msg << "adaptive_integrate: no convergence on [" << a << ", " << b << "]; error estimate "
          << total_err << " at depth " << worst.depth;
      throw QuadratureError(msg.str());
    }
    const double mid = 0.5 * (worst.a + worst.b);
    for (const Segment& s :
         {gauss_kronrod(f, worst.a, mid, worst.depth + 1), gauss_kronrod(f, mid, worst.b, worst.depth + 1)}) {
      heap.push_back(s);
      std::push_heap(heap.begin(), heap.end(), less_urgent);
    }
    // Re-summing keeps the running totals free of cancellation drift.
    total = 0.0;
    total_err = 0.0;
    for (const Segment& s : heap) {
      total += s.value;
      total_err += s.error;
    }
  }
  return total;
}

double integrate_left_singular(const Integrand& f, double a, double b, double theta,
                               const QuadratureSpec& spec) {
  if (!(theta >= 0.0 && theta < 1.0)) {
    throw DomainError("integrate_left_singular: theta must lie in [0, 1)");
  }
  const double width = b - a;
  const double power = 1.0 / (1.0 - theta);
  auto g = [&](double u) {
    const double s = a + width * std::pow(u, power);
    const double jacobian = width * power * std::pow(u, power - 1.0);
    return f(s) * jacobian;
  };
  return adaptive_integrate(g, 0.0, 1.0, spec);
}

}  // namespace minormax
