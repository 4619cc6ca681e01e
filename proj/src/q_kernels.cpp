#include "minormax/q_kernels.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "minormax/errors.hpp"

namespace minormax {

namespace {

constexpr double kLogTwo = 0.693147180559945309417232121458176568;
constexpr double kLogPi = 1.144729885849400174143427351353058712;

void check_context(const KernelContext& ctx) {
  if (!(ctx.xi > 0.0) || !std::isfinite(ctx.xi)) {
    throw DomainError("KernelContext: xi must be finite and > 0");
  }
  const double root_xi = std::sqrt(ctx.xi);
  if (!(ctx.t_p - root_xi * ctx.c_p > 0.0)) {
    throw DomainError("KernelContext: need t_p - sqrt(xi) c_p > 0");
  }
  if (ctx.p >= 1e6) {
    const double ratio = ctx.t_p / ctx.c_p;
    if (!(ratio > root_xi && ratio < root_xi + 2.0 / root_xi)) {
      std::ostringstream msg;
      msg << "KernelContext: t_p / c_p = " << ratio << " outside (sqrt(xi), sqrt(xi) + 2/sqrt(xi))";
      throw DomainError(msg.str());
    }
  }
}

}  // namespace

KernelContext make_kernel_context_with_threshold(double xi, double p, double y, double t_p) {
  const NormConstants k = norm_constants(xi, p);
  KernelContext ctx;
  ctx.xi = xi;
  ctx.p = p;
  ctx.y = y;
  ctx.z = std::numeric_limits<double>::quiet_NaN();
  ctx.alpha_p = k.alpha_p;
  ctx.beta_p = k.beta_p;
  ctx.c_p = k.beta_p + y / k.alpha_p;
  ctx.t_p = t_p;
  ctx.theorem_threshold = false;
  check_context(ctx);
  return ctx;
}

KernelContext make_kernel_context(double xi, double p, double y, double z) {
  const NormConstants k = norm_constants(xi, p);
  KernelContext ctx = make_kernel_context_with_threshold(xi, p, y, k.B + z / k.A);
  ctx.z = z;
  ctx.theorem_threshold = true;
  return ctx;
}

double log_q_xy(double x, double y, double t, double xi) {
  const double root_xi = std::sqrt(xi);
  const double product = (t - root_xi * x) * (t - root_xi * y);
  if (!(product > 0.0)) {
    return 0.0;
  }
  return kLogTwo + log_std_normal_sf(std::sqrt(product));
}

double q_xy(double x, double y, double t, double xi) {
  const double root_xi = std::sqrt(xi);
  const double product = (t - root_xi * x) * (t - root_xi * y);
  if (!(product > 0.0)) {
    return 1.0;
  }
  return 2.0 * std_normal_sf(std::sqrt(product));
}

double log_integrate_left_tail(const std::function<double(double)>& log_f, double upper, const QuadratureSpec& spec,
                               double step) {
  constexpr double kDrop = 45.0;
  constexpr int kMaxSteps = 200000;
  double peak = log_f(upper);
  double peak_y = upper;
  double lo = upper;
  for (int steps = 1;; ++steps) {
    if (steps > kMaxSteps) {
      throw QuadratureError("log_integrate_left_tail: integrand does not decay to the left");
    }
    lo = upper - steps * step;
    const double v = log_f(lo);
    if (std::isnan(v)) {
      throw QuadratureError("log_integrate_left_tail: NaN log-integrand");
    }
    if (v > peak) {
      peak = v;
      peak_y = lo;
    }
    if (v < peak - kDrop && lo < peak_y - 1.0) {
      break;
    }
  }
  if (!std::isfinite(peak)) {
    throw QuadratureError("log_integrate_left_tail: log-integrand has no finite maximum");
  }
  auto scaled = [&](double y) { return std::exp(log_f(y) - peak); };
  double total = 0.0;
  if (peak_y > lo) total += adaptive_integrate(scaled, lo, peak_y, spec);
  if (upper > peak_y) total += adaptive_integrate(scaled, peak_y, upper, spec);
  return peak + std::log(total);
}

// ---------------------------------------------------------------------------

KernelEvaluator::KernelEvaluator(const KernelContext& ctx, const KernelQuadrature& quad)
    : ctx_(ctx), quad_(quad), log_trunc_mass_(log_std_normal_cdf(ctx.c_p)) {
  check_context(ctx_);
}

double KernelEvaluator::log_q_x(double x) {
  if (!(x <= ctx_.c_p)) {
    throw DomainError("q_x: x must be <= c_p");
  }
  if (auto it = memo_.find(x); it != memo_.end()) {
    return it->second;
  }
  const double t = ctx_.t_p;
  const double xi = ctx_.xi;
  const double shift = log_trunc_mass_;
  auto log_f = [x, t, xi, shift](double y) { return log_q_xy(x, y, t, xi) + log_std_normal_pdf(y) - shift; };
  const double value = log_integrate_left_tail(log_f, ctx_.c_p, quad_.inner);
  memo_.emplace(x, value);
  return value;
}

double KernelEvaluator::log_q_moment(int j) {
  if (j < 1) {
    throw DomainError("q_moment: j must be >= 1");
  }
  const double shift = log_trunc_mass_;
  auto log_f = [this, j, shift](double y) { return j * log_q_x(y) + log_std_normal_pdf(y) - shift; };
  return log_integrate_left_tail(log_f, ctx_.c_p, quad_.outer);
}

double KernelEvaluator::log_q_tp() { return log_q_moment(1); }

double q_x(double x, const KernelContext& ctx, const KernelQuadrature& quad) {
  return std::exp(KernelEvaluator(ctx, quad).log_q_x(x));
}

double q_tp(const KernelContext& ctx, const KernelQuadrature& quad) {
  return std::exp(KernelEvaluator(ctx, quad).log_q_tp());
}

double q_moment(int j, const KernelContext& ctx, const KernelQuadrature& quad) {
  return std::exp(KernelEvaluator(ctx, quad).log_q_moment(j));
}

// ---------------------------------------------------------------------------

double default_buffer(const KernelContext& ctx) { return std::log(ctx.c_p); }

namespace {

double regime_center(const KernelContext& ctx) {
  const double root_xi = std::sqrt(ctx.xi);
  return (ctx.t_p - 2.0 * ctx.c_p / root_xi) / root_xi;
}

// (4 - xi)/4 t^2 - xi^2/4 x^2 - (2 - xi) sqrt(xi)/2 x t
double quadratic_exponent(double x, const KernelContext& ctx) {
  const double xi = ctx.xi;
  const double t = ctx.t_p;
  return (4.0 - xi) / 4.0 * t * t - xi * xi / 4.0 * x * x - (2.0 - xi) * std::sqrt(xi) / 2.0 * x * t;
}

}  // namespace

double bulk_lower_bound(const KernelContext& ctx, std::optional<double> buffer) {
  return regime_center(ctx) + buffer.value_or(default_buffer(ctx));
}

double small_x_upper_bound(const KernelContext& ctx, std::optional<double> buffer) {
  return regime_center(ctx) - buffer.value_or(default_buffer(ctx));
}

double predict_log_q_x(double x, const KernelContext& ctx, QxRegime regime, std::optional<double> buffer) {
  const double xi = ctx.xi;
  const double root_xi = std::sqrt(xi);
  const double t = ctx.t_p;
  const double c = ctx.c_p;
  const double gap_x = t - root_xi * x;
  const double gap_c = t - root_xi * c;
  switch (regime) {
    case QxRegime::kUpper: {
      if (!(x <= c)) throw DomainError("predict_q_x(upper): need x <= c_p");
      const double c_bar = c - 0.5 * root_xi * gap_x;
      return kLogTwo - kLogSqrt2Pi - 0.5 * std::log(gap_x) + log_std_normal_cdf(c_bar) - 0.5 * std::log(gap_c) -
             0.5 * quadratic_exponent(x, ctx);
    }
    case QxRegime::kBulk: {
      if (!(x >= bulk_lower_bound(ctx, buffer) && x <= c)) {
        throw DomainError("predict_q_x(bulk): need x_p <= x <= c_p");
      }
      const double second = (1.0 - 0.5 * xi) * t + 0.5 * xi * root_xi * x;
      return kLogTwo - 0.5 * quadratic_exponent(x, ctx) - kLogSqrt2Pi - 0.5 * std::log(gap_x * second);
    }
    case QxRegime::kSmallX: {
      if (!(x <= small_x_upper_bound(ctx, buffer))) {
        throw DomainError("predict_q_x(small_x): need x <= xbar_p");
      }
      return kLogTwo - 0.5 * c * c - kLogPi - 0.5 * std::log(gap_c) - 0.5 * gap_x * gap_c - 0.5 * std::log(gap_x) -
             std::log(root_xi * gap_x - 2.0 * c);
    }
  }
  throw DomainError("predict_q_x: unknown regime");
}

double predict_q_x(double x, const KernelContext& ctx, QxRegime regime, std::optional<double> buffer) {
  return std::exp(predict_log_q_x(x, ctx, regime, buffer));
}

double arcsine_window(double r) {
  if (!(r > kSqrt2 && r < 2.0 * kSqrt2)) {
    throw DomainError("arcsine_window: r must lie in (sqrt 2, 2 sqrt 2)");
  }
  const double upper = kSqrt2 / r;
  const double lower = 1.0 - upper;
  return 2.0 * (std::asin(std::sqrt(upper)) - std::asin(std::sqrt(lower)));
}

double predict_log_q_tp(KernelEvaluator& evaluator) {
  const KernelContext& ctx = evaluator.context();
  const double xi = ctx.xi;
  const double t = ctx.t_p;
  if (xi < 2.0) {
    return 0.5 * std::log(2.0 * (2.0 + xi) / (kPi * (2.0 - xi))) - t * t / (2.0 + xi) - std::log(t);
  }
  if (xi == 2.0) {
    const double window =
        ctx.theorem_threshold ? 2.0 * std::asin(kSqrt2 - 1.0) : arcsine_window(t / ctx.alpha_p);
    return -t * t / 4.0 - std::log(kSqrt2 * kPi) + std::log(window);
  }
  const double c = ctx.c_p;
  const double denom = (xi * xi - 4.0) * c - (xi - 2.0) * std::sqrt(xi) * t;
  if (!(denom > 0.0)) {
    throw DomainError("predict_q_tp: non-positive denominator in the xi > 2 case");
  }
  return std::log(8.0) + evaluator.log_q_x(c) + log_std_normal_pdf(c) - std::log(denom);
}

double predict_log_q_tp(const KernelContext& ctx, const KernelQuadrature& quad) {
  KernelEvaluator evaluator(ctx, quad);
  return predict_log_q_tp(evaluator);
}

double predict_log_q_moment(int j, KernelEvaluator& evaluator) {
  const KernelContext& ctx = evaluator.context();
  if (!(ctx.xi > 2.0) || j < 2) {
    throw DomainError("predict_q_moment: needs xi > 2 and j >= 2");
  }
  const double xi = ctx.xi;
  const double c = ctx.c_p;
  const double denom = (j * xi * xi - 4.0) * c - j * (xi - 2.0) * std::sqrt(xi) * ctx.t_p;
  if (!(denom > 0.0)) {
    throw DomainError("predict_q_moment: non-positive denominator");
  }
  return std::log(4.0) + j * evaluator.log_q_x(c) + log_std_normal_pdf(c) - std::log(denom);
}

// ---------------------------------------------------------------------------

std::vector<Diagnostic> chores_limits(const KernelContext& ctx, int j_max, const KernelQuadrature& quad) {
  if (j_max > 8) {
    throw DomainError("chores_limits: j_max must be <= 8");
  }
  if (!ctx.theorem_threshold) {
    throw DomainError("chores_limits: limits are stated for the theorem threshold t_p = B + z/A");
  }
  KernelEvaluator ev(ctx, quad);
  const double log_p = std::log(ctx.p);
  const double c = ctx.c_p;
  std::vector<Diagnostic> out;
  auto add = [&](std::string name, double log_value, double limit) {
    const double value = std::exp(log_value);
    out.push_back({std::move(name), ctx.p, value, limit, value / limit});
  };
  auto add_pair = [&](std::string name, double log_value, double log_predicted) {
    out.push_back({std::move(name), ctx.p, std::exp(log_value), std::exp(log_predicted),
                   std::exp(log_value - log_predicted)});
  };

  add("phi_cp_over_cp", log_p + log_std_normal_pdf(c) - std::log(c), std::exp(-ctx.y));

  const double log_qc = ev.log_q_x(c);
  const double log_qtp = ev.log_q_tp();
  if (ctx.xi > 2.0) {
    const double shape = eta(ctx.xi);
    const double tau = std::exp((ctx.y - ctx.z) / shape);
    add("p_q_cp", log_p + log_qc, tau);
    add("p2_q_tp", 2.0 * log_p + log_qtp, 2.0 * shape * tau * std::exp(-ctx.y) / (1.0 - shape));
    for (int j = 2; j <= j_max; ++j) {
      add("pj1_q_moment_" + std::to_string(j), (j + 1) * log_p + ev.log_q_moment(j),
          shape / (j - shape) * std::pow(tau, j) * std::exp(-ctx.y));
    }
  } else {
    add("p2_q_tp", 2.0 * log_p + log_qtp, 2.0 * std::exp(-ctx.z));
  }

  add_pair("estofq_q_tp", 2.0 * log_p + log_qtp, 2.0 * log_p + predict_log_q_tp(ev));
  if (ctx.xi > 2.0) {
    for (int j = 2; j <= j_max; ++j) {
      add_pair("estofq_moment_" + std::to_string(j), (j + 1) * log_p + ev.log_q_moment(j),
               (j + 1) * log_p + predict_log_q_moment(j, ev));
    }
  }
  if (c >= bulk_lower_bound(ctx)) {
    add_pair("lem2_bulk_cp", log_p + log_qc, log_p + predict_log_q_x(c, ctx, QxRegime::kBulk));
  }
  return out;
}

double series_gamma(int j, double tau, double eta_value, double y) {
  return eta_value / (j - eta_value) * std::pow(tau, j) * std::exp(-y);
}

SeriesCheck series_identity_check(double tau, double eta_value, double y, double z, int j_max) {
  if (!(tau > 0.0)) {
    throw DomainError("series_identity_check: tau must be > 0");
  }
  if (!(eta_value > 0.0 && eta_value < 1.0)) {
    throw DomainError("series_identity_check: eta must lie in (0, 1)");
  }
  if (j_max < 1) {
    throw DomainError("series_identity_check: j_max must be >= 1");
  }
  const double expected_tau = std::exp((y - z) / eta_value);
  if (std::abs(tau - expected_tau) > 1e-12 * expected_tau) {
    throw DomainError("series_identity_check: tau must equal exp((y - z) / eta)");
  }
  auto term = [&](int j) {
    return std::exp(std::log(eta_value) + j * std::log(tau) - y - std::log(j - eta_value) - std::lgamma(j + 1.0));
  };
  SeriesCheck check;
  for (int j = 1; j <= j_max; ++j) {
    check.partial_sum += (j % 2 == 1 ? 1.0 : -1.0) * term(j);
  }
  check.next_term = term(j_max + 1);
  check.integral_value = eta_value * std::exp(-z) * inner_integral(tau, eta_value);
  return check;
}

}  // namespace minormax
