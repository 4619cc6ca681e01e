#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "minormax/limit_laws.hpp"
#include "minormax/special_functions.hpp"

namespace minormax {

/// Frozen parameters of the pair-exceedance kernels at one (xi, p, y, z).
///
/// c_p = beta_p + y / alpha_p is the upper truncation point of the
/// conditioned diagonal entries and t_p = B + z / A the threshold. At
/// p = 1e100 the kernels are ~1e-200 and some regimes are far below the
/// double range, so every kernel below is evaluated as a logarithm first.
struct KernelContext {
  double xi = 1.0;
  double p = 0.0;
  double y = 0.0;
  double z = 0.0;
  double t_p = 0.0;
  double c_p = 0.0;
  double alpha_p = 0.0;
  double beta_p = 0.0;
  /// True when t_p was built from the norm constants (r is then the exact
  /// limit t_p / alpha_p of the theorem).
  bool theorem_threshold = true;
};

/// Context with t_p = B_{p,xi} + z / A_{p,xi}. DomainError unless xi > 0,
/// p > e and t_p - sqrt(xi) c_p > 0; for p >= 1e6 also requires
/// t_p / c_p in (sqrt(xi), sqrt(xi) + 2 / sqrt(xi)).
KernelContext make_kernel_context(double xi, double p, double y, double z);

/// Same validation with an arbitrary threshold t_p.
KernelContext make_kernel_context_with_threshold(double xi, double p, double y, double t_p);

/// Tolerances used by the nested kernel integrals.
struct KernelQuadrature {
  QuadratureSpec inner{1e-300, 1e-11, 60};
  QuadratureSpec outer{1e-300, 1e-9, 60};
};

/// P(N(0,1)^2 > (t - sqrt(xi) x)(t - sqrt(xi) y)): 2 sf(sqrt(product)) when
/// the product is positive, 1 otherwise.
double q_xy(double x, double y, double t, double xi);
double log_q_xy(double x, double y, double t, double xi);

/// Integrates exp(log_f) over (-inf, upper]. The range is found by walking
/// left from `upper` in steps of `step` until log_f has dropped 45 below
/// its running maximum past the peak; the scaled integrand exp(log_f - max)
/// then goes to adaptive_integrate. Returns the log of the integral.
double log_integrate_left_tail(const std::function<double(double)>& log_f, double upper, const QuadratureSpec& spec,
                               double step = 0.25);

/// Kernel evaluations sharing one memo of log q(x; t_p) keyed by x. The memo
/// lives only as long as the evaluator, so nothing is shared across calls.
class KernelEvaluator {
 public:
  explicit KernelEvaluator(const KernelContext& ctx, const KernelQuadrature& quad = {});

  const KernelContext& context() const { return ctx_; }

  /// log E q(x, zbar; t_p), zbar ~ phi truncated to (-inf, c_p]; x <= c_p.
  double log_q_x(double x);
  /// log E q(zbar_1; t_p).
  double log_q_tp();
  /// log E q(zbar_1; t_p)^j, j >= 1.
  double log_q_moment(int j);

 private:
  KernelContext ctx_;
  KernelQuadrature quad_;
  double log_trunc_mass_;
  std::unordered_map<double, double> memo_;
};

double q_x(double x, const KernelContext& ctx, const KernelQuadrature& quad = {});
double q_tp(const KernelContext& ctx, const KernelQuadrature& quad = {});
double q_moment(int j, const KernelContext& ctx, const KernelQuadrature& quad = {});

// ---------------------------------------------------------------------------
// Closed-form asymptotics
// ---------------------------------------------------------------------------

enum class QxRegime { kUpper, kBulk, kSmallX };

/// ln c_p unless overridden.
double default_buffer(const KernelContext& ctx);
/// x_p = (t_p - 2 c_p / sqrt(xi)) / sqrt(xi) + b_p, lower end of the bulk regime.
double bulk_lower_bound(const KernelContext& ctx, std::optional<double> buffer = std::nullopt);
/// (t_p - 2 c_p / sqrt(xi)) / sqrt(xi) - b_p, upper end of the small-x regime.
double small_x_upper_bound(const KernelContext& ctx, std::optional<double> buffer = std::nullopt);

/// Log of the asymptotic form of q(x; t_p) in the given regime (upper
/// bound, bulk approximation or small-x approximation). DomainError when x
/// lies outside the regime.
double predict_log_q_x(double x, const KernelContext& ctx, QxRegime regime,
                       std::optional<double> buffer = std::nullopt);
double predict_q_x(double x, const KernelContext& ctx, QxRegime regime, std::optional<double> buffer = std::nullopt);

/// int_{1 - sqrt2/r}^{sqrt2/r} s^{-1/2} (1 - s)^{-1/2} ds for r in
/// (sqrt 2, 2 sqrt 2), via the arcsine antiderivative.
double arcsine_window(double r);

/// Log of the asymptotic q(t_p): the xi < 2, xi = 2 and xi > 2 case
/// formulas. At xi = 2 with the theorem threshold the window integral is
/// 2 arcsin(sqrt2 - 1); otherwise r = t_p / alpha_p. The xi > 2 case needs
/// q(c_p; t_p) and so runs a quadrature.
double predict_log_q_tp(const KernelContext& ctx, const KernelQuadrature& quad = {});
double predict_log_q_tp(KernelEvaluator& evaluator);

/// Leading term of E q(zbar; t_p)^j for xi > 2, j >= 2.
double predict_log_q_moment(int j, KernelEvaluator& evaluator);

// ---------------------------------------------------------------------------
// Limit diagnostics
// ---------------------------------------------------------------------------

struct Diagnostic {
  std::string name;
  double p = 0.0;
  double value = 0.0;
  double predicted_limit = 0.0;
  double ratio = 0.0;
};

/// Finite-p quantities and their limits:
///   phi_cp_over_cp     p phi(c_p) / c_p           -> e^{-y}
///   p_q_cp             p q(c_p; t_p)              -> tau            (xi > 2)
///   p2_q_tp            p^2 q(t_p)                 -> 2 e^{-z} (xi <= 2), 2 eta tau e^{-y} / (1 - eta)
///   pj1_q_moment_<j>   p^{j+1} E q(zbar; t_p)^j   -> eta tau^j e^{-y} / (j - eta)   (xi > 2, 2 <= j <= j_max)
/// plus the case formulas compared at the same p:
///   estofq_q_tp        p^2 q(t_p) against p^2 times its case formula
///   estofq_moment_<j>  p^{j+1} E q^j against its leading term (xi > 2)
///   lem2_bulk_cp       p q(c_p; t_p) against p times the bulk form at c_p
/// tau = exp((y - z) / eta). DomainError for j_max > 8.
std::vector<Diagnostic> chores_limits(const KernelContext& ctx, int j_max = 3, const KernelQuadrature& quad = {});

struct SeriesCheck {
  double partial_sum = 0.0;     ///< sum_{j <= j_max} (-1)^{j-1} gamma_j / j!
  double integral_value = 0.0;  ///< eta e^{-z} int_0^tau s^{-1-eta} (1 - e^{-s}) ds
  double next_term = 0.0;       ///< gamma_{j_max+1} / (j_max+1)!, the alternating-series bound
};

/// gamma_j = eta tau^j e^{-y} / (j - eta), j >= 1.
double series_gamma(int j, double tau, double eta, double y);

/// DomainError unless tau = exp((y - z) / eta) to 1e-12 relative.
SeriesCheck series_identity_check(double tau, double eta, double y, double z, int j_max);

}  // namespace minormax
