#include "udn/se.hpp"

#include <algorithm>
#include <cmath>

#include "udn/errors.hpp"
#include "udn/special.hpp"

namespace udn::se {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_alpha(double alpha) {
  if (!(alpha > 2.0)) throw DomainError("alpha must be > 2");
}

// log(1 + e^x) without overflow on either side
double log1p_exp(double x) {
  if (x > 36.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

// log(e^t - 1) for t > 0
double log_em1(double t) {
  if (t > 1.0) return t + std::log1p(-std::exp(-t));
  return std::log(std::expm1(t));
}

// integral_0^L du/(1 + u^m) for 0 <= L <= 1 (smooth, direct)
double rho_head(double L, double m, double tol, int max_sub) {
  if (L <= 0.0) return 0.0;
  return quad::integrate([m](double u) { return 1.0 / (1.0 + std::pow(u, m)); }, 0.0, L,
                         tol, tol, max_sub)
      .value;
}

// integral_L^inf du/(1 + u^m) for L >= 1, m > 1: log-substituted body over
// [L, U] plus the alternating power-series remainder beyond U, with U chosen
// so the first dropped term is below eps_rem.
double rho_tail(double L, double m, double tol, int max_sub) {
  const double eps_rem = 0.02 * tol;
  double U = std::pow((4.0 * m - 1.0) * eps_rem, 1.0 / (1.0 - 4.0 * m));
  U = std::max({U, 2.0 * L, 2.0});
  const double body = quad::integrate(
                          [m](double s) {
                            const double u = std::exp(s);
                            return u / (1.0 + std::pow(u, m));
                          },
                          std::log(L), std::log(U), tol, tol, max_sub)
                          .value;
  const double rem = std::pow(U, 1.0 - m) / (m - 1.0) -
                     std::pow(U, 1.0 - 2.0 * m) / (2.0 * m - 1.0) +
                     std::pow(U, 1.0 - 3.0 * m) / (3.0 * m - 1.0);
  return body + rem;
}

double rho_t_impl(double t, double alpha, double tol, int max_sub) {
  const double m = 0.5 * alpha;
  const double logL = -(2.0 / alpha) * log_em1(t);
  const double L = std::exp(logL);
  if (L <= 1.0) return rho_zero_analytic(alpha) - rho_head(L, m, tol, max_sub);
  return rho_tail(L, m, tol, max_sub);
}

}  // namespace

double rho_zero_analytic(double alpha) {
  check_alpha(alpha);
  const double x = 2.0 * kPi / alpha;
  return x / std::sin(x);
}

double rho_zero_quadrature(double alpha, const quad::QuadratureConfig& cfg) {
  check_alpha(alpha);
  cfg.validate();
  const double tol = 0.05 * cfg.abs_tol;
  const double m = 0.5 * alpha;
  return rho_head(1.0, m, tol, cfg.max_subdivisions) +
         rho_tail(1.0, m, tol, cfg.max_subdivisions);
}

double rho_zero(double alpha, const quad::QuadratureConfig& cfg) {
  const double analytic = rho_zero_analytic(alpha);
  const double quadrature = rho_zero_quadrature(alpha, cfg);
  if (std::abs(quadrature - analytic) > cfg.abs_tol)
    throw NumericalError("rho_zero quadrature disagrees with the closed form", quadrature);
  return analytic;
}

double rho_t(double t, double alpha, const quad::QuadratureConfig& cfg) {
  check_alpha(alpha);
  cfg.validate();
  if (!(t > 0.0)) throw DomainError("rho_t requires t > 0");
  return rho_t_impl(t, alpha, std::min(cfg.abs_tol, cfg.rel_tol), cfg.max_subdivisions);
}

double p_active(double lambda_u, double lambda_b) {
  if (!(lambda_u > 0.0) || !(lambda_b > 0.0)) throw DomainError("densities must be > 0");
  const double r = lambda_u / lambda_b;
  return -std::expm1(-3.5 * std::log1p(r / 3.5));
}

double se_exact_at_activity(double active_prob, double alpha,
                            const quad::QuadratureConfig& cfg) {
  check_alpha(alpha);
  cfg.validate();
  if (!(active_prob > 0.0) || active_prob > 1.0)
    throw DomainError("active_prob must be in (0, 1]");

  const double p = active_prob;
  const double rho0 = rho_zero_analytic(alpha);
  const double eps_tail = std::min(1e-10, cfg.abs_tol);
  double T = cfg.outer_truncation;
  if (T <= 0.0)
    T = 0.5 * alpha * std::log((1.0 / eps_tail) * std::max(1.0, 1.0 / (p * rho0)));

  const double inner_tol = 0.1 * std::min(cfg.abs_tol, cfg.rel_tol);
  auto integrand = [&](double t) {
    if (t <= 0.0) return 1.0;
    const double x = std::exp((2.0 / alpha) * log_em1(t));
    const double rt = rho_t_impl(t, alpha, inner_tol, cfg.max_subdivisions);
    return 1.0 / (1.0 + p * x * rt);
  };
  double value =
      quad::integrate(integrand, 0.0, T, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions)
          .value;
  // analytic estimate of the truncated tail, where the integrand ~ e^(-2t/alpha)/(p rho_0)
  value += 0.5 * alpha * std::exp(-2.0 * T / alpha) / (p * rho0);
  return value;
}

SEValue se_exact(const NetworkParams& params, const quad::QuadratureConfig& cfg) {
  params.validate();
  const double p = p_active(params.lambda_u, params.lambda_b);
  return {se_exact_at_activity(p, params.alpha, cfg), Method::ExactQuadrature, Regime::None,
          false};
}

SEValue se_sparse_gamma_alpha(double alpha, const quad::QuadratureConfig& cfg) {
  return {se_exact_at_activity(1.0, alpha, cfg), Method::SparseClosedForm, Regime::Sparse,
          false};
}

SEValue se_udn_closed_form(const NetworkParams& params) {
  params.validate();
  const double rho0 = rho_zero_analytic(params.alpha);
  const double log_ratio = std::log(params.lambda_b / (rho0 * params.lambda_u));
  const double value = log1p_exp(0.5 * params.alpha * log_ratio);
  return {value, Method::UltraDenseClosedForm, Regime::UltraDense, false};
}

SEValue se_with_multiple_access(const NetworkParams& params, Regime regime,
                                const quad::QuadratureConfig& cfg) {
  params.validate();
  if (regime == Regime::Sparse) {
    const double ratio = params.lambda_b / params.lambda_u;
    const double gamma_alpha = se_exact_at_activity(1.0, params.alpha, cfg);
    // ratio > 1 means a selection probability above 1: report, don't clamp
    return {ratio * gamma_alpha, Method::SparseClosedForm, Regime::Sparse, ratio > 1.0};
  }
  if (regime == Regime::UltraDense) {
    SEValue v = se_udn_closed_form(params);
    return v;
  }
  throw DomainError("multiple-access SE is defined for Sparse and UltraDense regimes");
}

SEValue se_lower_bound(const NetworkParams& params) {
  params.validate();
  const double alpha = params.alpha;
  const double rho0 = rho_zero_analytic(alpha);
  const double a = rho0 * params.lambda_u / params.lambda_b;
  const double m = 0.5 * alpha;
  const double loga = std::log(a);

  const double term_log = log1p_exp(-m * loga);    // log(1 + a^(-alpha/2))
  const double term_lin = a * m * rho0;            // a * pi * csc(2 pi / alpha)
  const double am = std::exp(m * loga);            // a^(alpha/2)
  if (!std::isfinite(am))
    throw NumericalError("se_lower_bound: hypergeometric argument at 1", term_log);
  const double z = am / (1.0 + am);
  const double c = 1.0 - 2.0 / alpha;
  const double term_hyp = alpha / (2.0 * (1.0 + am)) * special::hyp2f1_11c(c, z);

  double value = term_log + term_lin - term_hyp;
  if (value < 0.0) {
    // the underlying truncated integral is nonnegative; only roundoff may dip below
    if (value < -1e-9)
      throw NumericalError("se_lower_bound: catastrophic cancellation", value);
    value = 0.0;
  }
  return {value, Method::LowerBound, Regime::None, false};
}

}  // namespace udn::se
