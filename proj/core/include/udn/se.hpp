#pragma once

#include "udn/params.hpp"
#include "udn/quadrature.hpp"

namespace udn::se {

enum class Method {
  ExactQuadrature,
  SparseClosedForm,
  UltraDenseClosedForm,
  LowerBound,
  MonteCarlo,
};

inline const char* to_string(Method m) {
  switch (m) {
    case Method::ExactQuadrature: return "exact-quadrature";
    case Method::SparseClosedForm: return "sparse-closed-form";
    case Method::UltraDenseClosedForm: return "ultradense-closed-form";
    case Method::LowerBound: return "lower-bound";
    case Method::MonteCarlo: return "monte-carlo";
  }
  return "?";
}

// A spectral efficiency value (nats/sec/Hz) tagged with how it was obtained,
// so asymptotic formulas are never silently mixed across regimes.
struct SEValue {
  double value = 0.0;
  Method method = Method::ExactQuadrature;
  Regime regime_assumption = Regime::None;
  bool validity_warning = false;  // inputs outside the formula's regime of validity
};

// Interference-geometry constant rho_0 = integral_0^inf du/(1+u^(alpha/2)),
// closed form (2 pi / alpha) csc(2 pi / alpha).
double rho_zero_analytic(double alpha);

// rho_0 via adaptive quadrature of the defining integral, cross-checked
// against the closed form within cfg.abs_tol (NumericalError on disagreement).
// Returns the closed-form value.
double rho_zero(double alpha, const quad::QuadratureConfig& cfg = {});

// rho_0 by quadrature alone, no closed-form involvement; exposed so the
// identity can be validated externally.
double rho_zero_quadrature(double alpha, const quad::QuadratureConfig& cfg = {});

// Tail integral rho_t = integral_L^inf du/(1+u^(alpha/2)) with lower limit
// L = (e^t - 1)^(-2/alpha); increasing in t, sup rho_0.
double rho_t(double t, double alpha, const quad::QuadratureConfig& cfg = {});

// Probability that a BS's cell holds at least one user and the BS transmits:
// 1 - (1 + lambda_u/(3.5 lambda_b))^(-3.5).
double p_active(double lambda_u, double lambda_b);

// Average SE of the typical user for a given interferer activity probability:
// integral_0^inf dt / (1 + p rho_t (e^t-1)^(2/alpha)). The improper integral
// is truncated where the analytic tail bound drops below tolerance; the inner
// rho_t quadrature runs one order tighter than the outer.
double se_exact_at_activity(double active_prob, double alpha,
                            const quad::QuadratureConfig& cfg = {});

// Exact all-density SE: se_exact_at_activity at p_active(lambda_u, lambda_b).
SEValue se_exact(const NetworkParams& params, const quad::QuadratureConfig& cfg = {});

// Sparse-regime SE constant gamma_alpha (all BSs active), independent of both
// densities.
SEValue se_sparse_gamma_alpha(double alpha, const quad::QuadratureConfig& cfg = {});

// Ultra-dense closed form log(1 + (lambda_b/(rho_0 lambda_u))^(alpha/2)).
SEValue se_udn_closed_form(const NetworkParams& params);

// Per-user SE under the uniformly random single-user scheduler.
// Sparse: (lambda_b/lambda_u) * gamma_alpha, flagged when lambda_b > lambda_u
// (selection probability above 1 is outside the formula's validity).
// UltraDense: identical to se_udn_closed_form.
SEValue se_with_multiple_access(const NetworkParams& params, Regime regime,
                                const quad::QuadratureConfig& cfg = {});

// Closed-form lower bound on the exact SE, with a = rho_0 lambda_u / lambda_b:
//   log(1 + a^(-alpha/2)) + a pi csc(2 pi/alpha)
//     - alpha / (2 (1 + a^(alpha/2))) * 2F1(1, 1; 1-2/alpha; 1 - 1/(a^(alpha/2)+1)).
// Approaches se_udn_closed_form as a -> 0.
SEValue se_lower_bound(const NetworkParams& params);

}  // namespace udn::se
