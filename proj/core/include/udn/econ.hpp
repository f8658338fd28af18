#pragma once

#include <functional>
#include <string>
#include <vector>

#include "udn/params.hpp"
#include "udn/quadrature.hpp"

namespace udn::econ {

// Profit objectives over (lambda_b, W). The SE entering the revenue term is:
//   ExactSE            all-density quadrature SE (no closed-form optimum)
//   SparseApprox       scheduler-shared sparse SE (lambda_b/lambda_u) gamma_alpha
//   SparseApproxLinear SparseApprox with the revenue Taylor-expanded for large W*gamma
//   DenseApprox        ultra-dense closed-form SE
//   DenseApproxLinear  DenseApprox with 1/log(1+x) replaced by x^(-1/2), then Taylor-expanded
enum class Objective {
  ExactSE,
  SparseApprox,
  SparseApproxLinear,
  DenseApprox,
  DenseApproxLinear,
};

const char* to_string(Objective o);

enum class Solver { ClosedForm, NumericOracle };

inline const char* to_string(Solver s) {
  return s == Solver::ClosedForm ? "closed-form" : "numeric";
}

struct DeploymentPlan {
  double lambda_b_star = 0.0;
  double w_star = 0.0;
  double p_star = 0.0;  // price per nat (exact branch)
  double x_bar = 0.0;   // average demand per user; equals w_star * gamma at the plan
  double profit = 0.0;  // per unit area, under the plan's own objective
  double gamma = 0.0;   // SE used by the plan's objective
  Regime regime = Regime::None;
  Solver solver = Solver::ClosedForm;
  std::vector<std::string> warnings;
};

// Average per-user demand at price p with willingness-to-pay uniform on [0, b]:
// each user demands X*(theta) = max(theta/p - 1, 0), averaging to
// (b - p)^2 / (2 b p). Requires 0 < p < b.
double avg_demand(double b, double p);

struct PriceResult {
  double exact = 0.0;   // makes avg_demand equal the supplied rate w*gamma
  double approx = 0.0;  // large-w*gamma expansion b / (2 (1 + w*gamma))
};

// Revenue-maximizing price per nat given supplied per-user rate w*gamma.
PriceResult optimal_price(double b, double w_gamma);

// Profit per unit area with the revenue in reduced form:
// (lambda_u b / 2) * wg/(1+wg) - (c_b lambda_b + c_w w), wg = w*gamma.
double profit(const NetworkParams& params, const CostParams& costs,
              const DemandModel& demand, double w, double gamma);

// The profit objective as a callable on (lambda_b, w) for optimizer/test use.
// ExactSE memoizes the quadrature SE per lambda_b within the returned callable.
std::function<double(double, double)> make_objective(Objective obj, double lambda_u,
                                                     double alpha, const DemandModel& demand,
                                                     const CostParams& costs,
                                                     const quad::QuadratureConfig& cfg = {});

// Closed-form profit-optimal deployment for the Sparse or UltraDense regime.
// Flags plans that land outside their own regime's validity. The profit field
// is evaluated under the regime's (non-linearized) objective.
DeploymentPlan closed_form_plan(Regime regime, double lambda_u, double alpha,
                                const DemandModel& demand, const CostParams& costs,
                                const quad::QuadratureConfig& cfg = {});

// Profit-maximizing ratio of BS to spectrum operating spend,
// c_b lambda_b* / (c_w w*): 1 for Sparse, 2^(-2) alpha^(8/(alpha+8)) for UltraDense.
double cost_ratio(Regime regime, double alpha);

}  // namespace udn::econ
