#include "udn/econ.hpp"

#include <cmath>
#include <map>
#include <memory>

#include "udn/errors.hpp"
#include "udn/se.hpp"

namespace udn::econ {

namespace {

double revenue(double lambda_u, double b, double w_gamma) {
  return 0.5 * lambda_u * b * w_gamma / (1.0 + w_gamma);
}

double udn_gamma(double lambda_b, double lambda_u, double alpha) {
  return se::se_udn_closed_form({lambda_b, lambda_u, alpha}).value;
}

}  // namespace

const char* to_string(Objective o) {
  switch (o) {
    case Objective::ExactSE: return "exact";
    case Objective::SparseApprox: return "sparse";
    case Objective::SparseApproxLinear: return "sparse-linear";
    case Objective::DenseApprox: return "dense";
    case Objective::DenseApproxLinear: return "dense-linear";
  }
  return "?";
}

double avg_demand(double b, double p) {
  if (!(b > 0.0)) throw DomainError("b must be > 0");
  if (!(p > 0.0) || !(p < b)) throw DomainError("price must satisfy 0 < p < b");
  const double d = b - p;
  return d * d / (2.0 * b * p);
}

PriceResult optimal_price(double b, double w_gamma) {
  if (!(b > 0.0)) throw DomainError("b must be > 0");
  if (!(w_gamma >= 0.0)) throw DomainError("w_gamma must be >= 0");
  const double s = 1.0 + w_gamma;
  // p* = b (s - sqrt(s^2-1)), computed in the division form that avoids
  // cancellation for large s
  const double exact = b / (s + std::sqrt(s * s - 1.0));
  return {exact, b / (2.0 * s)};
}

double profit(const NetworkParams& params, const CostParams& costs,
              const DemandModel& demand, double w, double gamma) {
  params.validate();
  costs.validate();
  demand.validate();
  if (!(w > 0.0)) throw DomainError("w must be > 0");
  if (!(gamma >= 0.0)) throw DomainError("gamma must be >= 0");
  return revenue(params.lambda_u, demand.b, w * gamma) -
         (costs.c_b * params.lambda_b + costs.c_w * w);
}

std::function<double(double, double)> make_objective(Objective obj, double lambda_u,
                                                     double alpha, const DemandModel& demand,
                                                     const CostParams& costs,
                                                     const quad::QuadratureConfig& cfg) {
  if (!(lambda_u > 0.0)) throw DomainError("lambda_u must be > 0");
  if (!(alpha > 2.0)) throw DomainError("alpha must be > 2");
  demand.validate();
  costs.validate();
  const double b = demand.b;
  const double c_b = costs.c_b;
  const double c_w = costs.c_w;
  const double half_rev_cap = 0.5 * lambda_u * b;

  switch (obj) {
    case Objective::ExactSE: {
      // per-callable memo: the SE depends on lambda_b only
      auto memo = std::make_shared<std::map<double, double>>();
      return [=](double lambda_b, double w) {
        auto it = memo->find(lambda_b);
        double g;
        if (it != memo->end()) {
          g = it->second;
        } else {
          g = se::se_exact({lambda_b, lambda_u, alpha}, cfg).value;
          memo->emplace(lambda_b, g);
        }
        return revenue(lambda_u, b, w * g) - (c_b * lambda_b + c_w * w);
      };
    }
    case Objective::SparseApprox: {
      const double gamma_alpha = se::se_exact_at_activity(1.0, alpha, cfg);
      return [=](double lambda_b, double w) {
        const double g = lambda_b / lambda_u * gamma_alpha;
        return revenue(lambda_u, b, w * g) - (c_b * lambda_b + c_w * w);
      };
    }
    case Objective::SparseApproxLinear: {
      const double gamma_alpha = se::se_exact_at_activity(1.0, alpha, cfg);
      const double k = 0.5 * b * lambda_u * lambda_u / gamma_alpha;
      return [=](double lambda_b, double w) {
        return half_rev_cap - k / (w * lambda_b) - (c_b * lambda_b + c_w * w);
      };
    }
    case Objective::DenseApprox: {
      return [=](double lambda_b, double w) {
        const double g = udn_gamma(lambda_b, lambda_u, alpha);
        return revenue(lambda_u, b, w * g) - (c_b * lambda_b + c_w * w);
      };
    }
    case Objective::DenseApproxLinear: {
      const double rho0 = se::rho_zero_analytic(alpha);
      return [=](double lambda_b, double w) {
        const double inv_g = std::exp(0.25 * alpha * std::log(rho0 * lambda_u / lambda_b));
        return half_rev_cap * (1.0 - inv_g / w) - (c_b * lambda_b + c_w * w);
      };
    }
  }
  throw DomainError("unknown objective");
}

DeploymentPlan closed_form_plan(Regime regime, double lambda_u, double alpha,
                                const DemandModel& demand, const CostParams& costs,
                                const quad::QuadratureConfig& cfg) {
  if (!(lambda_u > 0.0)) throw DomainError("lambda_u must be > 0");
  if (!(alpha > 2.0)) throw DomainError("alpha must be > 2");
  demand.validate();
  costs.validate();
  const double b = demand.b;

  DeploymentPlan plan;
  plan.solver = Solver::ClosedForm;
  plan.regime = regime;

  if (regime == Regime::Sparse) {
    const double gamma_alpha = se::se_exact_at_activity(1.0, alpha, cfg);
    const double lu_sq = lambda_u * lambda_u;
    plan.lambda_b_star = std::cbrt(0.5 * b * costs.c_w / gamma_alpha * lu_sq /
                                   (costs.c_b * costs.c_b));
    plan.w_star =
        std::cbrt(0.5 * b * costs.c_b / gamma_alpha * lu_sq / (costs.c_w * costs.c_w));
    plan.gamma = plan.lambda_b_star / lambda_u * gamma_alpha;
    if (plan.lambda_b_star > lambda_u)
      plan.warnings.push_back("sparse plan outside validity: lambda_b* > lambda_u");
  } else if (regime == Regime::UltraDense) {
    const double rho0 = se::rho_zero_analytic(alpha);
    const double ln2 = std::log(2.0);
    const double inv = 1.0 / (alpha + 8.0);
    const double common = alpha * std::log(rho0) + (alpha + 4.0) * std::log(lambda_u);
    plan.lambda_b_star =
        std::exp((8.0 * (std::log(alpha) - 2.5 * ln2 - std::log(costs.c_b)) +
                  4.0 * (std::log(b) + std::log(costs.c_w)) + common) *
                 inv);
    plan.w_star = std::exp((2.0 * (alpha - 2.0) * ln2 + alpha * std::log(costs.c_b) -
                            (alpha + 4.0) * std::log(costs.c_w) + 4.0 * std::log(b) +
                            common) *
                           inv);
    plan.gamma = udn_gamma(plan.lambda_b_star, lambda_u, alpha);
    if (plan.lambda_b_star < 5.0 * lambda_u)
      plan.warnings.push_back(
          "ultra-dense plan not regime-consistent: lambda_b*/lambda_u < 5");
  } else {
    throw DomainError("closed-form plans exist for Sparse and UltraDense regimes only");
  }

  const double wg = plan.w_star * plan.gamma;
  plan.p_star = optimal_price(b, wg).exact;
  plan.x_bar = avg_demand(b, plan.p_star);
  plan.profit = revenue(lambda_u, b, wg) -
                (costs.c_b * plan.lambda_b_star + costs.c_w * plan.w_star);
  return plan;
}

double cost_ratio(Regime regime, double alpha) {
  if (regime == Regime::Sparse) return 1.0;
  if (regime == Regime::UltraDense) {
    if (!(alpha > 2.0)) throw DomainError("alpha must be > 2");
    return 0.25 * std::pow(alpha, 8.0 / (alpha + 8.0));
  }
  throw DomainError("cost_ratio is defined for Sparse and UltraDense regimes");
}

}  // namespace udn::econ
