#include "udn/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "udn/errors.hpp"
#include "udn/se.hpp"

namespace udn::econ {

namespace {

using Vec2 = std::array<double, 2>;

struct Candidate {
  Vec2 x{};      // log10(lambda_b), log10(w)
  double f = -std::numeric_limits<double>::infinity();
  double cost = std::numeric_limits<double>::infinity();
  int index = 0;
};

// higher profit first; ties by lower operating cost, then insertion order
bool better(const Candidate& a, const Candidate& b) {
  if (a.f != b.f) return a.f > b.f;
  if (a.cost != b.cost) return a.cost < b.cost;
  return a.index < b.index;
}

template <class G>
Vec2 nelder_mead(G&& g, Vec2 x0, double step, double tol, int max_iter) {
  struct Vertex {
    Vec2 x;
    double v;
  };
  auto less = [](const Vertex& a, const Vertex& b) {
    if (a.v != b.v) return a.v < b.v;
    if (a.x[0] != b.x[0]) return a.x[0] < b.x[0];
    return a.x[1] < b.x[1];
  };
  std::array<Vertex, 3> s{{{x0, g(x0)},
                           {{x0[0] + step, x0[1]}, g({x0[0] + step, x0[1]})},
                           {{x0[0], x0[1] + step}, g({x0[0], x0[1] + step})}}};
  for (int it = 0; it < max_iter; ++it) {
    std::sort(s.begin(), s.end(), less);
    const double size = std::max(
        std::max(std::abs(s[1].x[0] - s[0].x[0]), std::abs(s[1].x[1] - s[0].x[1])),
        std::max(std::abs(s[2].x[0] - s[0].x[0]), std::abs(s[2].x[1] - s[0].x[1])));
    if (size < tol) break;

    const Vec2 m{0.5 * (s[0].x[0] + s[1].x[0]), 0.5 * (s[0].x[1] + s[1].x[1])};
    const Vec2 xr{2.0 * m[0] - s[2].x[0], 2.0 * m[1] - s[2].x[1]};
    const double vr = g(xr);
    if (vr < s[0].v) {
      const Vec2 xe{3.0 * m[0] - 2.0 * s[2].x[0], 3.0 * m[1] - 2.0 * s[2].x[1]};
      const double ve = g(xe);
      s[2] = ve < vr ? Vertex{xe, ve} : Vertex{xr, vr};
    } else if (vr < s[1].v) {
      s[2] = {xr, vr};
    } else if (vr < s[2].v) {
      const Vec2 xc{0.5 * (m[0] + xr[0]), 0.5 * (m[1] + xr[1])};
      const double vc = g(xc);
      if (vc <= vr) {
        s[2] = {xc, vc};
      } else {
        for (int i = 1; i < 3; ++i) {
          s[i].x = {0.5 * (s[i].x[0] + s[0].x[0]), 0.5 * (s[i].x[1] + s[0].x[1])};
          s[i].v = g(s[i].x);
        }
      }
    } else {
      const Vec2 xc{0.5 * (m[0] + s[2].x[0]), 0.5 * (m[1] + s[2].x[1])};
      const double vc = g(xc);
      if (vc < s[2].v) {
        s[2] = {xc, vc};
      } else {
        for (int i = 1; i < 3; ++i) {
          s[i].x = {0.5 * (s[i].x[0] + s[0].x[0]), 0.5 * (s[i].x[1] + s[0].x[1])};
          s[i].v = g(s[i].x);
        }
      }
    }
  }
  std::sort(s.begin(), s.end(), less);
  return s[0].x;
}

}  // namespace

DeploymentPlan numeric_optimize_plan(Objective obj, double lambda_u, double alpha,
                                     const DemandModel& demand, const CostParams& costs,
                                     const OptimizerConfig& opt,
                                     const quad::QuadratureConfig& cfg) {
  opt.validate();
  auto objective = make_objective(obj, lambda_u, alpha, demand, costs, cfg);

  // Auto search box spanning both closed-form plan centers.
  const DeploymentPlan sparse_c = closed_form_plan(Regime::Sparse, lambda_u, alpha, demand,
                                                   costs, cfg);
  const DeploymentPlan dense_c = closed_form_plan(Regime::UltraDense, lambda_u, alpha,
                                                  demand, costs, cfg);
  auto pick = [&](double configured, double fallback) {
    return std::isnan(configured) ? fallback : configured;
  };
  const double cl = std::log10(std::min(sparse_c.lambda_b_star, dense_c.lambda_b_star));
  const double ch = std::log10(std::max(sparse_c.lambda_b_star, dense_c.lambda_b_star));
  const double wl = std::log10(std::min(sparse_c.w_star, dense_c.w_star));
  const double wh = std::log10(std::max(sparse_c.w_star, dense_c.w_star));
  const double lb_lo = pick(opt.log10_lambda_b_lo, cl - opt.span_decades);
  const double lb_hi = pick(opt.log10_lambda_b_hi, ch + opt.span_decades);
  const double w_lo = pick(opt.log10_w_lo, wl - opt.span_decades);
  const double w_hi = pick(opt.log10_w_hi, wh + opt.span_decades);
  if (!(lb_lo < lb_hi) || !(w_lo < w_hi)) throw DomainError("empty optimizer search box");

  auto eval_cost = [&](const Vec2& x) {
    return costs.c_b * std::pow(10.0, x[0]) + costs.c_w * std::pow(10.0, x[1]);
  };
  auto clamp_box = [&](Vec2 x) {
    x[0] = std::clamp(x[0], lb_lo, lb_hi);
    x[1] = std::clamp(x[1], w_lo, w_hi);
    return x;
  };
  auto g = [&](Vec2 x) {
    x = clamp_box(x);
    return -objective(std::pow(10.0, x[0]), std::pow(10.0, x[1]));
  };

  std::vector<Candidate> grid;
  grid.reserve(static_cast<std::size_t>(opt.grid_points) * opt.grid_points);
  int index = 0;
  for (int i = 0; i < opt.grid_points; ++i) {
    for (int j = 0; j < opt.grid_points; ++j) {
      Candidate c;
      c.x = {lb_lo + (lb_hi - lb_lo) * i / (opt.grid_points - 1.0),
             w_lo + (w_hi - w_lo) * j / (opt.grid_points - 1.0)};
      c.f = -g(c.x);
      c.cost = eval_cost(c.x);
      c.index = index++;
      grid.push_back(c);
    }
  }
  std::sort(grid.begin(), grid.end(), better);

  const int starts = std::min<int>(opt.multistarts, static_cast<int>(grid.size()));
  std::vector<Candidate> refined;
  for (int k = 0; k < starts; ++k) {
    Candidate c;
    c.x = clamp_box(nelder_mead(g, grid[k].x, 0.05, opt.tolerance, opt.max_iterations));
    c.f = -g(c.x);
    c.cost = eval_cost(c.x);
    c.index = k;
    refined.push_back(c);
  }
  std::sort(refined.begin(), refined.end(), better);
  const Candidate& best = refined.front();

  // Equal-profit optima in different places indicate a non-concave region.
  const double log_5pct = std::log10(1.05);
  for (std::size_t k = 1; k < refined.size(); ++k) {
    const Candidate& r = refined[k];
    const bool same_profit = std::abs(r.f - best.f) <= 1e-6 * (1.0 + std::abs(best.f));
    const bool apart = std::abs(r.x[0] - best.x[0]) > log_5pct ||
                       std::abs(r.x[1] - best.x[1]) > log_5pct;
    if (same_profit && apart)
      throw NumericalError("multistart disagreement: competing optima with equal profit",
                           best.f);
  }

  DeploymentPlan plan;
  plan.solver = Solver::NumericOracle;
  plan.lambda_b_star = std::pow(10.0, best.x[0]);
  plan.w_star = std::pow(10.0, best.x[1]);
  plan.profit = best.f;

  const double edge = 0.02;
  if (best.x[0] - lb_lo < edge || lb_hi - best.x[0] < edge || best.x[1] - w_lo < edge ||
      w_hi - best.x[1] < edge)
    plan.warnings.push_back("optimizer solution at search-box boundary; widen bounds");

  switch (obj) {
    case Objective::ExactSE:
      plan.regime = Regime::General;
      plan.gamma = se::se_exact({plan.lambda_b_star, lambda_u, alpha}, cfg).value;
      break;
    case Objective::SparseApprox:
    case Objective::SparseApproxLinear:
      plan.regime = Regime::Sparse;
      plan.gamma = plan.lambda_b_star / lambda_u * se::se_exact_at_activity(1.0, alpha, cfg);
      if (plan.lambda_b_star > lambda_u)
        plan.warnings.push_back("sparse plan outside validity: lambda_b* > lambda_u");
      break;
    case Objective::DenseApprox:
    case Objective::DenseApproxLinear:
      plan.regime = Regime::UltraDense;
      plan.gamma =
          se::se_udn_closed_form({plan.lambda_b_star, lambda_u, alpha}).value;
      if (plan.lambda_b_star < 5.0 * lambda_u)
        plan.warnings.push_back(
            "ultra-dense plan not regime-consistent: lambda_b*/lambda_u < 5");
      break;
  }
  const double wg = plan.w_star * plan.gamma;
  plan.p_star = optimal_price(demand.b, wg).exact;
  plan.x_bar = avg_demand(demand.b, plan.p_star);
  return plan;
}

}  // namespace udn::econ
