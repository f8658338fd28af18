#pragma once

#include <limits>

#include "udn/econ.hpp"

namespace udn::econ {

// Derivative-free 2-D profit maximization over (lambda_b, W): coarse log-space
// grid scan, then Nelder-Mead refinement from the best multistart points.
// Deterministic for a fixed config (fixed grid, index-ordered tie-breaking).
struct OptimizerConfig {
  // log10-space search box; NaN bounds are auto-centered on the closed-form
  // plans, span_decades each side.
  double log10_lambda_b_lo = std::numeric_limits<double>::quiet_NaN();
  double log10_lambda_b_hi = std::numeric_limits<double>::quiet_NaN();
  double log10_w_lo = std::numeric_limits<double>::quiet_NaN();
  double log10_w_hi = std::numeric_limits<double>::quiet_NaN();
  double span_decades = 3.0;
  int grid_points = 24;     // per dimension
  int multistarts = 5;      // best grid cells refined by Nelder-Mead
  double tolerance = 1e-10; // simplex diameter stop, in log10 units
  int max_iterations = 600;

  void validate() const {
    if (grid_points < 2) throw DomainError("grid_points must be >= 2");
    if (multistarts < 1) throw DomainError("multistarts must be >= 1");
    if (!(tolerance > 0.0)) throw DomainError("tolerance must be > 0");
    if (max_iterations < 1) throw DomainError("max_iterations must be >= 1");
    if (!(span_decades > 0.0)) throw DomainError("span_decades must be > 0");
  }
};

// Numerically maximizes the chosen objective and returns the resulting plan
// (solver = NumericOracle). Emits a warning when the solution sits on the
// search-box boundary; throws NumericalError when distinct multistart optima
// tie in profit but disagree in coordinates (non-concave region).
DeploymentPlan numeric_optimize_plan(Objective obj, double lambda_u, double alpha,
                                     const DemandModel& demand, const CostParams& costs,
                                     const OptimizerConfig& opt = {},
                                     const quad::QuadratureConfig& cfg = {});

}  // namespace udn::econ
