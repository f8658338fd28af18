#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "udn/params.hpp"
#include "udn/philox.hpp"

namespace udn::sim {

// How interferers are switched on for the SIR sum.
//  VoronoiShutoff: exact per-realization rule, a BS transmits iff its cell
//    holds at least one user (the model's ground truth).
//  IndependentThinning: each non-serving BS transmits with probability
//    p_active i.i.d.; matches the analytic independence approximation and is
//    kept to let the gap between the two be measured.
enum class InterferenceModel { VoronoiShutoff, IndependentThinning };

struct SimConfig {
  std::uint64_t trials = 20000;
  std::uint64_t seed = 0;
  int threads = 1;              // 0 = all hardware threads
  double window_radius = 0.0;   // 0 = sized so the window holds min_expected_bs on average
  double min_expected_bs = 500.0;
  double sir_cap = 1e12;        // also used when no interferer is active
  InterferenceModel interference = InterferenceModel::VoronoiShutoff;

  // Radius actually used for a given BS density.
  double effective_radius(double lambda_b) const;
  // Validates the config against the window-adequacy invariant.
  void validate(const NetworkParams& params) const;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct TopologyRealization {
  std::vector<Point> bs_points;
  std::vector<Point> user_points;         // PPP users; the typical user sits at the origin
  std::vector<std::uint32_t> serving_bs;  // per PPP user, nearest BS index
  std::vector<std::uint8_t> active_mask;  // nearest to >= 1 user, or the typical user's BS
  std::uint32_t serving_bs_index = 0;     // nearest BS to the origin
  double window_radius = 0.0;
  std::uint32_t resample_attempts = 0;    // redraws due to an empty BS window
};

struct SEEstimate {
  double mean = 0.0;
  double std_error = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t trials_used = 0;
  std::uint64_t capped_trials = 0;  // SIR clipped at sir_cap (incl. zero-interference trials)
  std::uint64_t resamples = 0;
  // Fraction of interior non-serving BSs with a non-empty cell (PPP users only);
  // interior excludes a margin near the window edge where cells are clipped.
  double active_fraction = std::numeric_limits<double>::quiet_NaN();
  double active_fraction_stderr = std::numeric_limits<double>::quiet_NaN();
  double mean_serving_distance = std::numeric_limits<double>::quiet_NaN();
  double empirical_selection_prob = std::numeric_limits<double>::quiet_NaN();  // scheduler runs
  double window_radius = 0.0;
};

// Homogeneous PPP on a disc of the given radius: Poisson count, uniform points.
std::vector<Point> sample_ppp(double density, double radius, rng::PhiloxStream& stream);

// One network realization for the given trial index (deterministic in
// (params, cfg, trial)).
TopologyRealization realize_topology(const NetworkParams& params, const SimConfig& cfg,
                                     std::uint64_t trial);

// Monte Carlo mean of log(1 + SIR) at the typical user. Bit-identical output
// for any thread count: every trial draws from its own counter-based
// substream and the reduction runs in trial order.
SEEstimate estimate_se(const NetworkParams& params, const SimConfig& cfg);

// As estimate_se, but the typical user is served only when the uniformly
// random scheduler picks it among the N users of its cell; accumulates
// selected * log(1+SIR) and reports the empirical selection probability.
SEEstimate estimate_se_with_scheduler(const NetworkParams& params, const SimConfig& cfg);

// Plain-text CSV dump of one realization for external visualization.
void dump_realization(const TopologyRealization& topo, std::ostream& out);

}  // namespace udn::sim
