#include "udn/sim.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <ostream>
#include <thread>

#include "udn/errors.hpp"
#include "udn/se.hpp"

namespace udn::sim {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::uint32_t kStreamCounts = 0;
constexpr std::uint32_t kStreamBsPos = 1;
constexpr std::uint32_t kStreamUserPos = 2;
constexpr std::uint32_t kStreamFading = 3;
constexpr std::uint32_t kStreamScheduler = 4;
constexpr std::uint32_t kStreamThinning = 5;
constexpr std::uint32_t kMaxResampleAttempts = 100;

double sq(double v) { return v * v; }

// Uniform grid over the window square with ring-search nearest-BS queries.
// Rebuilt per realization; kept flat for cache friendliness.
class BsGrid {
 public:
  void build(const std::vector<Point>& bs, double radius, double lambda_b) {
    bs_ = &bs;
    radius_ = radius;
    const double target_cell = std::sqrt(1.5 / lambda_b);
    n_ = static_cast<int>(std::clamp(std::ceil(2.0 * radius / target_cell), 1.0, 4096.0));
    h_ = 2.0 * radius / n_;
    counts_.assign(static_cast<std::size_t>(n_) * n_ + 1, 0);
    for (const Point& p : bs) ++counts_[cell_of(p) + 1];
    for (std::size_t i = 1; i < counts_.size(); ++i) counts_[i] += counts_[i - 1];
    order_.resize(bs.size());
    fill_ = counts_;
    for (std::uint32_t i = 0; i < bs.size(); ++i) order_[fill_[cell_of(bs[i])]++] = i;
  }

  std::uint32_t nearest(double x, double y) const {
    const std::vector<Point>& bs = *bs_;
    const int cx = coord(x);
    const int cy = coord(y);
    std::uint32_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int ring = 0;; ++ring) {
      if (best_d2 < std::numeric_limits<double>::infinity()) {
        const double reach = (ring - 1) * h_;
        if (reach > 0.0 && sq(reach) > best_d2) break;
      }
      bool any_cell = false;
      const int lo_x = cx - ring, hi_x = cx + ring;
      const int lo_y = cy - ring, hi_y = cy + ring;
      for (int gy = lo_y; gy <= hi_y; ++gy) {
        for (int gx = lo_x; gx <= hi_x; ++gx) {
          if (ring > 0 && gx != lo_x && gx != hi_x && gy != lo_y && gy != hi_y)
            continue;  // interior of the ring was visited earlier
          if (gx < 0 || gx >= n_ || gy < 0 || gy >= n_) continue;
          any_cell = true;
          const std::size_t c = static_cast<std::size_t>(gy) * n_ + gx;
          for (std::size_t k = counts_[c]; k < counts_[c + 1]; ++k) {
            const std::uint32_t i = order_[k];
            const double d2 = sq(bs[i].x - x) + sq(bs[i].y - y);
            if (d2 < best_d2 || (d2 == best_d2 && i < best)) {
              best_d2 = d2;
              best = i;
            }
          }
        }
      }
      if (!any_cell && ring > 2 * n_) break;  // nothing reachable (cannot happen with >=1 BS)
    }
    return best;
  }

 private:
  int coord(double v) const {
    return std::clamp(static_cast<int>((v + radius_) / h_), 0, n_ - 1);
  }
  std::size_t cell_of(const Point& p) const {
    return static_cast<std::size_t>(coord(p.y)) * n_ + coord(p.x);
  }

  const std::vector<Point>* bs_ = nullptr;
  double radius_ = 0.0;
  double h_ = 1.0;
  int n_ = 1;
  std::vector<std::size_t> counts_;
  std::vector<std::size_t> fill_;
  std::vector<std::uint32_t> order_;
};

struct TrialOutput {
  double se_term = 0.0;        // log(1+SIR), scheduler-weighted when enabled
  double active_fraction = std::numeric_limits<double>::quiet_NaN();
  double inv_n = std::numeric_limits<double>::quiet_NaN();
  double serving_distance = 0.0;
  std::uint8_t capped = 0;
  std::uint8_t attempts = 0;
};

struct Scratch {
  std::vector<Point> bs;
  std::vector<Point> users;
  std::vector<std::uint32_t> serving;
  std::vector<std::uint8_t> has_user;
  BsGrid grid;
};

void sample_disc(std::vector<Point>& out, std::uint64_t count, double radius,
                 rng::PhiloxStream& stream) {
  out.resize(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double r = radius * std::sqrt(stream.next_unit());
    const double theta = 2.0 * kPi * stream.next_unit();
    out[i] = {r * std::cos(theta), r * std::sin(theta)};
  }
}

// Draws topology into scratch; returns the resample attempt that succeeded.
std::uint32_t draw_topology(const NetworkParams& params, const SimConfig& cfg,
                            std::uint64_t trial, double radius, Scratch& s,
                            std::uint32_t& serving_index) {
  const double area = kPi * sq(radius);
  for (std::uint32_t attempt = 0; attempt < kMaxResampleAttempts; ++attempt) {
    rng::PhiloxStream counts(cfg.seed, trial, kStreamCounts, attempt);
    const std::uint64_t nb = counts.next_poisson(params.lambda_b * area);
    if (nb == 0) continue;
    const std::uint64_t nu = counts.next_poisson(params.lambda_u * area);

    rng::PhiloxStream bs_pos(cfg.seed, trial, kStreamBsPos, attempt);
    sample_disc(s.bs, nb, radius, bs_pos);
    rng::PhiloxStream user_pos(cfg.seed, trial, kStreamUserPos, attempt);
    sample_disc(s.users, nu, radius, user_pos);

    s.grid.build(s.bs, radius, params.lambda_b);
    s.serving.resize(nu);
    s.has_user.assign(nb, 0);
    for (std::uint64_t i = 0; i < nu; ++i) {
      const std::uint32_t b = s.grid.nearest(s.users[i].x, s.users[i].y);
      s.serving[i] = b;
      s.has_user[b] = 1;
    }
    serving_index = s.grid.nearest(0.0, 0.0);
    return attempt;
  }
  throw NumericalError("could not draw a non-empty BS window", 0.0);
}

TrialOutput run_trial(const NetworkParams& params, const SimConfig& cfg, double radius,
                      double p_act, bool with_scheduler, std::uint64_t trial, Scratch& s) {
  TrialOutput out;
  std::uint32_t serving = 0;
  const std::uint32_t attempt = draw_topology(params, cfg, trial, radius, s, serving);
  out.attempts = static_cast<std::uint8_t>(attempt);

  rng::PhiloxStream fading(cfg.seed, trial, kStreamFading, attempt);
  const double r0 = std::sqrt(sq(s.bs[serving].x) + sq(s.bs[serving].y));
  out.serving_distance = r0;
  const double signal = fading.next_exponential() * std::pow(r0, -params.alpha);

  rng::PhiloxStream thinning(cfg.seed, trial, kStreamThinning, attempt);
  const bool thin = cfg.interference == InterferenceModel::IndependentThinning;
  double interference = 0.0;
  for (std::uint32_t i = 0; i < s.bs.size(); ++i) {
    if (i == serving) continue;
    const bool on = thin ? (thinning.next_unit() < p_act) : (s.has_user[i] != 0);
    if (!on) continue;
    const double d2 = sq(s.bs[i].x) + sq(s.bs[i].y);
    interference += fading.next_exponential() * std::pow(d2, -0.5 * params.alpha);
  }

  double sir = cfg.sir_cap;
  if (interference > 0.0) sir = std::min(signal / interference, cfg.sir_cap);
  out.capped = (sir == cfg.sir_cap) ? 1 : 0;
  double value = std::log1p(sir);

  if (with_scheduler) {
    std::uint64_t n = 1;  // the typical user itself
    for (const std::uint32_t b : s.serving)
      if (b == serving) ++n;
    out.inv_n = 1.0 / static_cast<double>(n);
    rng::PhiloxStream sched(cfg.seed, trial, kStreamScheduler, attempt);
    if (!(sched.next_unit() < out.inv_n)) value = 0.0;
  }
  out.se_term = value;

  // Interior activity census (PPP users only, serving BS excluded): cells near
  // the window edge are clipped, so they are left out of the fraction.
  const double interior = radius - 2.0 / std::sqrt(params.lambda_b);
  if (interior > 0.0) {
    std::uint64_t total = 0, active = 0;
    const double interior2 = sq(interior);
    for (std::uint32_t i = 0; i < s.bs.size(); ++i) {
      if (i == serving) continue;
      if (sq(s.bs[i].x) + sq(s.bs[i].y) > interior2) continue;
      ++total;
      active += s.has_user[i];
    }
    if (total > 0)
      out.active_fraction = static_cast<double>(active) / static_cast<double>(total);
  }
  return out;
}

struct MeanErr {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double stderr_ = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t n = 0;
};

template <class Get>
MeanErr reduce(const std::vector<TrialOutput>& trials, Get get) {
  MeanErr r;
  double sum = 0.0;
  for (const TrialOutput& t : trials) {
    const double v = get(t);
    if (std::isnan(v)) continue;
    sum += v;
    ++r.n;
  }
  if (r.n == 0) return r;
  r.mean = sum / static_cast<double>(r.n);
  if (r.n < 2) return r;
  double ss = 0.0;
  for (const TrialOutput& t : trials) {
    const double v = get(t);
    if (std::isnan(v)) continue;
    ss += sq(v - r.mean);
  }
  r.stderr_ = std::sqrt(ss / (static_cast<double>(r.n - 1) * static_cast<double>(r.n)));
  return r;
}

SEEstimate estimate_impl(const NetworkParams& params, const SimConfig& cfg,
                         bool with_scheduler) {
  params.validate();
  cfg.validate(params);
  const double radius = cfg.effective_radius(params.lambda_b);
  const double p_act = se::p_active(params.lambda_u, params.lambda_b);

  std::vector<TrialOutput> trials(cfg.trials);
  unsigned n_threads = cfg.threads == 0
                           ? std::max(1u, std::thread::hardware_concurrency())
                           : static_cast<unsigned>(cfg.threads);
  n_threads = static_cast<unsigned>(
      std::min<std::uint64_t>(n_threads, cfg.trials));

  auto worker = [&](std::uint64_t lo, std::uint64_t hi, std::exception_ptr& err) {
    try {
      Scratch s;
      for (std::uint64_t t = lo; t < hi; ++t)
        trials[t] = run_trial(params, cfg, radius, p_act, with_scheduler, t, s);
    } catch (...) {
      err = std::current_exception();
    }
  };

  std::vector<std::exception_ptr> errors(n_threads);
  if (n_threads <= 1) {
    worker(0, cfg.trials, errors[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned k = 0; k < n_threads; ++k) {
      const std::uint64_t lo = cfg.trials * k / n_threads;
      const std::uint64_t hi = cfg.trials * (k + 1) / n_threads;
      pool.emplace_back(worker, lo, hi, std::ref(errors[k]));
    }
    for (std::thread& th : pool) th.join();
  }
  for (const std::exception_ptr& err : errors)
    if (err) std::rethrow_exception(err);

  SEEstimate est;
  est.window_radius = radius;
  est.trials_used = cfg.trials;
  const MeanErr se_v = reduce(trials, [](const TrialOutput& t) { return t.se_term; });
  est.mean = se_v.mean;
  est.std_error = se_v.stderr_;
  const MeanErr af = reduce(trials, [](const TrialOutput& t) { return t.active_fraction; });
  est.active_fraction = af.mean;
  est.active_fraction_stderr = af.stderr_;
  est.mean_serving_distance =
      reduce(trials, [](const TrialOutput& t) { return t.serving_distance; }).mean;
  if (with_scheduler)
    est.empirical_selection_prob =
        reduce(trials, [](const TrialOutput& t) { return t.inv_n; }).mean;
  for (const TrialOutput& t : trials) {
    est.capped_trials += t.capped;
    est.resamples += t.attempts;
  }
  return est;
}

}  // namespace

double SimConfig::effective_radius(double lambda_b) const {
  if (window_radius > 0.0) return window_radius;
  return std::sqrt(min_expected_bs / (kPi * lambda_b));
}

void SimConfig::validate(const NetworkParams& params) const {
  params.validate();
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (threads < 0) throw DomainError("threads must be >= 0");
  if (!(sir_cap > 0.0)) throw DomainError("sir_cap must be > 0");
  if (!(min_expected_bs > 0.0)) throw DomainError("min_expected_bs must be > 0");
  const double r = effective_radius(params.lambda_b);
  if (kPi * r * r * params.lambda_b < min_expected_bs - 1e-9)
    throw DomainError("window_radius too small: expected BS count below min_expected_bs");
}

std::vector<Point> sample_ppp(double density, double radius, rng::PhiloxStream& stream) {
  if (!(density > 0.0) || !(radius > 0.0))
    throw DomainError("sample_ppp requires positive density and radius");
  std::vector<Point> pts;
  sample_disc(pts, stream.next_poisson(density * kPi * sq(radius)), radius, stream);
  return pts;
}

TopologyRealization realize_topology(const NetworkParams& params, const SimConfig& cfg,
                                     std::uint64_t trial) {
  params.validate();
  cfg.validate(params);
  const double radius = cfg.effective_radius(params.lambda_b);
  Scratch s;
  std::uint32_t serving = 0;
  const std::uint32_t attempt = draw_topology(params, cfg, trial, radius, s, serving);

  TopologyRealization topo;
  topo.bs_points = std::move(s.bs);
  topo.user_points = std::move(s.users);
  topo.serving_bs = std::move(s.serving);
  topo.active_mask.assign(topo.bs_points.size(), 0);
  for (std::size_t i = 0; i < topo.bs_points.size(); ++i)
    topo.active_mask[i] = s.has_user[i];
  topo.active_mask[serving] = 1;
  topo.serving_bs_index = serving;
  topo.window_radius = radius;
  topo.resample_attempts = attempt;
  return topo;
}

SEEstimate estimate_se(const NetworkParams& params, const SimConfig& cfg) {
  return estimate_impl(params, cfg, false);
}

SEEstimate estimate_se_with_scheduler(const NetworkParams& params, const SimConfig& cfg) {
  return estimate_impl(params, cfg, true);
}

void dump_realization(const TopologyRealization& topo, std::ostream& out) {
  out << "kind,index,x,y,active,assoc\n";
  for (std::size_t i = 0; i < topo.bs_points.size(); ++i)
    out << "bs," << i << ',' << topo.bs_points[i].x << ',' << topo.bs_points[i].y << ','
        << static_cast<int>(topo.active_mask[i]) << ",-1\n";
  for (std::size_t i = 0; i < topo.user_points.size(); ++i)
    out << "user," << i << ',' << topo.user_points[i].x << ',' << topo.user_points[i].y
        << ",0," << topo.serving_bs[i] << '\n';
  out << "typical,-1,0,0,0," << topo.serving_bs_index << '\n';
}

}  // namespace udn::sim
