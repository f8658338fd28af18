#include "udn_cli/runner.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "udn/econ.hpp"
#include "udn/errors.hpp"
#include "udn/optimize.hpp"
#include "udn/se.hpp"
#include "udn/sim.hpp"

namespace udn::runner {

namespace {

constexpr const char* kOutDirEnv = "UDN_OUT_DIR";

std::string fmt(double v) {
  if (!std::isfinite(v)) return "na";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct ConfigFile {
  std::string path;
  std::map<std::string, std::string> values;
  std::map<std::string, int> lines;

  std::string where(const std::string& key) const {
    auto it = lines.find(key);
    if (it == lines.end()) return path;
    return path + ":" + std::to_string(it->second);
  }
};

ConfigFile load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file: " + path);
  ConfigFile cfg;
  cfg.path = path;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw DomainError(path + ":" + std::to_string(lineno) + ": empty key");
    cfg.values[key] = trim(line.substr(eq + 1));
    cfg.lines[key] = lineno;
  }
  return cfg;
}

double parse_f64(const ConfigFile& cfg, const std::string& key, const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !std::isfinite(v))
    throw DomainError(cfg.where(key) + ": '" + key + "' is not a number: " + text);
  return v;
}

std::uint64_t parse_u64(const ConfigFile& cfg, const std::string& key, const std::string& text) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0')
    throw DomainError(cfg.where(key) + ": '" + key + "' is not a non-negative integer: " + text);
  return v;
}

int parse_int(const ConfigFile& cfg, const std::string& key, const std::string& text) {
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0')
    throw DomainError(cfg.where(key) + ": '" + key + "' is not an integer: " + text);
  return static_cast<int>(v);
}

bool parse_bool(const ConfigFile& cfg, const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw DomainError(cfg.where(key) + ": '" + key + "' is not a boolean: " + text);
}

std::vector<double> parse_f64_list(const ConfigFile& cfg, const std::string& key,
                                   const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_f64(cfg, key, item));
  }
  return out;
}

// Resolution order: command line, then config file, then built-in default.
class Resolver {
 public:
  Resolver(const CommonOptions& common) {
    if (common.config_path) cfg_ = load_config_file(*common.config_path);
  }

  const ConfigFile& cfg() const { return cfg_; }
  bool has(const std::string& key) const { return cfg_.values.count(key) > 0; }

  double f64(const std::optional<double>& cli, const std::string& key, double def) const {
    if (cli) return *cli;
    auto it = cfg_.values.find(key);
    return it == cfg_.values.end() ? def : parse_f64(cfg_, key, it->second);
  }
  std::uint64_t u64(const std::optional<std::uint64_t>& cli, const std::string& key,
                    std::uint64_t def) const {
    if (cli) return *cli;
    auto it = cfg_.values.find(key);
    return it == cfg_.values.end() ? def : parse_u64(cfg_, key, it->second);
  }
  int integer(const std::optional<int>& cli, const std::string& key, int def) const {
    if (cli) return *cli;
    auto it = cfg_.values.find(key);
    return it == cfg_.values.end() ? def : parse_int(cfg_, key, it->second);
  }
  bool boolean(const std::optional<bool>& cli, const std::string& key, bool def) const {
    if (cli) return *cli;
    auto it = cfg_.values.find(key);
    return it == cfg_.values.end() ? def : parse_bool(cfg_, key, it->second);
  }
  std::string text(const std::optional<std::string>& cli, const std::string& key,
                   const std::string& def) const {
    if (cli) return *cli;
    auto it = cfg_.values.find(key);
    return it == cfg_.values.end() ? def : it->second;
  }
  std::vector<double> f64_list(const std::vector<double>& cli, const std::string& key,
                               const std::vector<double>& def) const {
    if (!cli.empty()) return cli;
    auto it = cfg_.values.find(key);
    return it == cfg_.values.end() ? def : parse_f64_list(cfg_, key, it->second);
  }

  void check_known_keys(const std::set<std::string>& allowed) const {
    for (const auto& [key, value] : cfg_.values) {
      (void)value;
      if (!allowed.count(key))
        throw DomainError(cfg_.where(key) + ": unknown config key '" + key + "'");
    }
  }

 private:
  ConfigFile cfg_;
};

const std::set<std::string> kCommonKeys = {
    "out", "seed", "trials", "threads", "lambda_b", "lambda_u", "alpha", "b", "c_b", "c_w"};

std::set<std::string> with_common(std::initializer_list<const char*> extra) {
  std::set<std::string> keys = kCommonKeys;
  for (const char* k : extra) keys.insert(k);
  return keys;
}

std::vector<double> make_range(double start, double stop, int points, bool log_spaced) {
  if (points < 1) throw UsageError("sweep needs at least one point");
  if (points == 1) return {start};
  if (log_spaced && (!(start > 0.0) || !(stop > 0.0)))
    throw DomainError("log-spaced sweep endpoints must be > 0");
  if (!(stop > start)) throw DomainError("sweep stop must exceed start");
  std::vector<double> out;
  out.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    out.push_back(log_spaced ? start * std::pow(stop / start, f)
                             : start + (stop - start) * f);
  }
  return out;
}

int resolved_threads(int threads) {
  if (threads < 0) throw DomainError("threads must be >= 0");
  if (threads == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
  return threads;
}

// "" = stdout
std::string resolve_out_file(const Resolver& r, const std::optional<std::string>& cli_out,
                             const char* default_name) {
  const std::string out = r.text(cli_out, "out", "");
  if (!out.empty()) return out;
  if (const char* dir = std::getenv(kOutDirEnv))
    return (std::filesystem::path(dir) / default_name).string();
  return "";
}

std::string resolve_out_dir(const Resolver& r, const std::optional<std::string>& cli_out) {
  const std::string out = r.text(cli_out, "out", "");
  if (!out.empty()) return out;
  if (const char* dir = std::getenv(kOutDirEnv)) return dir;
  return ".";
}

void write_text(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open output file: " + path);
  out << content;
  if (!out) throw DomainError("failed writing output file: " + path);
  std::cerr << "wrote " << path << "\n";
}

std::string join_warnings(const econ::DeploymentPlan& closed,
                          const econ::DeploymentPlan& numeric, bool has_closed) {
  std::string s;
  auto append = [&s](const std::string& prefix, const std::vector<std::string>& list) {
    for (const auto& w : list) {
      if (!s.empty()) s += " | ";
      s += prefix + w;
    }
  };
  if (has_closed) append("closed: ", closed.warnings);
  append("numeric: ", numeric.warnings);
  return s;
}

// ---- se-sweep ----------------------------------------------------------

constexpr const char* kSweepHeader =
    "lambda_b,lambda_u,alpha,se_exact,se_udn_closed_form,se_lower_bound,"
    "ratio_approx_over_exact\n";

std::string se_sweep_row(double lambda_b, double lambda_u, double alpha) {
  const NetworkParams params{lambda_b, lambda_u, alpha};
  try {
    const double exact = se::se_exact(params).value;
    const double udn = se::se_udn_closed_form(params).value;
    const double bound = se::se_lower_bound(params).value;
    std::string row;
    row += fmt(lambda_b);
    row += ',';
    row += fmt(lambda_u);
    row += ',';
    row += fmt(alpha);
    row += ',';
    row += fmt(exact);
    row += ',';
    row += fmt(udn);
    row += ',';
    row += fmt(bound);
    row += ',';
    row += fmt(udn / exact);
    row += '\n';
    return row;
  } catch (const NumericalError& err) {
    throw NumericalError("se-sweep row (lambda_b=" + fmt(lambda_b) + ", lambda_u=" +
                             fmt(lambda_u) + ", alpha=" + fmt(alpha) + "): " + err.what(),
                         err.partial());
  }
}

std::string se_sweep_csv(const std::vector<double>& alphas, const std::vector<double>& lambda_bs,
                         double lambda_u, int threads) {
  struct Task {
    double lambda_b, alpha;
  };
  std::vector<Task> tasks;
  for (double a : alphas)
    for (double lb : lambda_bs) tasks.push_back({lb, a});

  std::vector<std::string> rows(tasks.size());
  std::vector<std::exception_ptr> errors(std::max<std::size_t>(1, threads));
  const int nthreads = std::min<int>(threads, static_cast<int>(tasks.size()));
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i)
      rows[i] = se_sweep_row(tasks[i].lambda_b, lambda_u, tasks[i].alpha);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < tasks.size(); i += nthreads)
            rows[i] = se_sweep_row(tasks[i].lambda_b, lambda_u, tasks[i].alpha);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  std::string csv = kSweepHeader;
  for (const auto& row : rows) csv += row;
  return csv;
}

// ---- optimize ----------------------------------------------------------

constexpr const char* kOptimizeHeader =
    "lambda_u,b,alpha,c_b,c_w,regime,"
    "closed_lambda_b_star,closed_w_star,closed_p_star,closed_profit,"
    "numeric_lambda_b_star,numeric_w_star,numeric_p_star,numeric_profit,"
    "warnings,rel_gap\n";

econ::Objective numeric_objective_for(Regime regime) {
  switch (regime) {
    case Regime::Sparse: return econ::Objective::SparseApprox;
    case Regime::UltraDense: return econ::Objective::DenseApprox;
    case Regime::General: return econ::Objective::ExactSE;
    case Regime::None: break;
  }
  throw DomainError("no optimization objective for regime 'none'");
}

Regime parse_regime(const std::string& name) {
  if (name == "sparse") return Regime::Sparse;
  if (name == "ultradense") return Regime::UltraDense;
  if (name == "general") return Regime::General;
  throw UsageError("unknown regime '" + name + "' (expected sparse, ultradense, general)");
}

std::vector<Regime> parse_regimes(const std::string& list) {
  std::vector<Regime> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_regime(item));
  }
  if (out.empty()) throw UsageError("empty regime list");
  return out;
}

std::string optimize_row(Regime regime, double lambda_u, double b, double alpha, double c_b,
                         double c_w) {
  const DemandModel demand{b};
  const CostParams costs{c_b, c_w};

  const bool has_closed = regime != Regime::General;
  econ::DeploymentPlan closed;
  if (has_closed) closed = econ::closed_form_plan(regime, lambda_u, alpha, demand, costs);

  econ::OptimizerConfig opt_cfg;
  if (regime == Regime::General) {
    // quadrature objective: keep the grid small, the refinement does the rest
    opt_cfg.grid_points = 12;
    opt_cfg.multistarts = 2;
    opt_cfg.max_iterations = 300;
  }
  econ::DeploymentPlan numeric;
  try {
    numeric = econ::numeric_optimize_plan(numeric_objective_for(regime), lambda_u, alpha,
                                          demand, costs, opt_cfg);
  } catch (const NumericalError& err) {
    throw NumericalError("optimize row (regime=" + std::string(to_string(regime)) +
                             ", lambda_u=" + fmt(lambda_u) + ", b=" + fmt(b) + "): " +
                             err.what(),
                         err.partial());
  }

  std::string row;
  row += fmt(lambda_u);
  row += ',';
  row += fmt(b);
  row += ',';
  row += fmt(alpha);
  row += ',';
  row += fmt(c_b);
  row += ',';
  row += fmt(c_w);
  row += ',';
  row += to_string(regime);
  row += ',';
  if (has_closed) {
    row += fmt(closed.lambda_b_star);
    row += ',';
    row += fmt(closed.w_star);
    row += ',';
    row += fmt(closed.p_star);
    row += ',';
    row += fmt(closed.profit);
    row += ',';
  } else {
    row += "na,na,na,na,";
  }
  row += fmt(numeric.lambda_b_star);
  row += ',';
  row += fmt(numeric.w_star);
  row += ',';
  row += fmt(numeric.p_star);
  row += ',';
  row += fmt(numeric.profit);
  row += ',';
  row += join_warnings(closed, numeric, has_closed);
  row += ',';
  if (has_closed) {
    const double denom =
        std::max({std::abs(numeric.profit), std::abs(closed.profit), 1e-12});
    row += fmt(std::abs(numeric.profit - closed.profit) / denom);
  } else {
    row += "na";
  }
  row += '\n';
  return row;
}

std::string optimize_csv(const std::vector<Regime>& regimes, char sweep_var,
                         const std::vector<double>& sweep_values, double lambda_u, double b,
                         double alpha, double c_b, double c_w) {
  std::string csv = kOptimizeHeader;
  for (double v : sweep_values) {
    const double lu = sweep_var == 'u' ? v : lambda_u;
    const double bb = sweep_var == 'b' ? v : b;
    for (Regime regime : regimes) csv += optimize_row(regime, lu, bb, alpha, c_b, c_w);
  }
  return csv;
}

std::string optimize_summary(const std::string& csv) {
  // Human-readable echo of the CSV: regime, sweep coordinates, both optima.
  std::ostringstream out;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  char buf[200];
  std::snprintf(buf, sizeof buf, "%-11s %-10s %-10s %-12s %-12s %-12s %-10s\n", "regime",
                "lambda_u", "b", "lb*_closed", "lb*_numeric", "profit_num", "rel_gap");
  out << buf;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) cols.push_back(item);
    if (cols.size() < 16) continue;
    auto shorten = [](const std::string& s) {
      if (s == "na") return s;
      char b2[32];
      std::snprintf(b2, sizeof b2, "%.4g", std::strtod(s.c_str(), nullptr));
      return std::string(b2);
    };
    std::snprintf(buf, sizeof buf, "%-11s %-10s %-10s %-12s %-12s %-12s %-10s\n",
                  cols[5].c_str(), shorten(cols[0]).c_str(), shorten(cols[1]).c_str(),
                  shorten(cols[6]).c_str(), shorten(cols[10]).c_str(),
                  shorten(cols[13]).c_str(), shorten(cols[15]).c_str());
    out << buf;
  }
  return out.str();
}

// ---- montecarlo --------------------------------------------------------

constexpr const char* kMonteCarloHeader =
    "lambda_b,lambda_u,alpha,trials,seed,window_radius,min_expected_bs,sir_cap,"
    "interference,scheduler,mc_mean,mc_stderr,se_exact,z_score,capped_trials,"
    "resamples,active_fraction,active_fraction_stderr,p_active,"
    "mean_serving_distance,empirical_selection_prob\n";

}  // namespace

std::map<std::string, std::string> load_config(const std::string& path) {
  return load_config_file(path).values;
}

int cmd_se_sweep(const CommonOptions& common) {
  Resolver r(common);
  r.check_known_keys(with_common(
      {"lambda_b_start", "lambda_b_stop", "lambda_b_points", "lambda_b_log"}));

  const double lambda_u = r.f64(common.lambda_u, "lambda_u", 0.02);
  std::vector<double> alphas = r.f64_list(common.alpha, "alpha", {4.0});
  if (alphas.empty()) throw UsageError("se-sweep needs at least one alpha value");

  std::vector<double> lambda_bs = r.f64_list(common.lambda_b, "lambda_b", {});
  if (lambda_bs.empty()) {
    const double start = r.f64({}, "lambda_b_start", 0.01);
    const double stop = r.f64({}, "lambda_b_stop", 10.0);
    const int points = r.integer({}, "lambda_b_points", 41);
    const bool log_spaced = r.boolean({}, "lambda_b_log", true);
    lambda_bs = make_range(start, stop, points, log_spaced);
  }

  for (double a : alphas)
    NetworkParams{lambda_bs.front(), lambda_u, a}.validate();
  for (double lb : lambda_bs) NetworkParams{lb, lambda_u, alphas.front()}.validate();

  const int threads = resolved_threads(r.integer(common.threads, "threads", 0));
  const std::string csv = se_sweep_csv(alphas, lambda_bs, lambda_u, threads);
  write_text(resolve_out_file(r, common.out, "se_sweep.csv"), csv);
  return kExitOk;
}

int cmd_montecarlo(const CommonOptions& common, const MonteCarloOptions& mc) {
  Resolver r(common);
  r.check_known_keys(with_common({"interference", "scheduler", "window_radius",
                                  "min_expected_bs", "sir_cap", "dump_realization"}));

  const double lambda_u = r.f64(common.lambda_u, "lambda_u", 0.02);
  const std::vector<double> alphas = r.f64_list(common.alpha, "alpha", {4.0});
  if (alphas.size() != 1)
    throw UsageError("montecarlo takes exactly one alpha value");
  const double alpha = alphas.front();
  const std::vector<double> lambda_bs = r.f64_list(common.lambda_b, "lambda_b", {0.2});
  if (lambda_bs.empty()) throw UsageError("montecarlo needs at least one lambda_b value");

  sim::SimConfig cfg;
  cfg.trials = r.u64(common.trials, "trials", 20000);
  cfg.seed = r.u64(common.seed, "seed", 0);
  cfg.threads = r.integer(common.threads, "threads", 0);
  cfg.window_radius = r.f64(mc.window_radius, "window_radius", 0.0);
  cfg.min_expected_bs = r.f64(mc.min_expected_bs, "min_expected_bs", 500.0);
  cfg.sir_cap = r.f64(mc.sir_cap, "sir_cap", 1e12);

  const std::string interference = r.text(mc.interference, "interference", "voronoi");
  if (interference == "voronoi") {
    cfg.interference = sim::InterferenceModel::VoronoiShutoff;
  } else if (interference == "thinned") {
    cfg.interference = sim::InterferenceModel::IndependentThinning;
  } else {
    throw UsageError("unknown interference model '" + interference +
                     "' (expected voronoi or thinned)");
  }
  const bool scheduler = r.boolean(mc.scheduler, "scheduler", false);
  const std::string dump_path = r.text(mc.dump_realization, "dump_realization", "");

  // Validate every row's window before any trial runs.
  for (double lb : lambda_bs) {
    const NetworkParams params{lb, lambda_u, alpha};
    params.validate();
    cfg.validate(params);
  }

  std::string csv = kMonteCarloHeader;
  for (double lb : lambda_bs) {
    const NetworkParams params{lb, lambda_u, alpha};
    const sim::SEEstimate est = scheduler ? sim::estimate_se_with_scheduler(params, cfg)
                                          : sim::estimate_se(params, cfg);
    const double exact = se::se_exact(params).value;
    const double z = (est.std_error > 0.0 && std::isfinite(est.std_error))
                         ? (est.mean - exact) / est.std_error
                         : std::numeric_limits<double>::quiet_NaN();
    csv += fmt(lb);
    csv += ',';
    csv += fmt(lambda_u);
    csv += ',';
    csv += fmt(alpha);
    csv += ',';
    csv += std::to_string(cfg.trials);
    csv += ',';
    csv += std::to_string(cfg.seed);
    csv += ',';
    csv += fmt(cfg.effective_radius(lb));
    csv += ',';
    csv += fmt(cfg.min_expected_bs);
    csv += ',';
    csv += fmt(cfg.sir_cap);
    csv += ',';
    csv += interference;
    csv += ',';
    csv += scheduler ? "1" : "0";
    csv += ',';
    csv += fmt(est.mean);
    csv += ',';
    csv += fmt(est.std_error);
    csv += ',';
    csv += fmt(exact);
    csv += ',';
    csv += fmt(z);
    csv += ',';
    csv += std::to_string(est.capped_trials);
    csv += ',';
    csv += std::to_string(est.resamples);
    csv += ',';
    csv += fmt(est.active_fraction);
    csv += ',';
    csv += fmt(est.active_fraction_stderr);
    csv += ',';
    csv += fmt(se::p_active(lambda_u, lb));
    csv += ',';
    csv += fmt(est.mean_serving_distance);
    csv += ',';
    csv += fmt(est.empirical_selection_prob);
    csv += '\n';
  }

  if (!dump_path.empty()) {
    const NetworkParams params{lambda_bs.front(), lambda_u, alpha};
    const auto topo = sim::realize_topology(params, cfg, 0);
    std::ostringstream dump;
    sim::dump_realization(topo, dump);
    write_text(dump_path, dump.str());
  }

  write_text(resolve_out_file(r, common.out, "montecarlo.csv"), csv);
  return kExitOk;
}

int cmd_optimize(const CommonOptions& common, const OptimizeOptions& opt) {
  Resolver r(common);
  r.check_known_keys(with_common(
      {"sweep_var", "sweep_start", "sweep_stop", "sweep_points", "sweep_log", "regimes"}));

  const double lambda_u = r.f64(common.lambda_u, "lambda_u", 1.0);
  const std::vector<double> alphas = r.f64_list(common.alpha, "alpha", {4.0});
  if (alphas.size() != 1) throw UsageError("optimize takes exactly one alpha value");
  const double alpha = alphas.front();
  const double b = r.f64(common.b, "b", 10.0);
  const double c_b = r.f64(common.c_b, "c_b", 0.1);
  const double c_w = r.f64(common.c_w, "c_w", 0.1);
  DemandModel{b}.validate();
  CostParams{c_b, c_w}.validate();
  if (!(lambda_u > 0.0)) throw DomainError("lambda_u must be > 0");
  if (!(alpha > 2.0)) throw DomainError("alpha must be > 2");

  const std::vector<Regime> regimes =
      parse_regimes(r.text(opt.regimes, "regimes", "sparse,ultradense"));

  const std::string sweep_var = r.text(opt.sweep_var, "sweep_var", "none");
  char sweep = 0;
  if (sweep_var == "lambda_u") {
    sweep = 'u';
  } else if (sweep_var == "b") {
    sweep = 'b';
  } else if (sweep_var != "none") {
    throw UsageError("unknown sweep_var '" + sweep_var + "' (expected lambda_u, b, none)");
  }

  std::vector<double> values;
  if (sweep == 0) {
    values = {0.0};  // placeholder; fixed lambda_u/b used
  } else {
    const double center = sweep == 'u' ? lambda_u : b;
    const double start = r.f64(opt.sweep_start, "sweep_start", center / 10.0);
    const double stop = r.f64(opt.sweep_stop, "sweep_stop", center * 10.0);
    const int points = r.integer(opt.sweep_points, "sweep_points", 21);
    const bool log_spaced = r.boolean(opt.sweep_log, "sweep_log", true);
    values = make_range(start, stop, points, log_spaced);
  }

  const std::string csv =
      optimize_csv(regimes, sweep, values, lambda_u, b, alpha, c_b, c_w);
  const std::string out_path = resolve_out_file(r, common.out, "optimize.csv");
  write_text(out_path, csv);
  if (!out_path.empty()) std::cout << optimize_summary(csv);
  return kExitOk;
}

int cmd_figures(const CommonOptions& common, const FiguresOptions& fig) {
  Resolver r(common);
  r.check_known_keys(with_common({"figure"}));
  const std::string figure = r.text(fig.figure, "figure", "");
  if (figure.empty())
    throw UsageError("figures needs an id: fig1, fig3, or fig4");

  const std::string dir = resolve_out_dir(r, common.out);
  std::filesystem::create_directories(dir);
  auto path = [&](const char* name) { return (std::filesystem::path(dir) / name).string(); };

  const int threads = resolved_threads(r.integer(common.threads, "threads", 0));
  const double c_b = r.f64(common.c_b, "c_b", 0.1);
  const double c_w = r.f64(common.c_w, "c_w", 0.1);
  const double alpha = r.f64_list(common.alpha, "alpha", {4.0}).front();

  if (figure == "fig1") {
    // Exact vs closed-form SE for three path-loss exponents at lambda_u=0.02.
    const double lambda_u = r.f64(common.lambda_u, "lambda_u", 0.02);
    const auto lambda_bs = make_range(0.01, 10.0, 41, true);
    write_text(path("fig1.csv"), se_sweep_csv({3.0, 4.0, 6.0}, lambda_bs, lambda_u, threads));
    write_text(path("fig1.gp"),
               "# gnuplot companion for fig1.csv (run: gnuplot -p fig1.gp)\n"
               "set datafile separator ','\n"
               "set logscale x\n"
               "set xlabel 'BS density lambda_b'\n"
               "set ylabel 'SE (nats/sec/Hz)'\n"
               "set key top left\n"
               "plot for [a in '3 4 6'] 'fig1.csv' every ::1 "
               "using 1:(strcol(3) + 0 == a + 0 ? $4 : 1/0) with lines title 'exact a='.a, \\\n"
               "     for [a in '3 4 6'] 'fig1.csv' every ::1 "
               "using 1:(strcol(3) + 0 == a + 0 ? $5 : 1/0) with lines dt 2 title 'closed a='.a\n");
    return kExitOk;
  }

  const std::vector<Regime> regimes{Regime::Sparse, Regime::UltraDense};
  auto sweep_csv = [&](char var, double lu, double bb, double lo, double hi) {
    return optimize_csv(regimes, var, make_range(lo, hi, 21, true), lu, bb, alpha, c_b, c_w);
  };

  if (figure == "fig3" || figure == "fig4") {
    // Both figures sweep lambda_u at b=10; they differ in the b-sweep anchor:
    // deployment curves are drawn at lambda_u=5, profit curves at lambda_u=1.
    const double anchor_lu = figure == "fig3" ? 5.0 : 1.0;
    const std::string lu_csv = sweep_csv('u', 1.0, 10.0, 0.5, 50.0);
    const std::string b_csv = sweep_csv('b', anchor_lu, 10.0, 1.0, 100.0);
    const std::string tag = figure;
    write_text(path((tag + "_sweep_lambda_u.csv").c_str()), lu_csv);
    write_text(path((tag + "_sweep_b.csv").c_str()), b_csv);
    const bool profit = figure == "fig4";
    const std::string ycol = profit ? "$14" : "$11";
    const std::string ylabel = profit ? "profit per unit area" : "optimal BS density";
    write_text(path((tag + ".gp").c_str()),
               "# gnuplot companion (run: gnuplot -p " + tag + ".gp)\n"
               "set datafile separator ','\n"
               "set logscale x\n"
               "set ylabel '" + ylabel + "'\n"
               "set key top left\n"
               "set multiplot layout 2,1\n"
               "set xlabel 'user density lambda_u (b=10)'\n"
               "plot '" + tag + "_sweep_lambda_u.csv' every ::1 "
               "using 1:(strcol(6) eq 'sparse' ? " + ycol + " : 1/0) w lp t 'sparse', \\\n"
               "     '' every ::1 using 1:(strcol(6) eq 'ultradense' ? " + ycol +
               " : 1/0) w lp t 'ultra-dense'\n"
               "set xlabel 'willingness-to-pay bound b'\n"
               "plot '" + tag + "_sweep_b.csv' every ::1 "
               "using 2:(strcol(6) eq 'sparse' ? " + ycol + " : 1/0) w lp t 'sparse', \\\n"
               "     '' every ::1 using 2:(strcol(6) eq 'ultradense' ? " + ycol +
               " : 1/0) w lp t 'ultra-dense'\n"
               "unset multiplot\n");
    return kExitOk;
  }

  throw UsageError("unknown figure id '" + figure + "' (expected fig1, fig3, fig4)");
}

}  // namespace udn::runner
