#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace udn::runner {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitNumerical = 4;

// Bad invocation shape (missing subcommand, empty sweep list, unknown figure
// id). Distinct from DomainError so main can map it to the usage exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Options common to all subcommands. Unset fields fall back to the config
// file, then to built-in defaults; command-line values always win.
struct CommonOptions {
  std::optional<std::string> config_path;
  std::optional<std::string> out;  // file path; directory for `figures`
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<int> threads;
  std::vector<double> lambda_b;  // empty = config/range/default
  std::optional<double> lambda_u;
  std::vector<double> alpha;
  std::optional<double> b;
  std::optional<double> c_b;
  std::optional<double> c_w;
};

struct MonteCarloOptions {
  std::optional<std::string> interference;  // voronoi | thinned
  std::optional<bool> scheduler;
  std::optional<double> window_radius;
  std::optional<double> min_expected_bs;
  std::optional<double> sir_cap;
  std::optional<std::string> dump_realization;
};

struct OptimizeOptions {
  std::optional<std::string> sweep_var;  // lambda_u | b
  std::optional<double> sweep_start;
  std::optional<double> sweep_stop;
  std::optional<int> sweep_points;
  std::optional<bool> sweep_log;
  std::optional<std::string> regimes;  // comma list of sparse | ultradense | general
};

struct FiguresOptions {
  std::optional<std::string> figure;  // fig1 | fig3 | fig4
};

// key=value pairs, '#' comments, later keys win
std::map<std::string, std::string> load_config(const std::string& path);

int cmd_se_sweep(const CommonOptions& common);
int cmd_montecarlo(const CommonOptions& common, const MonteCarloOptions& mc);
int cmd_optimize(const CommonOptions& common, const OptimizeOptions& opt);
int cmd_figures(const CommonOptions& common, const FiguresOptions& fig);

}  // namespace udn::runner
