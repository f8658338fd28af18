#include <CLI11.hpp>

#include <iostream>

#include "udn/errors.hpp"
#include "udn_cli/runner.hpp"

namespace {

using udn::runner::CommonOptions;

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "key=value config file; flags override it");
  cmd->add_option("--out", o.out, "output CSV path (for figures: output directory)");
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--trials", o.trials, "Monte Carlo trial count");
  cmd->add_option("--threads", o.threads, "worker threads, 0 = all hardware threads");
  cmd->add_option("--lambda-b", o.lambda_b, "BS density (comma separated or repeated)")
      ->delimiter(',');
  cmd->add_option("--lambda-u", o.lambda_u, "user density");
  cmd->add_option("--alpha", o.alpha, "path-loss exponent (comma separated or repeated)")
      ->delimiter(',');
  cmd->add_option("--b", o.b, "willingness-to-pay upper bound");
  cmd->add_option("--c-b", o.c_b, "operating cost per unit BS density");
  cmd->add_option("--c-w", o.c_w, "operating cost per unit bandwidth");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral efficiency and deployment economics for ultra-dense cellular networks"};
  app.require_subcommand(1);

  CommonOptions se_common, mc_common, opt_common, fig_common;
  udn::runner::MonteCarloOptions mc_opts;
  udn::runner::OptimizeOptions opt_opts;
  udn::runner::FiguresOptions fig_opts;

  CLI::App* se = app.add_subcommand(
      "se-sweep", "Exact, closed-form, and lower-bound SE over a BS-density sweep");
  add_common(se, se_common);

  CLI::App* mc = app.add_subcommand(
      "montecarlo", "Monte Carlo SE estimate vs the quadrature value");
  add_common(mc, mc_common);
  mc->add_option("--interference", mc_opts.interference,
                 "interferer activation: voronoi (exact shutoff) or thinned (i.i.d.)");
  mc->add_flag_callback("--scheduler", [&] { mc_opts.scheduler = true; },
                        "share each cell via a uniformly random single-user scheduler");
  mc->add_flag_callback("--no-scheduler", [&] { mc_opts.scheduler = false; },
                        "disable the scheduler (default)");
  mc->add_option("--window-radius", mc_opts.window_radius,
                 "simulation disc radius, 0 = derive from --min-expected-bs");
  mc->add_option("--min-expected-bs", mc_opts.min_expected_bs,
                 "minimum expected BS count inside the window");
  mc->add_option("--sir-cap", mc_opts.sir_cap, "SIR ceiling, also used with no interferers");
  mc->add_option("--dump-realization", mc_opts.dump_realization,
                 "write one topology realization (trial 0) to this CSV path");

  CLI::App* opt = app.add_subcommand(
      "optimize", "Profit-optimal (lambda_b, W) per regime, closed form vs numeric oracle");
  add_common(opt, opt_common);
  opt->add_option("--sweep-var", opt_opts.sweep_var, "sweep variable: lambda_u, b, or none");
  opt->add_option("--sweep-start", opt_opts.sweep_start, "sweep range start");
  opt->add_option("--sweep-stop", opt_opts.sweep_stop, "sweep range stop");
  opt->add_option("--sweep-points", opt_opts.sweep_points, "sweep point count");
  opt->add_flag_callback("--sweep-log", [&] { opt_opts.sweep_log = true; },
                         "log-spaced sweep (default)");
  opt->add_flag_callback("--sweep-linear", [&] { opt_opts.sweep_log = false; },
                         "linearly spaced sweep");
  opt->add_option("--regimes", opt_opts.regimes,
                  "comma list from sparse, ultradense, general");

  CLI::App* fig = app.add_subcommand(
      "figures", "Emit preset sweep CSVs with companion gnuplot scripts");
  add_common(fig, fig_common);
  fig->add_option("figure", fig_opts.figure, "figure id: fig1, fig3, or fig4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return udn::runner::kExitUsage;
  }

  try {
    if (app.got_subcommand(se)) return udn::runner::cmd_se_sweep(se_common);
    if (app.got_subcommand(mc)) return udn::runner::cmd_montecarlo(mc_common, mc_opts);
    if (app.got_subcommand(opt)) return udn::runner::cmd_optimize(opt_common, opt_opts);
    if (app.got_subcommand(fig)) return udn::runner::cmd_figures(fig_common, fig_opts);
  } catch (const udn::runner::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return udn::runner::kExitUsage;
  } catch (const udn::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return udn::runner::kExitNumerical;
  } catch (const udn::DomainError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return udn::runner::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return udn::runner::kExitUsage;
}
