// qnd: figure data, resolution sweeps, Monte Carlo samples and acceptance
// checks for variable-resolution photon-number measurements.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid arguments,
// 3 I/O error.

#include <CLI11.hpp>
#include <iostream>

#include "qnd/error.hpp"
#include "qnd/figures.hpp"
#include "qnd/verify.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;

void add_state_options(CLI::App* cmd, qnd::cli::RunConfig& cfg, std::string& format) {
  cmd->add_option("--alpha", cfg.alpha_magnitude, "Coherent amplitude |alpha|")->capture_default_str();
  cmd->add_option("--phase", cfg.alpha_phase, "Phase phi in radians, alpha = |alpha| e^{-i phi}")
      ->capture_default_str();
  cmd->add_option("--out", cfg.output, "Output path, '-' for stdout")->capture_default_str();
  cmd->add_option("--format", format, "csv or json")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-resolution QND photon-number measurement simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qnd::cli::kVersion);

  qnd::cli::RunConfig cfg;
  std::string format = "csv";

  auto* figure = app.add_subcommand("figure", "Emit the data behind benchmark figure 1-5");
  figure->add_option("id", cfg.figure_id, "Figure number (1-5)")->required();
  add_state_options(figure, cfg, format);
  auto* fig_dn_min = figure->add_option("--dn-min", cfg.dn_min, "Figure 5: smallest resolution");
  auto* fig_dn_max = figure->add_option("--dn-max", cfg.dn_max, "Figure 5: largest resolution");
  auto* fig_dn_step = figure->add_option("--dn-step", cfg.dn_step, "Figure 5: resolution step");
  figure->add_option("--grid-min", cfg.grid_min, "Figures 1-4: first n_m")->capture_default_str();
  figure->add_option("--grid-max", cfg.grid_max, "Figures 1-4: last n_m")->capture_default_str();
  figure->add_option("--grid-step", cfg.grid_step, "Figures 1-4: n_m step")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Tabulate correlation statistics over a resolution range");
  add_state_options(sweep, cfg, format);
  sweep->add_option("--dn-min", cfg.dn_min)->capture_default_str();
  sweep->add_option("--dn-max", cfg.dn_max)->capture_default_str();
  sweep->add_option("--dn-step", cfg.dn_step)->capture_default_str();

  auto* sample = app.add_subcommand("sample", "Draw measurement outcomes from the exact density");
  add_state_options(sample, cfg, format);
  sample->add_option("--dn", cfg.delta_n, "Measurement resolution")->capture_default_str();
  sample->add_option("--count", cfg.count, "Shots, or trajectory length")->capture_default_str();
  sample->add_option("--seed", cfg.seed)->capture_default_str();
  sample->add_flag("--trajectory", cfg.trajectory,
                   "Feed each post-state into the next measurement");

  qnd::cli::VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  verify->add_option("--only", verify_opts.only, "Group name or criterion number");
  verify->add_option("--tol-scale", verify_opts.tol_scale, "Scale absolute/relative tolerances")
      ->capture_default_str();
  verify->add_option("--seed", verify_opts.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*verify) {
      const auto results = qnd::cli::run_acceptance(verify_opts);
      qnd::cli::print_report(results, std::cout);
      return qnd::cli::all_passed(results) ? 0 : kExitVerifyFailed;
    }

    cfg.format = qnd::cli::parse_format(format);
    qnd::cli::Table table;
    if (*figure) {
      cfg.command = "figure";
      if (cfg.figure_id == 5) {
        const auto defaults = qnd::cli::figure5_defaults();
        if (fig_dn_min->count() == 0) cfg.dn_min = defaults.dn_min;
        if (fig_dn_max->count() == 0) cfg.dn_max = defaults.dn_max;
        if (fig_dn_step->count() == 0) cfg.dn_step = defaults.dn_step;
      }
      table = qnd::cli::figure_table(cfg);
    } else if (*sweep) {
      cfg.command = "sweep";
      table = qnd::cli::sweep_table(cfg);
    } else {
      cfg.command = "sample";
      table = qnd::cli::sample_table(cfg);
    }
    qnd::cli::write_file(table, cfg.format, cfg.output);
  } catch (const qnd::IoError& e) {
    std::cerr << "qnd: " << e.what() << '\n';
    return kExitIo;
  } catch (const qnd::Error& e) {
    std::cerr << "qnd: " << e.what() << '\n';
    return kExitInvalid;
  }
  return 0;
}
