#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli_app.hpp"

namespace {

int default_threads() {
  if (const char* env = std::getenv("QRG_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

void add_shared_flags(CLI::App* sub, qrgxy::cli::RunConfig& cfg) {
  sub->add_option("--gamma-min", cfg.gamma_min, "lower end of the gamma grid");
  sub->add_option("--gamma-max", cfg.gamma_max, "upper end of the gamma grid");
  sub->add_option("--points", cfg.points, "number of grid points");
  sub->add_option("--iterations", cfg.iterations, "rg iteration counts (comma separated)")
      ->delimiter(',');
  sub->add_option("--fd-step", cfg.fd_step, "finite difference step");
  sub->add_option("--tol", cfg.tol, "verification tolerance");
  sub->add_option("--out", cfg.out_path, "output file (default: stdout)");
  sub->add_option("--threads", cfg.threads, "worker thread count (env QRG_THREADS)");
  sub->add_flag("--svg", cfg.emit_svg, "also write a plot next to the CSV (<out>.svg)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum renormalization group of the 2d anisotropic XY model"};
  app.require_subcommand(1);

  qrgxy::cli::RunConfig verify_cfg;
  verify_cfg.command = "verify";
  verify_cfg.gamma_min = 0.05;
  verify_cfg.gamma_max = 1.0;
  verify_cfg.points = 20;
  verify_cfg.iterations = {0};
  verify_cfg.threads = default_threads();
  add_shared_flags(app.add_subcommand("verify", "cross-check closed forms against the eigensolver"),
                   verify_cfg);

  qrgxy::cli::RunConfig flow_cfg;
  flow_cfg.command = "flow";
  flow_cfg.points = 21;
  flow_cfg.iterations = {8};
  flow_cfg.threads = default_threads();
  add_shared_flags(app.add_subcommand("flow", "anisotropy flow under the rg map"), flow_cfg);

  qrgxy::cli::RunConfig conc_cfg;
  conc_cfg.command = "concurrence";
  conc_cfg.iterations = {0, 1, 2, 3, 4};
  conc_cfg.threads = default_threads();
  add_shared_flags(app.add_subcommand("concurrence", "geometric average concurrence curves"),
                   conc_cfg);

  qrgxy::cli::RunConfig deriv_cfg;
  deriv_cfg.command = "derivative";
  deriv_cfg.iterations = {0, 1, 2, 3, 4};
  deriv_cfg.threads = default_threads();
  add_shared_flags(app.add_subcommand("derivative", "absolute derivative of the concurrence"),
                   deriv_cfg);

  qrgxy::cli::RunConfig scaling_cfg;
  scaling_cfg.command = "scaling";
  scaling_cfg.iterations = {1, 2, 3, 4};
  scaling_cfg.threads = default_threads();
  add_shared_flags(app.add_subcommand("scaling", "finite-size scaling of the derivative peak"),
                   scaling_cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qrgxy::cli::kConfigError;
  }

  for (const qrgxy::cli::RunConfig* cfg :
       {&verify_cfg, &flow_cfg, &conc_cfg, &deriv_cfg, &scaling_cfg}) {
    if (app.got_subcommand(cfg->command)) return qrgxy::cli::run_command(*cfg, std::cout);
  }
  return qrgxy::cli::kConfigError;
}
