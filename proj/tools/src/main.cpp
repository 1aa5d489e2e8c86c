#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "inls_cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"inls: ground states, sharp constants and blow-up criteria for the radial INLS"};
  app.require_subcommand(1, 1);

  std::string config_path, out_dir;
  std::uint64_t seed = 1;
  double tol = 0.0;
  app.add_option("--config", config_path, "INI configuration file");
  app.add_option("--out", out_dir, "output directory (overrides [output] dir)");
  app.add_option("--seed", seed, "seed for randomised property checks");
  app.add_option("--tol", tol, "ground-state residual tolerance override")->check(CLI::PositiveNumber);

  const char* names[] = {"ground-state", "classify", "evolve", "ode", "sweep", "constants"};
  const char* help[] = {"solve for Q and write its profile and summary",
                        "evaluate every threshold criterion on the initial data",
                        "time-integrate the initial data and record diagnostics",
                        "integrate the reduced particle model",
                        "quadratic-phase sweep: prediction vs simulation",
                        "compute every sharp constant"};
  app.fallthrough();
  for (int i = 0; i < 6; ++i) app.add_subcommand(names[i], help[i])->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : inls::cli::kExitValidation;
  }

  inls::cli::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = inls::cli::load_config(config_path);
  } catch (const inls::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return inls::cli::exit_code(e.kind());
  }
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (app.count("--seed")) cfg.seed = seed;
  if (tol > 0.0) cfg.tol = tol;

  const std::string name = app.get_subcommands().front()->get_name();
  return inls::cli::run_command(name, cfg, std::cout, std::cerr);
}
