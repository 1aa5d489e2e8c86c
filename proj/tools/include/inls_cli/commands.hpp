#pragma once

#include <iosfwd>
#include <string>

#include "inls/error.hpp"
#include "inls/field.hpp"
#include "inls/ground_state.hpp"
#include "inls_cli/config.hpp"
#include "inls_cli/report.hpp"

namespace inls::cli {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

int exit_code(ErrorKind kind);

// Each command writes its files under cfg.out_dir and returns the scalar summary.
Report cmd_ground_state(const RunConfig& cfg);
Report cmd_constants(const RunConfig& cfg);
Report cmd_classify(const RunConfig& cfg);
Report cmd_evolve(const RunConfig& cfg);
Report cmd_ode(const RunConfig& cfg);
Report cmd_sweep(const RunConfig& cfg);

// Dispatches by subcommand name, prints the summary to `out` and errors to
// `err`, and returns the process exit code.
int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Reads a CSV with columns (r, value) or (r, re, im) and interpolates it
// linearly onto the grid nodes; zero beyond the last radius.
std::vector<cplx> read_profile_csv(const std::string& path, const RadialGrid& grid);

FieldState build_initial(const RunConfig& cfg, const ProblemParams& params, GridPtr grid, const GroundState* gs);

}  // namespace inls::cli
