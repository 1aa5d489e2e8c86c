#pragma once

#include <utility>
#include <vector>

#include "inls/grid.hpp"
#include "inls/params.hpp"

namespace inls {

struct GroundState {
  ProblemParams params;
  GridPtr grid;
  std::vector<double> profile;
  double Q0 = 0.0;
  double mass = 0.0;
  double grad_sq = 0.0;
  double pot = 0.0;
  double energy = 0.0;
  double match_radius = 0.0;  // beyond this the profile is the linear decaying tail
  double residual = 0.0;      // max-norm ODE residual of the shooting solution, relative to max(Q0, Q0^p)
};

struct ShootingOptions {
  double q0_min = 1e-3;
  double q0_max = 1e3;
  int scan_points = 121;
  int max_bisections = 200;
  // Finish with a Newton polish onto the discrete operator (see polish_discrete).
  bool polish = true;
};

// Radial shooting for Q'' + (N-1)/r Q' - Q + r^{-b} Q^p = 0, Q'(0) = 0,
// Q -> 0. Throws OutOfRegime (s_c >= 1), NoBracket or NoConvergence.
GroundState solve_ground_state(const ProblemParams& params, GridPtr grid, double tol = 1e-8,
                               const ShootingOptions& opt = {});

// Newton iteration onto the fixed point of the discrete operator used by the
// evolution (-W^{-1} K Q - Q + r^{-b} Q^p = 0 with the grid's weights), so
// that the standing wave e^{it} Q is stationary on the grid.
GroundState polish_discrete(const GroundState& gs, int max_iter = 30, double tol = 1e-12);

// Fills mass, grad_sq, pot and energy of an arbitrary profile on gs.grid.
GroundState with_profile(const GroundState& gs, std::vector<double> profile);

// Signed relative defects of grad_sq = K/(2(p+1)) pot and
// E = (p-1) s_c / (2(p+1)) pot. Throws DegenerateProfile for a zero profile.
std::pair<double, double> pohozaev_residuals(const GroundState& gs);

}  // namespace inls
