#pragma once

#include <span>
#include <vector>

#include "inls/grid.hpp"
#include "inls/params.hpp"

namespace inls {

// Complex radial field u(r_i) at time t. Immutable by convention: operations
// return new states.
struct FieldState {
  ProblemParams params;
  GridPtr grid;
  std::vector<cplx> values;
  double time = 0.0;
};

FieldState make_field(const ProblemParams& params, GridPtr grid, std::vector<cplx> values, double time = 0.0);
FieldState make_real_field(const ProblemParams& params, GridPtr grid, std::span<const double> values);

// u -> exp(i gamma r^2) u
FieldState quad_phase(const FieldState& u, double gamma);

FieldState scaled(const FieldState& u, double factor);

}  // namespace inls
