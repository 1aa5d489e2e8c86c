#pragma once

#include <random>

#include "inls/field.hpp"

namespace inls::cli {

// Smooth random radial field: one to three terms
//   A e^{i(theta + g r^2)} r^{2m} exp(-r^2 / w^2),  m in {0, 1},
// each even in r so the field is smooth at the origin.
FieldState random_field(const ProblemParams& params, GridPtr grid, std::mt19937_64& rng, bool complex_valued = true);

// Real compactly supported field on [0, R_s) vanishing smoothly at R_s.
FieldState random_compact_field(const ProblemParams& params, GridPtr grid, double support, std::mt19937_64& rng);

}  // namespace inls::cli
