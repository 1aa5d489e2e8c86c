#pragma once

#include "inls/field.hpp"
#include "inls/ground_state.hpp"

namespace inls {

struct ConstantsBundle {
  double C_pN_gn = 0.0;
  double C_Q = 0.0;             // C_pN_gn^{4/K}
  double C_Q_energy = 0.0;      // same constant written through E[Q]; used by alpha_m / phi
  double D_pN = 0.0;
  double C_pN_interp = 0.0;
  double C_pN_interp_empirical = 0.0;
  double C_lush2 = 0.0;
};

// Sharp Gagliardo-Nirenberg constant from the ground state's pot and mass.
double gn_constant_from_Q(const GroundState& gs);

// pot / (grad_sq^{K/4} mass^{(p+1)/2 - K/4}) for the stored profile.
double gn_ratio(const GroundState& gs);
double gn_ratio(const ProblemParams& params, double mass, double grad_sq, double pot);

// C_Q written with the energy: (4A/K) ((p+1)/(2A))^{4/K} (16 E_Q)^{4/K-1} / M_Q^kappa.
double C_Q_energy_form(const GroundState& gs);

// (|S^{N-1}| int_0^1 rho^{2b/(p-1)+N-1} (1-rho^2)^{(p+1)/(p-1)} drho)^{(p-1)/(p+1)}
double D_integral(const ProblemParams& params);

// Constant of ||u||^2 <= C^2 (||xu||^{K/2} || |x|^{-b/(p+1)} u ||_{p+1}^{p+1})^{4/(K+2p+2)}.
double interp_constant(const ProblemParams& params);

// Best constant realised on the extremal family, measured on a grid.
double interp_constant_empirical(const ProblemParams& params, int M = 20000);

// Ratio ||u||^2 / (...)^{...} for a field, i.e. the constant this field attains.
double interp_ratio(const FieldState& u);

// Builds |u| = beta phi(alpha x) on a grid adapted to its support and returns
// the relative defect 1 - ratio / C^2 (zero at equality, positive otherwise).
double interp_extremizer_check(const ProblemParams& params, double beta, double alpha_scale, int M = 20000);
double interp_defect(const FieldState& u);

double lush2_constant(const ProblemParams& params, double C_interp);
// Same constant through the expanded exponents.
double lush2_constant_expanded(const ProblemParams& params, double C_interp);

ConstantsBundle compute_constants(const GroundState& gs);

}  // namespace inls
