#pragma once

#include "inls/field.hpp"
#include "inls/ground_state.hpp"

namespace inls {

// All integral quantities of a field, evaluated in one pass.
struct Quantities {
  double mass = 0.0;
  double grad_sq = 0.0;
  double pot = 0.0;       // int |x|^{-b} |u|^{p+1}
  double energy = 0.0;
  double variance = 0.0;  // int |x|^2 |u|^2
  double momentum = 0.0;  // Im int x . grad(u) conj(u)
};

Quantities quantities(const FieldState& u);

double mass(const FieldState& u);
double grad_sq(const FieldState& u);
double potential(const FieldState& u);
double energy(const FieldState& u);
double variance(const FieldState& u);
double momentum(const FieldState& u);

struct VirialSnapshot {
  double V = 0.0;
  double V_t = 0.0;
  double V_tt = 0.0;
  double z = 0.0;
  double z_t = 0.0;
};

// Throws DegenerateVariance when V < 1e-30.
VirialSnapshot virial_snapshot(const FieldState& u);
VirialSnapshot virial_snapshot(const ProblemParams& params, const Quantities& q);

// V [grad_sq - pot^{4/K} / (C_Q M^kappa)] - (Im int x.grad(u) conj(u))^2
double banica_gap(const FieldState& u, double C_Q);
double banica_gap(const ProblemParams& params, const Quantities& q, double C_Q);

// Lower bound eps_0 of M^{1/s_c - 1} [grad_sq - K/(2(p+1)) pot] over fields with
// a <= pot^{s_c} M^{1-s_c} <= A_bound. Throws EmptyInterval when the band is
// empty or reaches the ground-state level.
double energy_gap_bound(const ProblemParams& params, const GroundState& gs, double a, double A_bound);

}  // namespace inls
