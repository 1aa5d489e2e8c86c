#pragma once

#include <string_view>
#include <vector>

#include "inls/params.hpp"

namespace inls {

struct ParticleState {
  double Phi = 1.0;
  double Phi_s = 0.0;
  double s = 0.0;
};

// omega Phi_ss = Phi^gamma - Phi^delta, i.e. omega Phi_ss = -U'(Phi).
struct WellSpec {
  double gamma_exp = 0.0;
  double delta_exp = 0.0;
  double omega = 1.0;
  double U_max = 0.0;
};

WellSpec make_well(const ProblemParams& params);
WellSpec make_well(double gamma_exp, double omega);

// Throws DomainViolation for Phi <= 0.
double potential_U(const WellSpec& w, double Phi);
double particle_energy(const WellSpec& w, const ParticleState& st);

enum class WellCondition { A, B, C, None };
std::string_view to_string(WellCondition c);

WellCondition classify_ABC(const WellSpec& w, const ParticleState& st, double eta = 1e-9);

enum class ParticleOutcome { HitZero, Survived };
std::string_view to_string(ParticleOutcome o);

struct ParticleOptions {
  double rtol = 1e-11;
  double atol = 1e-13;
  double phi_floor = 1e-6;  // integration stops here; the crossing time is extrapolated
  double min_step = 1e-14;
  int max_steps = 2'000'000;
  bool keep_trajectory = true;
};

struct ParticleRun {
  ParticleOutcome outcome = ParticleOutcome::Survived;
  double s_star = 0.0;                // extrapolated Phi = 0 crossing (HitZero only)
  std::vector<ParticleState> trajectory;
  std::vector<double> energy;         // particle energy at each stored state
  double max_energy_drift = 0.0;      // max |E(s) - E(0)| relative to the largest energy term
  int steps = 0;
};

// Throws StepUnderflow when the adaptive step collapses before Phi reaches the floor.
ParticleRun integrate_particle(const WellSpec& w, const ParticleState& st0, double horizon, double dt0,
                               const ParticleOptions& opt = {});

// Map (M, E, V, V_t) to (Phi(0), Phi_s(0)) via B = V^{alpha+1} = mu Phi(lambda t).
struct Rescaling {
  double mu = 0.0;
  double lambda = 0.0;
  double alpha = 0.0;
};

Rescaling rescaling(const ProblemParams& params, double M0, double E0);
ParticleState rescale_V_to_Phi(const ProblemParams& params, double M0, double E0, double V0, double Vt0);
// Inverse map; returns (V0, Vt0).
std::pair<double, double> rescale_Phi_to_V(const ProblemParams& params, double M0, double E0, const ParticleState& st);

}  // namespace inls
