#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "inls/field.hpp"
#include "inls/ground_state.hpp"

namespace inls {

struct EvolutionConfig {
  double dt0 = 1e-3;
  double t_end = 1.0;
  double dt_floor = 1e-7;
  // The effective floor is max(dt_floor, grid_floor_factor h^2): below a small
  // fraction of the grid's diffusive time the collapse is no longer resolved.
  double grid_floor_factor = 0.01;
  // Blow-up is reported once ||grad u|| exceeds this multiple of its initial
  // value and the step has collapsed below dt_floor.
  double blowup_gradient_factor = 10.0;
  // Largest accepted per-step energy change, relative to max(|E|, grad_sq / 2).
  double conservation_drift_cap = 1e-7;
  int output_stride = 10;
  bool linear_only = false;
};

void validate(const EvolutionConfig& cfg);

enum class EvolutionOutcome { BlowUpDetected, ReachedTend, StepUnderflow };
std::string_view to_string(EvolutionOutcome o);

struct TrajectorySample {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double grad_sq = 0.0;
  double pot = 0.0;
  double V = 0.0;
  double V_t = 0.0;
  double V_tt = 0.0;
  double mp = 0.0;  // NaN without a reference ground state
};

struct TrajectoryRecord {
  std::vector<TrajectorySample> samples;
  EvolutionOutcome outcome = EvolutionOutcome::ReachedTend;
  double t_final = 0.0;
  double dt_final = 0.0;
  int steps = 0;
  int rejected = 0;
  double max_mass_drift = 0.0;    // relative to the initial mass
  double max_energy_drift = 0.0;  // relative to max(|E0|, grad_sq(0) / 2)
  FieldState final_state;
};

// Strang-split integrator: half nonlinear phase rotation, Crank-Nicolson
// linear step on the discrete Laplacian -W^{-1} K, half nonlinear rotation.
// Caches the banded factorisation for the current dt.
class Stepper {
 public:
  Stepper(const ProblemParams& params, GridPtr grid, bool linear_only = false);
  ~Stepper();
  Stepper(Stepper&&) noexcept;
  Stepper& operator=(Stepper&&) noexcept;

  void step(std::vector<cplx>& u, double dt);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

FieldState step(const FieldState& u, double dt, bool linear_only = false);

TrajectoryRecord evolve(const FieldState& u0, const EvolutionConfig& cfg, const GroundState* reference = nullptr);

// Normalised max residuals of (dV/dt - V_t) and (d2V/dt2 - V_tt) over the
// interior samples, from non-uniform three-point differences.
// Throws TooFewSamples for fewer than five samples.
std::pair<double, double> virial_consistency(const TrajectoryRecord& rec, double t_max = -1.0);

}  // namespace inls
