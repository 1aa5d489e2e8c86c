#include "inls/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "banded.hpp"
#include "inls/error.hpp"
#include "inls/functionals.hpp"

namespace inls {

std::string_view to_string(EvolutionOutcome o) {
  switch (o) {
    case EvolutionOutcome::BlowUpDetected: return "BlowUpDetected";
    case EvolutionOutcome::ReachedTend: return "ReachedTend";
    case EvolutionOutcome::StepUnderflow: return "StepUnderflow";
  }
  return "StepUnderflow";
}

void validate(const EvolutionConfig& c) {
  if (!(c.dt0 > 0.0)) throw validation_error("InvalidConfig", "dt0 must be positive");
  if (!(c.t_end > 0.0)) throw validation_error("InvalidConfig", "t_end must be positive");
  if (!(c.dt_floor > 0.0) || !(c.dt_floor <= c.dt0)) throw validation_error("InvalidConfig", "need 0 < dt_floor <= dt0");
  if (!(c.grid_floor_factor >= 0.0)) throw validation_error("InvalidConfig", "grid_floor_factor must be >= 0");
  if (!(c.blowup_gradient_factor > 1.0)) throw validation_error("InvalidConfig", "blowup_gradient_factor must exceed 1");
  if (!(c.conservation_drift_cap > 0.0)) throw validation_error("InvalidConfig", "conservation_drift_cap must be positive");
  if (c.output_stride < 1) throw validation_error("InvalidConfig", "output_stride must be >= 1");
}

struct Stepper::Impl {
  ProblemParams params;
  GridPtr grid;
  bool linear_only;
  BandedStiffness K;
  std::vector<double> coef;  // nonlinear coefficient per node, r^{-b} in the interior
  std::unique_ptr<detail::CrankNicolsonSolver> solver;
  std::vector<cplx> rhs;

  void nonlinear(std::vector<cplx>& u, double tau) const {
    const double e = 0.5 * (params.p - 1.0);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] *= std::polar(1.0, tau * coef[i] * std::pow(std::norm(u[i]), e));
  }

  void linear(std::vector<cplx>& u, double dt) {
    const double tau = 0.5 * dt;
    if (!solver || solver->tau() != tau) solver = std::make_unique<detail::CrankNicolsonSolver>(K, grid->weight, tau);
    // rhs = (W - i tau K) u
    const auto Ku = apply_stiffness(K, u);
    rhs.resize(u.size());
    const cplx itau(0.0, tau);
    for (std::size_t i = 0; i < u.size(); ++i) rhs[i] = grid->weight[i] * u[i] - itau * Ku[i];
    solver->solve(rhs);
    u.swap(rhs);
  }
};

Stepper::Stepper(const ProblemParams& params, GridPtr grid, bool linear_only) : impl_(std::make_unique<Impl>()) {
  impl_->params = params;
  impl_->grid = std::move(grid);
  impl_->linear_only = linear_only;
  impl_->K = stiffness(*impl_->grid);
  const auto pw = singular_weights(*impl_->grid, params.b);
  impl_->coef.resize(pw.size());
  for (std::size_t i = 0; i < pw.size(); ++i) impl_->coef[i] = pw[i] / impl_->grid->weight[i];
}

Stepper::~Stepper() = default;
Stepper::Stepper(Stepper&&) noexcept = default;
Stepper& Stepper::operator=(Stepper&&) noexcept = default;

void Stepper::step(std::vector<cplx>& u, double dt) {
  if (!(dt > 0.0)) throw validation_error("InvalidStep", "dt must be positive");
  if (!impl_->linear_only) impl_->nonlinear(u, 0.5 * dt);
  impl_->linear(u, dt);
  if (!impl_->linear_only) impl_->nonlinear(u, 0.5 * dt);
}

FieldState step(const FieldState& u, double dt, bool linear_only) {
  Stepper s(u.params, u.grid, linear_only);
  FieldState out = u;
  s.step(out.values, dt);
  out.time += dt;
  return out;
}

namespace {

TrajectorySample sample(const FieldState& u, const GroundState* ref, bool linear_only) {
  Quantities q = quantities(u);
  if (linear_only) {
    q.pot = 0.0;
    q.energy = 0.5 * q.grad_sq;
  }
  TrajectorySample s;
  s.t = u.time;
  s.mass = q.mass;
  s.energy = q.energy;
  s.grad_sq = q.grad_sq;
  s.pot = q.pot;
  s.V = q.variance;
  s.V_t = 4.0 * q.momentum;
  s.V_tt = 4.0 * u.params.K * q.energy - 2.0 * (u.params.K - 4.0) * q.grad_sq;
  if (linear_only) s.V_tt = 8.0 * q.grad_sq;
  s.mp = std::numeric_limits<double>::quiet_NaN();
  if (ref) s.mp = std::pow(q.mass / ref->mass, u.params.sigma()) * q.pot / ref->pot;
  return s;
}

}  // namespace

TrajectoryRecord evolve(const FieldState& u0, const EvolutionConfig& cfg, const GroundState* ref) {
  validate(cfg);
  const bool lin = cfg.linear_only;
  Stepper stepper(u0.params, u0.grid, lin);
  TrajectoryRecord rec;
  FieldState u = u0;

  TrajectorySample s0 = sample(u, ref, lin);
  rec.samples.push_back(s0);
  const double M0 = s0.mass;
  const double E0 = s0.energy;
  const double e_ref = std::max(std::abs(E0), 0.5 * s0.grad_sq);
  const double grad0 = std::sqrt(s0.grad_sq);

  double dt = cfg.dt0;
  double E = E0;
  double G = s0.grad_sq;
  int calm = 0;
  std::vector<cplx> trial;
  const double t_eps = 1e-12 * cfg.t_end;
  const double floor = std::max(cfg.dt_floor, cfg.grid_floor_factor * u0.grid->h * u0.grid->h);

  while (u.time < cfg.t_end - t_eps) {
    const double h = std::min(dt, cfg.t_end - u.time);
    trial = u.values;
    stepper.step(trial, h);
    FieldState cand{u.params, u.grid, trial, u.time + h};
    const double g = grad_sq(cand);
    const double e = lin ? 0.5 * g : 0.5 * g - potential(cand) / (u.params.p + 1.0);
    const double scale = std::max(std::abs(E), 0.5 * G);
    const double drift = std::abs(e - E) / scale;
    if (!std::isfinite(e) || drift > cfg.conservation_drift_cap) {
      ++rec.rejected;
      dt = 0.5 * h;
      calm = 0;
      if (dt < floor) {
        rec.outcome = std::sqrt(G) > cfg.blowup_gradient_factor * grad0 ? EvolutionOutcome::BlowUpDetected
                                                                         : EvolutionOutcome::StepUnderflow;
        break;
      }
      continue;
    }
    u = std::move(cand);
    E = e;
    G = g;
    ++rec.steps;
    rec.max_energy_drift = std::max(rec.max_energy_drift, std::abs(E - E0) / e_ref);
    const bool last = u.time >= cfg.t_end - t_eps;
    if (rec.steps % cfg.output_stride == 0 || last) {
      const TrajectorySample s = sample(u, ref, lin);
      rec.max_mass_drift = std::max(rec.max_mass_drift, std::abs(s.mass - M0) / M0);
      rec.samples.push_back(s);
    }
    if (drift < cfg.conservation_drift_cap / 16.0 && dt < cfg.dt0) {
      if (++calm >= 8) {
        dt = std::min(cfg.dt0, 2.0 * dt);
        calm = 0;
      }
    } else {
      calm = 0;
    }
  }
  if (rec.outcome == EvolutionOutcome::ReachedTend && u.time < cfg.t_end - t_eps) {
    rec.outcome = EvolutionOutcome::StepUnderflow;
  }
  if (rec.samples.back().t != u.time) rec.samples.push_back(sample(u, ref, lin));
  rec.t_final = u.time;
  rec.dt_final = dt;
  rec.final_state = std::move(u);
  return rec;
}

std::pair<double, double> virial_consistency(const TrajectoryRecord& rec, double t_max) {
  std::vector<const TrajectorySample*> s;
  for (const auto& x : rec.samples) {
    if (t_max < 0.0 || x.t <= t_max) s.push_back(&x);
  }
  if (s.size() < 5) throw validation_error("TooFewSamples", "virial consistency needs at least 5 samples");
  const double span = s.back()->t - s.front()->t;
  double vmax = 0.0, vt_max = 0.0, vtt_max = 0.0;
  for (const auto* x : s) {
    vmax = std::max(vmax, std::abs(x->V));
    vt_max = std::max(vt_max, std::abs(x->V_t));
    vtt_max = std::max(vtt_max, std::abs(x->V_tt));
  }
  const double n1 = std::max(vt_max, vmax / span);
  const double n2 = std::max(vtt_max, vmax / (span * span));
  double r1 = 0.0, r2 = 0.0;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const double h0 = s[i]->t - s[i - 1]->t;
    const double h1 = s[i + 1]->t - s[i]->t;
    const double v0 = s[i - 1]->V, v1 = s[i]->V, v2 = s[i + 1]->V;
    const double d1 = (-h1 / (h0 * (h0 + h1))) * v0 + ((h1 - h0) / (h0 * h1)) * v1 + (h0 / (h1 * (h0 + h1))) * v2;
    const double d2 = 2.0 * (v0 / (h0 * (h0 + h1)) - v1 / (h0 * h1) + v2 / (h1 * (h0 + h1)));
    r1 = std::max(r1, std::abs(d1 - s[i]->V_t) / n1);
    r2 = std::max(r2, std::abs(d2 - s[i]->V_tt) / n2);
  }
  return {r1, r2};
}

}  // namespace inls
