#include "inls/virial_ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "inls/error.hpp"

namespace inls {

WellSpec make_well(double gamma_exp, double omega) {
  WellSpec w;
  w.gamma_exp = gamma_exp;
  w.delta_exp = 2.0 * gamma_exp - 1.0;
  w.omega = omega;
  w.U_max = 1.0 / (w.delta_exp + 1.0) - 1.0 / (w.gamma_exp + 1.0);
  return w;
}

WellSpec make_well(const ProblemParams& prm) { return make_well(prm.gamma_exp, prm.omega); }

double potential_U(const WellSpec& w, double Phi) {
  if (!(Phi > 0.0)) throw validation_error("DomainViolation", "U(Phi) needs Phi > 0");
  return std::pow(Phi, w.delta_exp + 1.0) / (w.delta_exp + 1.0) - std::pow(Phi, w.gamma_exp + 1.0) / (w.gamma_exp + 1.0);
}

double particle_energy(const WellSpec& w, const ParticleState& st) {
  return 0.5 * w.omega * st.Phi_s * st.Phi_s + potential_U(w, st.Phi);
}

std::string_view to_string(WellCondition c) {
  switch (c) {
    case WellCondition::A: return "A";
    case WellCondition::B: return "B";
    case WellCondition::C: return "C";
    case WellCondition::None: return "None";
  }
  return "None";
}

std::string_view to_string(ParticleOutcome o) { return o == ParticleOutcome::HitZero ? "HitZero" : "Survived"; }

WellCondition classify_ABC(const WellSpec& w, const ParticleState& st, double eta) {
  const double E = particle_energy(w, st);
  const double tol = eta * std::max(std::abs(w.U_max), 1e-300);
  if (std::abs(E - w.U_max) <= tol) {
    return (st.Phi_s < 0.0 && st.Phi < 1.0) ? WellCondition::C : WellCondition::None;
  }
  if (E < w.U_max && st.Phi < 1.0) return WellCondition::A;
  if (E > w.U_max && st.Phi_s < 0.0) return WellCondition::B;
  return WellCondition::None;
}

namespace {

using Vec = std::array<double, 2>;

Vec field(const WellSpec& w, const Vec& y) {
  const double phi = std::max(y[0], 1e-300);
  return {y[1], (std::pow(phi, w.gamma_exp) - std::pow(phi, w.delta_exp)) / w.omega};
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

struct StepResult {
  Vec y;
  double err;
  bool valid;
};

StepResult dp_step(const WellSpec& w, const Vec& y, double h, const ParticleOptions& opt) {
  auto add = [](const Vec& a, double s, std::initializer_list<std::pair<double, Vec>> terms) {
    Vec r = a;
    for (const auto& [c, k] : terms) {
      r[0] += s * c * k[0];
      r[1] += s * c * k[1];
    }
    return r;
  };
  auto stage = [&](const Vec& z, bool& ok) {
    if (!(z[0] > 0.0)) ok = false;
    return field(w, z);
  };
  bool ok = true;
  const Vec k1 = stage(y, ok);
  const Vec k2 = stage(add(y, h, {{a21, k1}}), ok);
  const Vec k3 = stage(add(y, h, {{a31, k1}, {a32, k2}}), ok);
  const Vec k4 = stage(add(y, h, {{a41, k1}, {a42, k2}, {a43, k3}}), ok);
  const Vec k5 = stage(add(y, h, {{a51, k1}, {a52, k2}, {a53, k3}, {a54, k4}}), ok);
  const Vec k6 = stage(add(y, h, {{a61, k1}, {a62, k2}, {a63, k3}, {a64, k4}, {a65, k5}}), ok);
  const Vec y5 = add(y, h, {{b1, k1}, {b3, k3}, {b4, k4}, {b5, k5}, {b6, k6}});
  const Vec k7 = stage(y5, ok);
  double err = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
    err = std::max(err, std::abs(ei) / sc);
  }
  return {y5, err, ok && std::isfinite(err)};
}

}  // namespace

ParticleRun integrate_particle(const WellSpec& w, const ParticleState& st0, double horizon, double dt0,
                               const ParticleOptions& opt) {
  if (!(horizon > 0.0)) throw validation_error("DomainViolation", "horizon must be positive");
  if (!(dt0 > 0.0)) throw validation_error("DomainViolation", "dt0 must be positive");
  if (!(st0.Phi > 0.0)) throw validation_error("DomainViolation", "initial Phi must be positive");

  ParticleRun run;
  const double E0 = particle_energy(w, st0);
  auto record = [&](const ParticleState& st) {
    const double kin = 0.5 * w.omega * st.Phi_s * st.Phi_s;
    const double e = kin + potential_U(w, st.Phi);
    // Relative to the largest term so that escaping orbits are judged at floating-point level.
    const double scale = std::max({std::abs(E0), kin, std::pow(st.Phi, w.gamma_exp + 1.0) / (w.gamma_exp + 1.0),
                                   std::pow(st.Phi, w.delta_exp + 1.0) / (w.delta_exp + 1.0)});
    run.max_energy_drift = std::max(run.max_energy_drift, std::abs(e - E0) / scale);
    if (opt.keep_trajectory) {
      run.trajectory.push_back(st);
      run.energy.push_back(e);
    }
  };

  Vec y{st0.Phi, st0.Phi_s};
  double s = st0.s;
  const double s_end = st0.s + horizon;
  double h = std::min(dt0, horizon);
  bool hit = false;
  record(st0);

  while (s < s_end && !hit) {
    if (run.steps >= opt.max_steps) throw solver_error("StepUnderflow", "particle integration exceeded max_steps");
    h = std::min(h, s_end - s);
    const StepResult r = dp_step(w, y, h, opt);
    const bool overshoot = !r.valid || r.y[0] < opt.phi_floor;
    if (overshoot || r.err > 1.0) {
      h *= overshoot ? 0.5 : std::clamp(0.9 * std::pow(r.err, -0.2), 0.1, 0.5);
      if (h < opt.min_step) {
        // Crossing lies within a vanishing step: the particle is at the wall.
        if (overshoot && y[1] < 0.0) {
          hit = true;
          break;
        }
        throw solver_error("StepUnderflow", "adaptive step collapsed at s = " + std::to_string(s));
      }
      continue;
    }
    y = r.y;
    s += h;
    ++run.steps;
    record(ParticleState{y[0], y[1], s});
    if (y[0] <= 2.0 * opt.phi_floor) hit = true;
    h *= std::clamp(0.9 * std::pow(std::max(r.err, 1e-10), -0.2), 0.2, 5.0);
  }

  if (hit) {
    run.outcome = ParticleOutcome::HitZero;
    run.s_star = y[1] < 0.0 ? s + y[0] / (-y[1]) : s;
  } else {
    run.outcome = ParticleOutcome::Survived;
  }
  return run;
}

Rescaling rescaling(const ProblemParams& prm, double M0, double E0) {
  if (!(E0 > 0.0)) throw solver_error("NonpositiveEnergy", "rescaling needs E0 > 0");
  if (!(M0 > 0.0)) throw validation_error("DomainViolation", "rescaling needs M0 > 0");
  Rescaling r;
  r.alpha = prm.alpha_sub;
  const double n = prm.n_eff;
  r.mu = std::pow(n * M0 * M0 / (4.0 * E0), r.alpha + 1.0);
  r.lambda = 4.0 * std::sqrt(2.0) * E0 / (std::sqrt(n / 4.0) * M0);
  return r;
}

ParticleState rescale_V_to_Phi(const ProblemParams& prm, double M0, double E0, double V0, double Vt0) {
  const Rescaling r = rescaling(prm, M0, E0);
  if (!(V0 > 0.0)) throw validation_error("DomainViolation", "rescaling needs V0 > 0");
  ParticleState st;
  st.Phi = std::pow(V0, r.alpha + 1.0) / r.mu;
  st.Phi_s = (r.alpha + 1.0) * std::pow(V0, r.alpha) * Vt0 / (r.mu * r.lambda);
  st.s = 0.0;
  return st;
}

std::pair<double, double> rescale_Phi_to_V(const ProblemParams& prm, double M0, double E0, const ParticleState& st) {
  const Rescaling r = rescaling(prm, M0, E0);
  if (!(st.Phi > 0.0)) throw validation_error("DomainViolation", "inverse rescaling needs Phi > 0");
  const double V0 = std::pow(r.mu * st.Phi, 1.0 / (r.alpha + 1.0));
  const double Vt0 = st.Phi_s * r.mu * r.lambda / ((r.alpha + 1.0) * std::pow(V0, r.alpha));
  return {V0, Vt0};
}

}  // namespace inls
