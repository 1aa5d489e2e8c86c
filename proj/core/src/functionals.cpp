#include "inls/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "inls/error.hpp"
#include "inls/sharp_constants.hpp"

namespace inls {

Quantities quantities(const FieldState& u) {
  const RadialGrid& g = *u.grid;
  const ProblemParams& prm = u.params;
  if (u.values.size() != g.size()) throw validation_error("LengthMismatch", "field size differs from grid size");
  const auto pw = singular_weights(g, prm.b);
  const auto du = nodal_derivative(g, u.values);
  Quantities q;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double a2 = std::norm(u.values[i]);
    const double r = g.r[i];
    q.mass += g.weight[i] * a2;
    q.pot += pw[i] * std::pow(a2, 0.5 * (prm.p + 1.0));
    q.variance += g.weight[i] * r * r * a2;
    q.momentum += g.weight[i] * r * (du[i] * std::conj(u.values[i])).imag();
  }
  q.grad_sq = gradient_norm_sq(g, std::span<const cplx>(u.values));
  q.energy = 0.5 * q.grad_sq - q.pot / (prm.p + 1.0);
  return q;
}

double mass(const FieldState& u) {
  const RadialGrid& g = *u.grid;
  std::vector<double> f(u.values.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::norm(u.values[i]);
  return integrate_radial(g, f);
}

double grad_sq(const FieldState& u) { return gradient_norm_sq(*u.grid, std::span<const cplx>(u.values)); }

double potential(const FieldState& u) {
  const auto pw = singular_weights(*u.grid, u.params.b);
  double acc = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    acc += pw[i] * std::pow(std::norm(u.values[i]), 0.5 * (u.params.p + 1.0));
  }
  return acc;
}

double energy(const FieldState& u) { return 0.5 * grad_sq(u) - potential(u) / (u.params.p + 1.0); }

double variance(const FieldState& u) {
  const RadialGrid& g = *u.grid;
  std::vector<double> f(u.values.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = g.r[i] * g.r[i] * std::norm(u.values[i]);
  return integrate_radial(g, f);
}

double momentum(const FieldState& u) { return quantities(u).momentum; }

VirialSnapshot virial_snapshot(const ProblemParams& prm, const Quantities& q) {
  if (!(q.variance >= 1e-30)) throw solver_error("DegenerateVariance", "variance below 1e-30");
  VirialSnapshot s;
  s.V = q.variance;
  s.V_t = 4.0 * q.momentum;
  s.V_tt = 4.0 * prm.K * q.energy - 2.0 * (prm.K - 4.0) * q.grad_sq;
  s.z = std::sqrt(s.V);
  s.z_t = s.V_t / (2.0 * s.z);
  return s;
}

VirialSnapshot virial_snapshot(const FieldState& u) { return virial_snapshot(u.params, quantities(u)); }

double banica_gap(const ProblemParams& prm, const Quantities& q, double C_Q) {
  double bracket = q.grad_sq;
  if (q.mass > 0.0 && q.pot > 0.0) bracket -= std::pow(q.pot, 4.0 / prm.K) / (C_Q * std::pow(q.mass, prm.kappa));
  return q.variance * bracket - q.momentum * q.momentum;
}

double banica_gap(const FieldState& u, double C_Q) { return banica_gap(u.params, quantities(u), C_Q); }

double energy_gap_bound(const ProblemParams& prm, const GroundState& gs, double a, double A_bound) {
  const double s = prm.s_c;
  if (!(s > 0.0 && s < 1.0)) throw validation_error("OutOfRegime", "energy gap bound needs 0 < s_c < 1");
  const double top = std::pow(gs.pot, s) * std::pow(gs.mass, 1.0 - s);
  if (!(a > 0.0) || !(a < A_bound)) throw validation_error("EmptyInterval", "need 0 < a < A_bound");
  if (!(A_bound < top)) throw validation_error("EmptyInterval", "A_bound must stay below pot(Q)^s_c M(Q)^(1-s_c)");
  const double cq = gn_constant_from_Q(gs);
  const double CQ = std::pow(cq, 4.0 / prm.K);
  const double c = prm.K / (2.0 * (prm.p + 1.0));
  auto h = [&](double y) { return std::pow(y, 4.0 / prm.K) / CQ - c * y; };
  // h is concave on (0, inf), so its minimum on an interval sits at an endpoint.
  return std::min(h(std::pow(a, 1.0 / s)), h(std::pow(A_bound, 1.0 / s)));
}

}  // namespace inls
