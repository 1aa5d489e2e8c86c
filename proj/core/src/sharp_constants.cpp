#include "inls/sharp_constants.hpp"

#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "inls/error.hpp"
#include "inls/functionals.hpp"

namespace inls {

double gn_constant_from_Q(const GroundState& gs) {
  const ProblemParams& q = gs.params;
  const double K = q.K;
  return std::pow(2.0 * (q.p + 1.0) / K, K / 4.0) * std::pow(gs.pot, 1.0 - K / 4.0) /
         std::pow(std::sqrt(gs.mass), q.p + 1.0 - K / 2.0);
}

double gn_ratio(const ProblemParams& q, double mass, double grad_sq, double pot) {
  const double K = q.K;
  return pot / (std::pow(grad_sq, K / 4.0) * std::pow(mass, (q.p + 1.0) / 2.0 - K / 4.0));
}

double gn_ratio(const GroundState& gs) { return gn_ratio(gs.params, gs.mass, gs.grad_sq, gs.pot); }

double C_Q_energy_form(const GroundState& gs) {
  const ProblemParams& q = gs.params;
  const double K = q.K, A = q.A_const;
  return (4.0 * A / K) * std::pow((q.p + 1.0) / (2.0 * A), 4.0 / K) * std::pow(16.0 * gs.energy, 4.0 / K - 1.0) /
         std::pow(gs.mass, q.kappa);
}

double D_integral(const ProblemParams& q) {
  if (!(q.b < q.N)) throw validation_error("InvalidInhomogeneity", "D integral needs b < N");
  const double a = 2.0 * q.b / (q.p - 1.0) + q.N - 1.0;
  const double c = (q.p + 1.0) / (q.p - 1.0);
  boost::math::quadrature::tanh_sinh<double> ts;
  auto f = [&](double rho) { return std::pow(rho, a) * std::pow((1.0 - rho) * (1.0 + rho), c); };
  const double I = ts.integrate(f, 0.0, 1.0);
  return std::pow(surface_area(q.N) * I, (q.p - 1.0) / (q.p + 1.0));
}

double interp_constant(const ProblemParams& q) {
  const double K = q.K, p1 = q.p + 1.0;
  const double L = K + 2.0 * p1;
  return std::sqrt(L / (2.0 * K)) * std::pow(K / p1 * D_integral(q), p1 / L) * std::pow(2.0, K / (2.0 * K + 4.0 * p1));
}

double interp_ratio(const FieldState& u) {
  const ProblemParams& q = u.params;
  const Quantities s = quantities(u);
  const double L = q.K + 2.0 * (q.p + 1.0);
  return s.mass / std::pow(std::pow(s.variance, q.K / 4.0) * s.pot, 4.0 / L);
}

double interp_defect(const FieldState& u) {
  const double C = interp_constant(u.params);
  return 1.0 - interp_ratio(u) / (C * C);
}

namespace {

FieldState extremizer_field(const ProblemParams& q, double beta, double alpha, int M) {
  auto g = make_grid(q.N, M, 1.0 / alpha);
  std::vector<cplx> v(M);
  for (int i = 0; i < M; ++i) {
    const double x = alpha * g->r[i];
    v[i] = beta * std::pow(x, q.b / (q.p - 1.0)) * std::pow(1.0 - x * x, 1.0 / (q.p - 1.0));
  }
  return make_field(q, g, std::move(v));
}

}  // namespace

double interp_extremizer_check(const ProblemParams& q, double beta, double alpha_scale, int M) {
  if (!(beta > 0.0) || !(alpha_scale > 0.0)) {
    throw validation_error("DomainViolation", "extremizer needs beta > 0 and alpha_scale > 0");
  }
  return interp_defect(extremizer_field(q, beta, alpha_scale, M));
}

double interp_constant_empirical(const ProblemParams& q, int M) {
  return std::sqrt(interp_ratio(extremizer_field(q, 1.0, 1.0, M)));
}

double lush2_constant(const ProblemParams& q, double C) {
  return std::pow(2.0 * (q.p + 1.0) / (q.s_c * (q.p - 1.0)) * std::pow(C, q.K / 2.0 + q.p + 1.0), 2.0 / q.K);
}

double lush2_constant_expanded(const ProblemParams& q, double C) {
  return std::pow(2.0 * (q.p + 1.0) / (q.s_c * (q.p - 1.0)), 2.0 / q.K) * std::pow(C, 1.0 + 2.0 * (q.p + 1.0) / q.K);
}

ConstantsBundle compute_constants(const GroundState& gs) {
  const ProblemParams& q = gs.params;
  ConstantsBundle c;
  c.C_pN_gn = gn_constant_from_Q(gs);
  c.C_Q = std::pow(c.C_pN_gn, 4.0 / q.K);
  c.C_Q_energy = C_Q_energy_form(gs);
  c.D_pN = D_integral(q);
  c.C_pN_interp = interp_constant(q);
  c.C_pN_interp_empirical = interp_constant_empirical(q);
  c.C_lush2 = lush2_constant(q, c.C_pN_interp);
  return c;
}

}  // namespace inls
