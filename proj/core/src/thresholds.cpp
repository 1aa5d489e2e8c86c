#include "inls/thresholds.hpp"

#include <cmath>
#include <limits>

#include "inls/error.hpp"

namespace inls {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::BlowUpThm12: return "BlowUpThm12";
    case Verdict::BoundedThm12: return "BoundedThm12";
    case Verdict::BlowUpNegEnergy: return "BlowUpNegEnergy";
    case Verdict::BlowUpLush1: return "BlowUpLush1";
    case Verdict::BlowUpLush2: return "BlowUpLush2";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Ratios normalized_ratios(const ProblemParams& prm, const Quantities& q, const GroundState& gs) {
  const double w = std::pow(q.mass / gs.mass, prm.sigma());
  return Ratios{w * q.energy / gs.energy, w * q.pot / gs.pot, w * q.grad_sq / gs.grad_sq};
}

Ratios normalized_ratios(const FieldState& u, const GroundState& gs) {
  return normalized_ratios(u.params, quantities(u), gs);
}

ImplicationCheck mp_mk_implication_check(const Ratios& r, double slack) {
  ImplicationCheck c;
  if (r.mk < 1.0 - slack) c.mk_implies_mp = r.mp < 1.0 + slack;
  if (r.me <= 1.0 + slack && r.mp < 1.0 - slack) c.mp_implies_mk = r.mk < 1.0 + slack;
  return c;
}

ImplicationCheck mp_mk_implication_check(const FieldState& u, const GroundState& gs, double slack) {
  return mp_mk_implication_check(normalized_ratios(u, gs), slack);
}

double alpha_m(const ProblemParams& prm, const GroundState& gs, double M0, double E0) {
  if (!(M0 > 0.0)) throw validation_error("DomainViolation", "alpha_m needs M0 > 0");
  return 16.0 * (E0 - gs.energy * std::pow(gs.mass / M0, prm.sigma()));
}

double phi_of_alpha(const ProblemParams& prm, const GroundState& gs, double M0, double E0, double alpha) {
  if (alpha > 16.0 * E0) throw validation_error("DomainViolation", "phi(alpha) needs alpha <= 16 E0");
  const double K = prm.K, A = prm.A_const;
  const double CQ = C_Q_energy_form(gs);
  const double base = (prm.p + 1.0) * (16.0 * E0 - alpha) / (2.0 * A);
  return (4.0 * K * E0 - alpha) / A - std::pow(base, 4.0 / K) / (CQ * std::pow(M0, prm.kappa));
}

double g_function(double x, double k) {
  if (!(x > 0.0)) return std::numeric_limits<double>::infinity();
  const double v = 1.0 / (k * std::pow(x, k)) + x - (1.0 + 1.0 / k);
  const double root = std::sqrt(std::max(v, 0.0));
  return x <= 1.0 ? root : -root;
}

double lush1_margin(const ProblemParams& prm, const Quantities& q, const VirialSnapshot& v) {
  if (!(q.energy > 0.0)) throw solver_error("NonpositiveEnergy", "lush1 criterion needs E > 0");
  const double n = prm.n_eff;
  const double x = 4.0 * q.energy * v.V / (n * q.mass * q.mass);
  return std::sqrt(8.0 * n) * g_function(x, prm.k_exp) - v.V_t / q.mass;
}

double lush1_criterion(const FieldState& u) {
  const Quantities q = quantities(u);
  return lush1_margin(u.params, q, virial_snapshot(u.params, q));
}

double lush2_margin(const ProblemParams& prm, const Quantities& q, const VirialSnapshot& v, double C) {
  if (!(q.energy > 0.0)) throw solver_error("NonpositiveEnergy", "lush2 criterion needs E > 0");
  const double K = prm.K, p1 = prm.p + 1.0;
  const double E = q.energy, M = q.mass;
  const double coef = 4.0 * std::sqrt(2.0) * std::pow(E, (prm.p - 1.0) * prm.s_c / K) * std::pow(M, p1 / K - 0.5) / C;
  const double theta = C * C * std::pow(E, 4.0 / K) * v.V / std::pow(M, 1.0 + 2.0 * p1 / K);
  return coef * g_function(theta, prm.k_exp) - v.V_t / M;
}

double lush2_criterion(const FieldState& u, const ConstantsBundle& consts) {
  const Quantities q = quantities(u);
  return lush2_margin(u.params, q, virial_snapshot(u.params, q), consts.C_lush2);
}

double potential_rate(const FieldState& u) {
  const RadialGrid& g = *u.grid;
  const auto pw = singular_weights(g, u.params.b);
  const auto Ku = apply_stiffness(stiffness(g), u.values);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx lap = -Ku[i] / g.weight[i];
    const double a = std::abs(u.values[i]);
    acc += pw[i] * std::pow(a, u.params.p - 1.0) * (std::conj(u.values[i]) * lap).imag();
  }
  return -(u.params.p + 1.0) * acc;
}

namespace {

int sign_with_tol(double x, double tol) {
  if (x > tol) return 1;
  if (x < -tol) return -1;
  return 0;
}

// Evaluates the two dichotomy branches. At mp = 1 the strict inequality cannot
// be decided at t = 0; the branch is then decided at t = 0+ from the sign of
// dP/dt and from the time derivatives of the cond1 quantity
// F = c (E - z_t^2 / 8).
void dichotomy(const FieldState& u, const Quantities& q, const VirialSnapshot& v, CriterionReport& rep,
               const ThresholdOptions& opt) {
  const ProblemParams& prm = u.params;
  const double E = q.energy;
  const double vt_scale = std::sqrt(32.0 * E * v.V);
  const double inv_time = std::sqrt(q.grad_sq / q.mass);
  int vt = sign_with_tol(v.V_t / vt_scale, opt.slack);
  const bool cond1_now = rep.cond1_lhs <= 1.0 + opt.slack;
  const int mp = sign_with_tol(rep.ratios.mp - 1.0, opt.eta);

  if (mp != 0) {
    if (!cond1_now) return;
    if (mp > 0 && vt <= 0) rep.fired.push_back(Verdict::BlowUpThm12);
    if (mp < 0 && vt >= 0) rep.fired.push_back(Verdict::BoundedThm12);
    return;
  }

  const int dp = sign_with_tol(rep.dpot_dt / (q.pot * inv_time), opt.slack);
  if (dp == 0) return;

  bool cond1_later = rep.cond1_lhs < 1.0 - opt.slack;
  if (!cond1_later && cond1_now) {
    const double z_tt = (v.V_tt - 2.0 * v.z_t * v.z_t) / (2.0 * v.z);
    const double tol = opt.slack * E * inv_time;
    const int f1 = sign_with_tol(-v.z_t * z_tt, tol);
    if (f1 != 0) {
      cond1_later = f1 < 0;
    } else {
      const double V_ttt = -(2.0 * prm.A_const / (prm.p + 1.0)) * rep.dpot_dt;
      const double z_ttt = (V_ttt - 6.0 * v.z_t * z_tt) / (2.0 * v.z);
      cond1_later = sign_with_tol(-v.z_t * z_ttt, tol * inv_time) < 0;
    }
  }
  if (!cond1_later) return;
  if (vt == 0) vt = sign_with_tol(v.V_tt / (vt_scale * inv_time), opt.slack);
  if (dp > 0 && vt <= 0) rep.fired.push_back(Verdict::BlowUpThm12);
  if (dp < 0 && vt >= 0) rep.fired.push_back(Verdict::BoundedThm12);
  rep.boundary_resolved = !rep.fired.empty();
}

CriterionReport evaluate(const FieldState& u, const GroundState& gs, const ConstantsBundle* consts,
                         const ThresholdOptions& opt) {
  const ProblemParams& prm = u.params;
  const Quantities q = quantities(u);
  const VirialSnapshot v = virial_snapshot(prm, q);

  CriterionReport rep;
  rep.ratios = normalized_ratios(prm, q, gs);
  rep.vt0 = v.V_t;
  rep.v0 = v.V;
  rep.e0 = q.energy;
  rep.m0 = q.mass;
  rep.alpha_m = alpha_m(prm, gs, q.mass, q.energy);
  rep.dpot_dt = potential_rate(u);
  rep.dimension_flag = prm.N < 2;
  rep.cond1_lhs = rep.ratios.me * (1.0 - v.V_t * v.V_t / (32.0 * q.energy * v.V));

  const double e_scale = 0.5 * q.grad_sq + q.pot / (prm.p + 1.0);
  if (q.energy < -opt.eta * e_scale) {
    rep.fired.push_back(Verdict::BlowUpNegEnergy);
    rep.lush1_margin = rep.lush2_margin = std::numeric_limits<double>::quiet_NaN();
  } else if (q.energy > opt.eta * e_scale) {
    dichotomy(u, q, v, rep, opt);
    if (consts) {
      const double x = 4.0 * q.energy * v.V / (prm.n_eff * q.mass * q.mass);
      rep.lush1_arg_at_zero = !(x > 0.0);
      rep.lush1_margin = lush1_margin(prm, q, v);
      rep.lush2_margin = lush2_margin(prm, q, v, consts->C_lush2);
      if (rep.lush1_margin > opt.eta) rep.fired.push_back(Verdict::BlowUpLush1);
      if (rep.lush2_margin > opt.eta) rep.fired.push_back(Verdict::BlowUpLush2);
    }
  }
  if (!rep.fired.empty()) rep.verdict = rep.fired.front();
  return rep;
}

}  // namespace

CriterionReport classify(const FieldState& u, const GroundState& gs, const ConstantsBundle& consts,
                         const ThresholdOptions& opt) {
  return evaluate(u, gs, &consts, opt);
}

CriterionReport classify_theorem12(const FieldState& u, const GroundState& gs, const ThresholdOptions& opt) {
  return evaluate(u, gs, nullptr, opt);
}

}  // namespace inls
