#include "inls/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/special_functions/bessel.hpp>

#include "banded.hpp"
#include "inls/error.hpp"

namespace inls {

namespace {

enum class Shot { CrossedZero, TurnedUp, ReachedEnd };

struct Trajectory {
  Shot outcome = Shot::ReachedEnd;
  std::vector<double> Q;  // values at nodes 0..n-1 before the event
  std::vector<double> P;  // Q' at the same nodes
};

class Shooter {
 public:
  Shooter(const ProblemParams& prm, const RadialGrid& g) : prm_(prm), g_(g) {}

  Trajectory run(double Q0) const {
    Trajectory t;
    t.Q.reserve(g_.M);
    t.P.reserve(g_.M);

    // Frobenius-type series around the origin; the r^{2-b} term captures the
    // singular forcing.
    const double N = prm_.N, b = prm_.b, p = prm_.p;
    const double qp = std::pow(Q0, p), qp1 = std::pow(Q0, p - 1.0);
    const double a = -qp / ((2.0 - b) * (N - b));
    const double c = Q0 / (2.0 * N);
    const double d = -p * qp1 * a / ((4.0 - 2.0 * b) * (N + 2.0 - 2.0 * b));
    const double e = (a - p * qp1 * c) / ((4.0 - b) * (N + 2.0 - b));
    const double r0 = g_.r[0];
    double Q = Q0 + a * std::pow(r0, 2.0 - b) + c * r0 * r0 + d * std::pow(r0, 4.0 - 2.0 * b) +
               e * std::pow(r0, 4.0 - b);
    double P = (2.0 - b) * a * std::pow(r0, 1.0 - b) + 2.0 * c * r0 +
               (4.0 - 2.0 * b) * d * std::pow(r0, 3.0 - 2.0 * b) + (4.0 - b) * e * std::pow(r0, 3.0 - b);

    const double cap = 10.0 * Q0;
    for (int j = 0; j < g_.M; ++j) {
      if (Q < 0.0) {
        t.outcome = Shot::CrossedZero;
        return t;
      }
      if (P > 0.0 || Q > cap) {
        t.outcome = Shot::TurnedUp;
        return t;
      }
      t.Q.push_back(Q);
      t.P.push_back(P);
      if (j + 1 == g_.M) break;
      const int sub = std::max(1, static_cast<int>(std::ceil(64.0 / (j + 1))));
      const double dr = g_.h / sub;
      double r = g_.r[j];
      for (int s = 0; s < sub; ++s) {
        rk4(r, dr, Q, P);
        r += dr;
      }
    }
    t.outcome = Shot::ReachedEnd;
    return t;
  }

  double rhs(double r, double Q, double P) const {
    const double aq = std::abs(Q);
    return -(prm_.N - 1.0) / r * P + Q - std::pow(r, -prm_.b) * std::pow(aq, prm_.p - 1.0) * Q;
  }

 private:
  void rk4(double r, double dr, double& Q, double& P) const {
    const double k1q = P, k1p = rhs(r, Q, P);
    const double k2q = P + 0.5 * dr * k1p, k2p = rhs(r + 0.5 * dr, Q + 0.5 * dr * k1q, P + 0.5 * dr * k1p);
    const double k3q = P + 0.5 * dr * k2p, k3p = rhs(r + 0.5 * dr, Q + 0.5 * dr * k2q, P + 0.5 * dr * k2p);
    const double k4q = P + dr * k3p, k4p = rhs(r + dr, Q + dr * k3q, P + dr * k3p);
    Q += dr / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    P += dr / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
  }

  const ProblemParams& prm_;
  const RadialGrid& g_;
};

bool too_small(Shot s) { return s == Shot::TurnedUp || s == Shot::ReachedEnd; }

// Decaying solution of the linearised equation Q'' + (N-1)/r Q' = Q.
double tail_shape(int N, double r) {
  const double nu = std::abs(0.5 * N - 1.0);
  return std::pow(r, 1.0 - 0.5 * N) * boost::math::cyl_bessel_k(nu, r);
}

}  // namespace

GroundState with_profile(const GroundState& gs, std::vector<double> profile) {
  GroundState out = gs;
  const RadialGrid& g = *gs.grid;
  if (profile.size() != g.size()) throw validation_error("LengthMismatch", "profile size differs from grid size");
  out.profile = std::move(profile);
  const auto pw = singular_weights(g, gs.params.b);
  double m = 0.0, pot = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double q = std::abs(out.profile[i]);
    m += g.weight[i] * q * q;
    pot += pw[i] * std::pow(q, gs.params.p + 1.0);
  }
  out.mass = m;
  out.pot = pot;
  out.grad_sq = gradient_norm_sq(g, std::span<const double>(out.profile));
  out.energy = 0.5 * out.grad_sq - pot / (gs.params.p + 1.0);
  return out;
}

GroundState solve_ground_state(const ProblemParams& params, GridPtr grid, double tol, const ShootingOptions& opt) {
  if (!grid) throw validation_error("NullGrid", "ground state requires a grid");
  if (grid->N != params.N) throw validation_error("DimensionMismatch", "grid dimension differs from params.N");
  if (params.s_c >= 1.0) {
    throw solver_error("OutOfRegime", "ground state requires s_c < 1 (got s_c = " + std::to_string(params.s_c) + ")");
  }
  const RadialGrid& g = *grid;
  const Shooter shoot(params, g);

  // Geometric scan for the first too-small -> too-large transition.
  double lo = 0.0, hi = 0.0;
  {
    const double ratio = std::pow(opt.q0_max / opt.q0_min, 1.0 / (opt.scan_points - 1));
    double prev = opt.q0_min;
    bool prev_small = too_small(shoot.run(prev).outcome);
    bool found = false;
    for (int k = 1; k < opt.scan_points && !found; ++k) {
      const double q = opt.q0_min * std::pow(ratio, k);
      const bool small = too_small(shoot.run(q).outcome);
      if (prev_small && !small) {
        lo = prev;
        hi = q;
        found = true;
      }
      prev = q;
      prev_small = small;
    }
    if (!found) {
      throw solver_error("NoBracket", "no shooting transition for Q0 in [" + std::to_string(opt.q0_min) + ", " +
                                          std::to_string(opt.q0_max) + "]");
    }
  }

  Trajectory tlo = shoot.run(lo), thi = shoot.run(hi);
  for (int it = 0; it < opt.max_bisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    Trajectory t = shoot.run(mid);
    if (too_small(t.outcome)) {
      lo = mid;
      tlo = std::move(t);
    } else {
      hi = mid;
      thi = std::move(t);
    }
  }
  const double Q0 = 0.5 * (lo + hi);

  // Trust the two bracketing trajectories while they agree.
  const std::size_t common = std::min(tlo.Q.size(), thi.Q.size());
  if (common < 8) throw solver_error("NoConvergence", "bracketing trajectories diverge immediately");
  std::size_t match = common - 1;
  for (std::size_t j = 0; j < common; ++j) {
    const double ql = tlo.Q[j], qh = thi.Q[j];
    if (std::abs(qh - ql) > 1e-6 * std::abs(ql)) {
      match = j == 0 ? 0 : j - 1;
      break;
    }
  }
  const double Qm = 0.5 * (tlo.Q[match] + thi.Q[match]);
  if (!(Qm <= 1e-3 * Q0)) {
    throw solver_error("NoConvergence", "shooting did not resolve the decay (Q(match)/Q0 = " +
                                            std::to_string(Qm / Q0) + "); increase R_max or resolution");
  }

  std::vector<double> profile(g.M);
  std::vector<double> slope(match + 1);
  for (std::size_t j = 0; j <= match; ++j) {
    profile[j] = 0.5 * (tlo.Q[j] + thi.Q[j]);
    slope[j] = 0.5 * (tlo.P[j] + thi.P[j]);
  }
  const double rm = g.r[match];
  const double Tm = tail_shape(params.N, rm);
  for (std::size_t j = match + 1; j < static_cast<std::size_t>(g.M); ++j) {
    profile[j] = Qm * tail_shape(params.N, g.r[j]) / Tm;
  }

  // ODE residual from a fourth-order difference of the stored Q' away from the origin layer.
  double res = 0.0;
  const double scale = std::max(Q0, std::pow(Q0, params.p));
  const std::size_t j0 = std::max<std::size_t>(20, static_cast<std::size_t>(std::ceil(0.5 / g.h)));
  for (std::size_t j = j0; j + 2 <= match; ++j) {
    const double dP = (slope[j - 2] - 8.0 * slope[j - 1] + 8.0 * slope[j + 1] - slope[j + 2]) / (12.0 * g.h);
    const double r = g.r[j];
    const double q = profile[j];
    const double v = dP + (params.N - 1.0) / r * slope[j] - q + std::pow(r, -params.b) * std::pow(q, params.p);
    res = std::max(res, std::abs(v) / scale);
  }

  GroundState gs;
  gs.params = params;
  gs.grid = grid;
  gs.Q0 = Q0;
  gs.match_radius = rm;
  gs.residual = res;
  gs = with_profile(gs, std::move(profile));
  if (!(res < tol) || !std::isfinite(gs.pot)) {
    std::ostringstream os;
    os << "ODE residual " << res << " exceeds tol " << tol << "; refine the grid or relax solver.tol";
    throw solver_error("NoConvergence", os.str());
  }
  return opt.polish ? polish_discrete(gs) : gs;
}

GroundState polish_discrete(const GroundState& gs, int max_iter, double tol) {
  const RadialGrid& g = *gs.grid;
  const double p = gs.params.p;
  const auto K = stiffness(g);
  const auto pw = singular_weights(g, gs.params.b);
  std::vector<double> Q = gs.profile;
  const int M = g.M;
  const double qmax = *std::max_element(Q.begin(), Q.end());

  // Quadratic convergence: stop once the Newton update reaches round-off.
  bool converged = false;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter && !converged; ++it) {
    std::vector<cplx> qc(Q.begin(), Q.end());
    const auto KQ = apply_stiffness(K, qc);
    std::vector<double> F(M);
    for (int i = 0; i < M; ++i) {
      F[i] = KQ[i].real() + g.weight[i] * Q[i] - pw[i] * std::pow(std::abs(Q[i]), p - 1.0) * Q[i];
    }
    std::array<std::vector<double>, 4> J = K.diag;
    for (int i = 0; i < M; ++i) J[0][i] += g.weight[i] - p * pw[i] * std::pow(std::abs(Q[i]), p - 1.0);
    detail::solve_banded_real(J, J, F);
    double step = 0.0;
    for (int i = 0; i < M; ++i) {
      Q[i] -= F[i];
      step = std::max(step, std::abs(F[i]));
    }
    converged = step <= tol * qmax || (step > 0.25 * prev && step <= 1e3 * tol * qmax);
    prev = step;
  }
  if (!converged) throw solver_error("NoConvergence", "discrete ground-state Newton iteration stalled");
  for (double q : Q) {
    if (!(q > 0.0)) throw solver_error("NoConvergence", "discrete ground state lost positivity");
  }
  return with_profile(gs, std::move(Q));
}

std::pair<double, double> pohozaev_residuals(const GroundState& gs) {
  const ProblemParams& q = gs.params;
  if (!(gs.pot > 0.0) || !(gs.grad_sq > 0.0)) {
    throw solver_error("DegenerateProfile", "Pohozaev residuals undefined for a zero profile");
  }
  const double c1 = q.K / (2.0 * (q.p + 1.0));
  const double res1 = (gs.grad_sq - c1 * gs.pot) / gs.grad_sq;
  const double c2 = (q.p - 1.0) * q.s_c / (2.0 * (q.p + 1.0));
  // When s_c ~ 0 the predicted energy vanishes; fall back to the scale of the two energy terms.
  const double scale = std::max(std::abs(c2 * gs.pot), 1e-3 * (0.5 * gs.grad_sq + gs.pot / (q.p + 1.0)));
  const double res2 = (gs.energy - c2 * gs.pot) / scale;
  return {res1, res2};
}

}  // namespace inls
