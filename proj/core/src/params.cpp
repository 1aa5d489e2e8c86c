#include "inls/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "inls/error.hpp"

namespace inls {

namespace {
constexpr double kBoundaryFlag = 1e-6;
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::MassSubcritical: return "mass-subcritical";
    case Regime::MassCritical: return "mass-critical";
    case Regime::Intercritical: return "intercritical";
    case Regime::EnergyCriticalOrWorse: return "energy-critical-or-worse";
  }
  return "unknown";
}

ProblemParams make_params(int N, double p, double b) {
  if (N < 1) throw validation_error("InvalidDimension", "N must be >= 1");
  if (!std::isfinite(p) || !(p > 1.0)) {
    throw validation_error("InvalidExponent", "p must satisfy p > 1");
  }
  const double bmax = std::min(2.0, static_cast<double>(N));
  if (!std::isfinite(b) || !(b > 0.0) || !(b < bmax)) {
    std::ostringstream os;
    os << "b must satisfy 0 < b < " << bmax << " (min(2, N) with N = " << N << "), got " << b;
    throw validation_error("InvalidInhomogeneity", os.str());
  }

  ProblemParams q;
  q.N = N;
  q.p = p;
  q.b = b;
  const double n = N;
  q.K = n * (p - 1.0) + 2.0 * b;
  q.s_c = n / 2.0 - (2.0 - b) / (p - 1.0);
  q.p_star = N <= 2 ? std::numeric_limits<double>::infinity() : 1.0 + 2.0 * (2.0 - b) / (n - 2.0);
  q.kappa = 2.0 * (p + 1.0) / q.K - 1.0;
  q.A_const = 2.0 * (q.K - 4.0);
  q.k_exp = (p - 1.0) * q.s_c / 2.0;
  q.alpha_sub = (p - 1.0) * q.s_c / 4.0;
  q.gamma_exp = (q.K - 4.0) / (q.K + 4.0);
  q.delta_exp = 2.0 * q.gamma_exp - 1.0;
  q.omega = 64.0 / (q.K * (q.K + 4.0));
  q.n_eff = n * n * (p - 1.0) * q.s_c / q.K;

  if (std::abs(q.s_c) <= kBoundaryFlag) {
    q.regime = Regime::MassCritical;
  } else if (q.s_c < 0.0) {
    q.regime = Regime::MassSubcritical;
  } else if (q.s_c < 1.0) {
    q.regime = Regime::Intercritical;
  } else {
    q.regime = Regime::EnergyCriticalOrWorse;
  }
  q.out_of_theory = q.s_c <= kBoundaryFlag || q.s_c >= 1.0 - kBoundaryFlag;
  return q;
}

}  // namespace inls
