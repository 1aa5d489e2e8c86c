#pragma once

#include <string_view>

namespace inls {

enum class Regime { MassSubcritical, MassCritical, Intercritical, EnergyCriticalOrWorse };

std::string_view to_string(Regime r);

// Problem parameters (N, p, b) and every exponent derived from them.
// K denotes N(p-1)+2b throughout the library.
struct ProblemParams {
  int N = 3;
  double p = 3.0;
  double b = 0.5;

  double K = 0.0;
  double s_c = 0.0;
  double p_star = 0.0;  // +inf when N <= 2
  double kappa = 0.0;
  double A_const = 0.0;
  double k_exp = 0.0;
  double alpha_sub = 0.0;
  double gamma_exp = 0.0;
  double delta_exp = 0.0;
  double omega = 0.0;
  // Effective dimension in the reduced particle model; equals N*s_c when b = 0.
  double n_eff = 0.0;

  Regime regime = Regime::Intercritical;
  bool out_of_theory = false;

  // (1 - s_c) / s_c, the mass exponent in the scale-invariant ratios.
  double sigma() const { return (1.0 - s_c) / s_c; }
};

// Validates (N, p, b) and fills the derived fields. Throws a validation
// Error naming the violated constraint.
ProblemParams make_params(int N, double p, double b);

}  // namespace inls
