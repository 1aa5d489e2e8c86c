#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "inls/field.hpp"
#include "inls/functionals.hpp"
#include "inls/ground_state.hpp"
#include "inls/sharp_constants.hpp"

namespace inls {

enum class Verdict { BlowUpThm12, BoundedThm12, BlowUpNegEnergy, BlowUpLush1, BlowUpLush2, Inconclusive };

std::string_view to_string(Verdict v);

struct Ratios {
  double me = 0.0;
  double mp = 0.0;
  double mk = 0.0;
};

struct CriterionReport {
  Ratios ratios;
  double cond1_lhs = 0.0;
  double vt0 = 0.0;
  double v0 = 0.0;
  double e0 = 0.0;
  double m0 = 0.0;
  double alpha_m = 0.0;
  double dpot_dt = 0.0;  // d/dt int |x|^{-b}|u|^{p+1} at t = 0
  double lush1_margin = 0.0;
  double lush2_margin = 0.0;
  bool lush1_arg_at_zero = false;  // g evaluated at 0+: margin reported as +inf
  bool boundary_resolved = false;  // dichotomy branch decided from time derivatives at an equality
  bool dimension_flag = false;     // N = 1: dichotomy evaluated outside its stated range
  Verdict verdict = Verdict::Inconclusive;
  std::vector<Verdict> fired;
};

struct ThresholdOptions {
  double eta = 1e-8;     // margin for strict inequalities on normalised quantities
  double slack = 1e-5;   // quadrature slack for non-strict inequalities and zero tests of rates
};

Ratios normalized_ratios(const FieldState& u, const GroundState& gs);
Ratios normalized_ratios(const ProblemParams& params, const Quantities& q, const GroundState& gs);

struct ImplicationCheck {
  bool mk_implies_mp = true;   // mk < 1 => mp < 1
  bool mp_implies_mk = true;   // me <= 1 and mp < 1 => mk < 1
  bool holds() const { return mk_implies_mp && mp_implies_mk; }
};

ImplicationCheck mp_mk_implication_check(const FieldState& u, const GroundState& gs, double slack = 1e-9);
ImplicationCheck mp_mk_implication_check(const Ratios& r, double slack = 1e-9);

double alpha_m(const ProblemParams& params, const GroundState& gs, double M0, double E0);

// Throws DomainViolation for alpha > 16 E0.
double phi_of_alpha(const ProblemParams& params, const GroundState& gs, double M0, double E0, double alpha);

// g(x) = +-sqrt(1/(k x^k) + x - (1 + 1/k)); + for x <= 1, - for x >= 1.
// Returns +inf for x <= 0 (the x -> 0+ limit).
double g_function(double x, double k);

// Throws NonpositiveEnergy unless E[u] > 0.
double lush1_criterion(const FieldState& u);
double lush1_margin(const ProblemParams& params, const Quantities& q, const VirialSnapshot& v);
double lush2_criterion(const FieldState& u, const ConstantsBundle& consts);
double lush2_margin(const ProblemParams& params, const Quantities& q, const VirialSnapshot& v, double C_lush2);

// d/dt of the potential integral along the discrete flow at the given state.
double potential_rate(const FieldState& u);

CriterionReport classify(const FieldState& u, const GroundState& gs, const ConstantsBundle& consts,
                         const ThresholdOptions& opt = {});
CriterionReport classify_theorem12(const FieldState& u, const GroundState& gs, const ThresholdOptions& opt = {});

}  // namespace inls
