#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "inls/error.hpp"
#include "inls/evolution.hpp"
#include "inls/field.hpp"
#include "inls/functionals.hpp"
#include "inls/sharp_constants.hpp"
#include "inls/thresholds.hpp"
#include "inls/virial_ode.hpp"
#include "inls_cli/sampling.hpp"
#include "support.hpp"

using namespace inls;
using inls::test::ground_state;
using inls::test::rel;

namespace {

const GroundState& planar() { return ground_state(2, 3.0, 0.5); }

FieldState Q_field(const GroundState& gs) { return make_real_field(gs.params, gs.grid, gs.profile); }

}  // namespace

TEST(Thresholds, GroundStateRatiosAreOne) {
  const GroundState& gs = planar();
  const Ratios r = normalized_ratios(Q_field(gs), gs);
  EXPECT_NEAR(r.me, 1.0, 1e-12);
  EXPECT_NEAR(r.mp, 1.0, 1e-12);
  EXPECT_NEAR(r.mk, 1.0, 1e-12);
}

TEST(Thresholds, QuadraticPhaseRatios) {
  const GroundState& gs = planar();
  for (double g : {-0.1, 0.05, 0.2}) {
    const Ratios r = normalized_ratios(quad_phase(Q_field(gs), g), gs);
    EXPECT_NEAR(r.mp, 1.0, 1e-12);
    EXPECT_GT(r.mk, 1.0);
    EXPECT_GT(r.me, 1.0);
  }
}

TEST(Thresholds, HalfGroundStateRatios) {
  const GroundState& gs = planar();
  const auto& q = gs.params;
  const Ratios r = normalized_ratios(scaled(Q_field(gs), 0.5), gs);
  // Term by term: mass 1/4, pot 1/16, grad 1/4 of the ground state's.
  const double w = std::pow(0.25, q.sigma());
  EXPECT_LT(rel(r.mp, w / 16.0), 1e-12);
  EXPECT_LT(rel(r.mk, w / 4.0), 1e-12);
  EXPECT_LT(rel(r.me, w * (0.5 * 0.25 * gs.grad_sq - gs.pot / 64.0) / gs.energy), 1e-10);
}

TEST(Thresholds, RatiosAreScaleInvariant) {
  const GroundState& gs = planar();
  const auto& q = gs.params;
  std::mt19937_64 rng(31);
  const FieldState u = cli::random_field(q, gs.grid, rng);
  const Ratios r0 = normalized_ratios(u, gs);
  for (double lam : {0.5, 2.0}) {
    // u_l(x) = l^{(2-b)/(p-1)} u(l x) sampled on the grid dilated by 1/l.
    const GridPtr g = make_grid(q.N, gs.grid->M, gs.grid->R / lam);
    std::vector<cplx> v = u.values;
    for (cplx& z : v) z *= std::pow(lam, (2.0 - q.b) / (q.p - 1.0));
    const Ratios r = normalized_ratios(make_field(q, g, v), gs);
    EXPECT_LT(rel(r.mp, r0.mp), 1e-3);
    EXPECT_LT(rel(r.mk, r0.mk), 1e-3);
    EXPECT_LT(rel(r.me, r0.me), 1e-3);
  }
}

TEST(Thresholds, KineticBelowImpliesPotentialBelow) {
  const GroundState& gs = planar();
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> target(0.05, 0.999);
  for (int i = 0; i < 300; ++i) {
    const FieldState v = cli::random_field(gs.params, gs.grid, rng);
    // Scaling by l multiplies mk by l^{2 + 2 sigma}.
    const double mk = normalized_ratios(v, gs).mk;
    const double l = std::pow(target(rng) / mk, 1.0 / (2.0 + 2.0 * gs.params.sigma()));
    const Ratios r = normalized_ratios(scaled(v, l), gs);
    ASSERT_LT(r.mk, 1.0);
    ASSERT_LT(r.mp, 1.0);
    ASSERT_TRUE(mp_mk_implication_check(r).holds());
  }
}

TEST(Thresholds, ImplicationVacuousAtGroundState) {
  const GroundState& gs = planar();
  EXPECT_TRUE(mp_mk_implication_check(Q_field(gs), gs).holds());
  EXPECT_FALSE(mp_mk_implication_check(Ratios{0.5, 0.5, 1.2}).holds());
  EXPECT_FALSE(mp_mk_implication_check(Ratios{2.0, 1.5, 0.5}).holds());
}

TEST(Thresholds, AlphaMClosedForms) {
  const GroundState& gs = planar();
  EXPECT_NEAR(alpha_m(gs.params, gs, gs.mass, gs.energy), 0.0, 1e-13);
  EXPECT_NEAR(alpha_m(gs.params, gs, gs.mass, 2.0 * gs.energy), 16.0 * gs.energy, 1e-12);
}

TEST(Thresholds, AlphaMIsAFixedPoint) {
  const GroundState& gs = planar();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> m(0.3, 3.0), e(0.2, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double M0 = m(rng) * gs.mass, E0 = e(rng) * gs.energy;
    const double a = alpha_m(gs.params, gs, M0, E0);
    const double phi = phi_of_alpha(gs.params, gs, M0, E0, a);
    EXPECT_LE(std::abs(phi - a / 8.0), 1e-8 * std::max(std::abs(a / 8.0), 4.0 * gs.params.K * E0 / gs.params.A_const));
  }
}

TEST(Thresholds, PhiAtTheEndOfItsDomain) {
  const GroundState& gs = planar();
  const auto& q = gs.params;
  const double E0 = 1.3 * gs.energy;
  EXPECT_NEAR(phi_of_alpha(q, gs, gs.mass, E0, 16.0 * E0), (4.0 * q.K * E0 - 16.0 * E0) / q.A_const, 1e-14);
  EXPECT_THROW(phi_of_alpha(q, gs, gs.mass, E0, 16.0 * E0 * (1.0 + 1e-9)), Error);
}

TEST(Thresholds, PhiMinusLineIsVShapedAroundAlphaM) {
  const GroundState& gs = planar();
  const double M0 = gs.mass, E0 = 1.5 * gs.energy;
  const double a = alpha_m(gs.params, gs, M0, E0);
  const double span = 0.5 * (16.0 * E0 - a);
  auto F = [&](double x) { return std::abs(phi_of_alpha(gs.params, gs, M0, E0, x) - x / 8.0); };
  double prev = F(a - span);
  for (int i = 1; i <= 100; ++i) {
    const double cur = F(a - span + span * i / 100.0);
    ASSERT_LE(cur, prev);
    prev = cur;
  }
  for (int i = 1; i <= 100; ++i) {
    const double cur = F(a + span * i / 100.0);
    ASSERT_GE(cur, prev);
    prev = cur;
  }
}

TEST(Thresholds, AlphaMNonnegativeAboveThreshold) {
  const GroundState& gs = planar();
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const FieldState u = cli::random_field(gs.params, gs.grid, rng);
    const Quantities q = quantities(u);
    const Ratios r = normalized_ratios(gs.params, q, gs);
    if (r.me >= 1.0) {
      ASSERT_GE(alpha_m(gs.params, gs, q.mass, q.energy), 0.0);
    }
  }
}

TEST(Thresholds, GFunction) {
  EXPECT_EQ(g_function(1.0, 0.75), 0.0);
  EXPECT_NEAR(g_function(2.0, 1.0), -std::sqrt(0.5), 1e-15);
  EXPECT_GT(g_function(0.5, 0.75), 0.0);
  EXPECT_LT(g_function(1.5, 0.75), 0.0);
  EXPECT_LT(std::abs(g_function(1.0 - 1e-7, 0.75)), 1e-6);
  EXPECT_LT(std::abs(g_function(1.0 + 1e-7, 0.75)), 1e-6);
  EXPECT_TRUE(std::isinf(g_function(0.0, 0.75)));
}

TEST(Thresholds, DichotomyOnQuadraticPhaseData) {
  const GroundState& gs = planar();
  EXPECT_EQ(classify_theorem12(quad_phase(Q_field(gs), -0.1), gs).verdict, Verdict::BlowUpThm12);
  EXPECT_EQ(classify_theorem12(quad_phase(Q_field(gs), 0.1), gs).verdict, Verdict::BoundedThm12);
  EXPECT_EQ(classify_theorem12(Q_field(gs), gs).verdict, Verdict::Inconclusive);
}

TEST(Thresholds, ClassifyGroundStateIsInconclusive) {
  const GroundState& gs = planar();
  const CriterionReport r = classify(Q_field(gs), gs, compute_constants(gs));
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
  EXPECT_TRUE(r.fired.empty());
}

TEST(Thresholds, NegativeEnergyRoute) {
  const GroundState& gs = planar();
  const CriterionReport r = classify(scaled(Q_field(gs), 2.0), gs, compute_constants(gs));
  EXPECT_LT(r.e0, 0.0);
  EXPECT_EQ(r.verdict, Verdict::BlowUpNegEnergy);
}

TEST(Thresholds, DichotomyBranchesAreExclusive) {
  const GroundState& gs = planar();
  const ConstantsBundle c = compute_constants(gs);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const CriterionReport r = classify(cli::random_field(gs.params, gs.grid, rng), gs, c);
    const auto n = std::count(r.fired.begin(), r.fired.end(), Verdict::BlowUpThm12) +
                   std::count(r.fired.begin(), r.fired.end(), Verdict::BoundedThm12);
    ASSERT_LE(n, 1);
    if (!r.fired.empty()) {
      ASSERT_EQ(r.verdict, r.fired.front());
    }
  }
}

TEST(Thresholds, Lush1AtUnitArgument) {
  // Real data with 4 E V / (n M^2) = 1: the criterion collapses to V_t(0) < 0.
  const ProblemParams q = make_params(2, 3.0, 0.5);
  Quantities qu;
  qu.mass = 2.0;
  qu.energy = 0.7;
  VirialSnapshot v;
  v.V = q.n_eff * qu.mass * qu.mass / (4.0 * qu.energy);
  v.V_t = 0.0;
  EXPECT_NEAR(lush1_margin(q, qu, v), 0.0, 1e-12);
  v.V_t = -0.1;
  EXPECT_GT(lush1_margin(q, qu, v), 0.0);
  v.V_t = 0.1;
  EXPECT_LT(lush1_margin(q, qu, v), 0.0);
  qu.energy = -1.0;
  EXPECT_THROW(lush1_margin(q, qu, v), Error);
}

TEST(Thresholds, Lush2NegativeControl) {
  const GroundState& gs = planar();
  const ConstantsBundle c = compute_constants(gs);
  const FieldState u = quad_phase(Q_field(gs), 0.5);
  EXPECT_GT(virial_snapshot(u).V_t, 0.0);
  EXPECT_LT(lush2_criterion(u, c), 0.0);
  EXPECT_LT(lush1_criterion(u), 0.0);
}

TEST(Thresholds, Lush1MatchesParticleConditions) {
  const GroundState& gs = planar();
  const auto& q = gs.params;
  const WellSpec w = make_well(q);
  std::mt19937_64 rng(19);
  int fired = 0;
  for (int i = 0; i < 100; ++i) {
    const FieldState u = cli::random_field(q, gs.grid, rng, false);
    const Quantities qu = quantities(u);
    if (!(qu.energy > 0.0)) continue;
    const VirialSnapshot v = virial_snapshot(q, qu);
    const double margin = lush1_margin(q, qu, v);
    const WellCondition cond = classify_ABC(w, rescale_V_to_Phi(q, qu.mass, qu.energy, v.V, v.V_t));
    ASSERT_EQ(margin > 0.0, cond == WellCondition::A || cond == WellCondition::C) << margin;
    fired += margin > 0.0;
  }
  EXPECT_GT(fired, 0);
}

TEST(Thresholds, PotentialRateMatchesTheFlow) {
  const GroundState& gs = planar();
  const FieldState u = quad_phase(Q_field(gs), 0.1);
  const double dt = 1e-6;
  const double forward = (potential(step(u, dt)) - potential(u)) / dt;
  const double rate = potential_rate(u);
  EXPECT_LT(std::abs(forward - rate), 1e-5 * std::abs(rate));
  EXPECT_LT(rate, 0.0);
}
