// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "inls/error.hpp"
#include "inls/evolution.hpp"
#include "inls/field.hpp"
#include "inls/functionals.hpp"
#include "inls/ground_state.hpp"
#include "inls/sharp_constants.hpp"
#include "inls/thresholds.hpp"
#include "inls/virial_ode.hpp"
#include "inls_cli/commands.hpp"
#include "inls_cli/config.hpp"
#include "inls_cli/sampling.hpp"

using namespace inls;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kPohozaevTol = 1e-5;
constexpr double kDoublingTol = 1e-4;
constexpr double kSechTol = 1e-4;
constexpr double kGnMarginTol = 1e-5;
constexpr double kGnEqualityTol = 1e-5;
constexpr double kBanicaTol = 1e-5;
constexpr double kFixedPointTol = 1e-8;
constexpr double kVirialTol = 1e-3;
constexpr double kParticleEnergyTol = 1e-8;
constexpr double kInterpEqualityTol = 1e-4;
constexpr double kInterpStrictTol = 1e-2;
constexpr double kDTol = 1e-8;

constexpr int kRandomFields = 1000;
constexpr double kGridR = 30.0;
constexpr int kGridM = 8192;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

GroundState solve(int N, double p, double b, int M = kGridM, double R = kGridR) {
  const ProblemParams q = make_params(N, p, b);
  return solve_ground_state(q, make_grid(N, M, R));
}

FieldState q_field(const GroundState& gs) { return make_real_field(gs.params, gs.grid, gs.profile); }

double sup_mp(const TrajectoryRecord& rec) {
  double s = 0.0;
  for (const auto& x : rec.samples) {
    if (x.t > 0.0) s = std::max(s, x.mp);
  }
  return s;
}

Outcome ground_states() {
  Outcome o{true, ""};
  double worst_res = 0.0, worst_dq = 0.0, worst_time = 0.0;
  for (auto [N, p, b] : {std::tuple{1, 3.0, 0.3}, {2, 3.0, 0.5}, {3, 3.0, 0.5}, {3, 2.5, 0.8}}) {
    const auto t0 = std::chrono::steady_clock::now();
    const GroundState a = solve(N, p, b, kGridM);
    const GroundState c = solve(N, p, b, 2 * kGridM);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto [r1, r2] = pohozaev_residuals(a);
    const double res = std::max(std::abs(r1), std::abs(r2));
    const double dq = rel(a.Q0, c.Q0);
    worst_res = std::max(worst_res, res);
    worst_dq = std::max(worst_dq, dq);
    worst_time = std::max(worst_time, secs);
    if (!(res < kPohozaevTol) || !(dq < kDoublingTol) || !(secs < 10.0)) o.pass = false;
  }
  o.detail = fmt("max pohozaev %.2e, max doubling dQ0 %.2e, slowest case %.1f s", worst_res, worst_dq, worst_time);
  return o;
}

Outcome classical_limit() {
  const GroundState gs = solve(1, 3.0, 1e-6);
  double err = 0.0;
  for (std::size_t i = 0; i < gs.profile.size(); ++i) {
    err = std::max(err, std::abs(gs.profile[i] - std::sqrt(2.0) / std::cosh(gs.grid->r[i])));
  }
  return {err < kSechTol, fmt("max |Q - sqrt2 sech| = %.2e", err)};
}

Outcome gn_sharpness(const std::vector<GroundState>& cases) {
  bool pass = true;
  double worst_margin = std::numeric_limits<double>::infinity(), worst_eq = 0.0;
  std::mt19937_64 rng(3);
  for (const GroundState& gs : cases) {
    const ProblemParams& q = gs.params;
    const double C = gn_constant_from_Q(gs);
    const double eq = rel(gn_ratio(gs), C);
    worst_eq = std::max(worst_eq, eq);
    pass = pass && eq < kGnEqualityTol;
    for (int i = 0; i < kRandomFields; ++i) {
      const Quantities qu = quantities(cli::random_field(q, gs.grid, rng));
      const double rhs = C * std::pow(qu.grad_sq, q.K / 4.0) * std::pow(qu.mass, (q.p + 1.0) / 2.0 - q.K / 4.0);
      const double margin = (rhs - qu.pot) / std::max({1.0, rhs, qu.pot});
      worst_margin = std::min(worst_margin, margin);
      pass = pass && margin >= -kGnMarginTol;
    }
  }
  return {pass, fmt("min scaled margin %.3e over %d fields per case, equality defect at Q %.2e", worst_margin,
                    kRandomFields, worst_eq)};
}

Outcome mp_mk_equivalence(const std::vector<GroundState>& cases) {
  int forward = 0, backward = 0, bad = 0;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> log_target(std::log(0.05), std::log(2.0));
  for (const GroundState& gs : cases) {
    for (int i = 0; i < kRandomFields; ++i) {
      const FieldState v = cli::random_field(gs.params, gs.grid, rng);
      // mk scales as l^{2 + 2 sigma}; pick l to land on a target spread around 1.
      const double mk = normalized_ratios(v, gs).mk;
      const double l = std::pow(std::exp(log_target(rng)) / mk, 1.0 / (2.0 + 2.0 * gs.params.sigma()));
      const Ratios r = normalized_ratios(scaled(v, l), gs);
      const ImplicationCheck c = mp_mk_implication_check(r);
      forward += r.mk < 1.0;
      backward += r.me <= 1.0 && r.mp < 1.0;
      bad += !c.holds();
    }
  }
  return {bad == 0 && forward > 0 && backward > 0,
          fmt("%d counterexamples; mk<1 in %d samples, me<=1 and mp<1 in %d", bad, forward, backward)};
}

Outcome banica(const std::vector<GroundState>& cases) {
  bool pass = true;
  double worst = std::numeric_limits<double>::infinity(), at_q = 0.0;
  std::mt19937_64 rng(5);
  for (const GroundState& gs : cases) {
    const double CQ = compute_constants(gs).C_Q;
    const FieldState Q = q_field(gs);
    const double q_gap = std::abs(banica_gap(Q, CQ)) / std::max(1.0, variance(Q) * grad_sq(Q));
    at_q = std::max(at_q, q_gap);
    pass = pass && q_gap < kBanicaTol;
    for (int i = 0; i < kRandomFields; ++i) {
      const Quantities qu = quantities(cli::random_field(gs.params, gs.grid, rng));
      const double g = banica_gap(gs.params, qu, CQ) /
                       std::max({1.0, qu.variance * qu.grad_sq, qu.momentum * qu.momentum});
      worst = std::min(worst, g);
      pass = pass && g >= -kBanicaTol;
    }
  }
  return {pass, fmt("min scaled gap %.3e, |gap| at Q %.2e", worst, at_q)};
}

Outcome alpha_fixed_point(const GroundState& gs) {
  const ProblemParams& q = gs.params;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> m(0.3, 3.0), e(0.2, 5.0);
  double worst = 0.0;
  int bad_sign = 0, above = 0;
  for (int i = 0; i < 100; ++i) {
    const double M0 = m(rng) * gs.mass, E0 = e(rng) * gs.energy;
    const double a = alpha_m(q, gs, M0, E0);
    const double phi = phi_of_alpha(q, gs, M0, E0, a);
    // Relative to the larger of the two sides and phi's value at alpha = 0.
    const double scale = std::max(std::abs(a / 8.0), 4.0 * q.K * E0 / q.A_const);
    worst = std::max(worst, std::abs(phi - a / 8.0) / scale);
    const double me = std::pow(M0 / gs.mass, q.sigma()) * E0 / gs.energy;
    if (me >= 1.0) {
      ++above;
      bad_sign += a < 0.0;
    }
  }
  return {worst < kFixedPointTol && bad_sign == 0 && above > 0,
          fmt("max fixed-point defect %.2e; %d negative alpha_m among %d pairs with me >= 1", worst, bad_sign, above)};
}

Outcome virial_identity(const GroundState& gs) {
  const ProblemParams& q = gs.params;
  auto gaussian = [&](double amp, double w) {
    std::vector<cplx> v(gs.grid->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = amp * std::exp(-gs.grid->r[i] * gs.grid->r[i] / (w * w));
    return make_field(q, gs.grid, v);
  };
  double worst = 0.0;
  bool ok = true;

  EvolutionConfig free_cfg;
  free_cfg.linear_only = true;
  free_cfg.t_end = 1.0;
  const TrajectoryRecord free_run = evolve(gaussian(1.0, 1.2), free_cfg);
  const auto [f1, f2] = virial_consistency(free_run);
  ok = ok && free_run.outcome == EvolutionOutcome::ReachedTend;
  worst = std::max({worst, f1, f2});

  EvolutionConfig nl_cfg;
  nl_cfg.t_end = 1.0;
  const TrajectoryRecord nl_run = evolve(gaussian(1.0, 1.5), nl_cfg, &gs);
  const auto [n1, n2] = virial_consistency(nl_run);
  ok = ok && nl_run.outcome == EvolutionOutcome::ReachedTend;
  worst = std::max({worst, n1, n2});

  // Collapsing data, checked on the resolved segment before the collapse.
  EvolutionConfig bu_cfg;
  bu_cfg.t_end = 2.0;
  const TrajectoryRecord bu_run = evolve(quad_phase(q_field(gs), -0.1), bu_cfg, &gs);
  ok = ok && bu_run.outcome == EvolutionOutcome::BlowUpDetected;
  const auto [b1, b2] = virial_consistency(bu_run, 0.8 * bu_run.t_final);
  worst = std::max({worst, b1, b2});

  return {ok && worst < kVirialTol,
          fmt("max normalised residual %.2e (free %.1e/%.1e, gaussian %.1e/%.1e, pre-collapse %.1e/%.1e)", worst, f1,
              f2, n1, n2, b1, b2)};
}

Outcome dichotomy(const GroundState& gs) {
  bool pass = true;
  std::ostringstream os;
  for (double g : {-0.2, -0.1, -0.05, 0.05, 0.1, 0.2}) {
    EvolutionConfig cfg;
    cfg.t_end = 3.0;
    const TrajectoryRecord rec = evolve(quad_phase(q_field(gs), g), cfg, &gs);
    const double s = sup_mp(rec);
    const bool ok = g < 0.0 ? rec.outcome == EvolutionOutcome::BlowUpDetected
                            : rec.outcome == EvolutionOutcome::ReachedTend && s < 1.0;
    pass = pass && ok;
    os << fmt("%+.2f:%s@%.3f", g, std::string(to_string(rec.outcome)).c_str(), rec.t_final);
    if (g > 0.0) os << fmt("(mp %.5f)", s);
    os << ' ';
  }
  return {pass, os.str()};
}

Outcome mechanical_analogy(const ProblemParams& q) {
  const WellSpec w = make_well(q);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  // Speed that puts a particle at position phi exactly on the hilltop energy.
  auto v_edge = [&](double phi) { return std::sqrt(2.0 * std::max(w.U_max - potential_U(w, phi), 0.0) / w.omega); };

  std::vector<std::pair<WellCondition, ParticleState>> states;
  for (int i = 0; i < 50; ++i) {
    const double phi = 0.05 + 0.9 * u01(rng);
    const double sign = u01(rng) < 0.5 ? -1.0 : 1.0;
    states.push_back({WellCondition::A, {phi, sign * 0.95 * u01(rng) * v_edge(phi), 0.0}});
  }
  for (int i = 0; i < 50; ++i) {
    const double phi = 0.1 + 2.9 * u01(rng);
    const double v = std::sqrt(v_edge(phi) * v_edge(phi) + 0.01 + 4.0 * u01(rng));
    states.push_back({WellCondition::B, {phi, -v, 0.0}});
  }
  for (int i = 0; i < 50; ++i) {
    const double phi = 0.05 + 0.9 * u01(rng);
    states.push_back({WellCondition::C, {phi, -v_edge(phi), 0.0}});
  }
  states.push_back({WellCondition::None, {1.0, 0.0, 0.0}});
  for (int i = 1; i < 50; ++i) {
    states.push_back({WellCondition::None, {1.0 + 2.0 * u01(rng), 2.0 * u01(rng), 0.0}});
  }

  int misclassified = 0, wrong_outcome = 0;
  double drift = 0.0;
  ParticleOptions opt;
  opt.keep_trajectory = false;
  for (const auto& [want, st] : states) {
    if (classify_ABC(w, st) != want) {
      ++misclassified;
      continue;
    }
    const ParticleRun run = integrate_particle(w, st, 1e3, 1e-3, opt);
    const ParticleOutcome expect = want == WellCondition::None ? ParticleOutcome::Survived : ParticleOutcome::HitZero;
    if (run.outcome != expect || (expect == ParticleOutcome::HitZero && !(run.s_star > 0.0))) ++wrong_outcome;
    drift = std::max(drift, run.max_energy_drift);
  }
  return {misclassified == 0 && wrong_outcome == 0 && drift < kParticleEnergyTol,
          fmt("%zu states, %d misclassified, %d wrong outcomes, max energy drift %.2e", states.size(), misclassified,
              wrong_outcome, drift)};
}

Outcome lush1_consistency(const GroundState& gs) {
  const ProblemParams& q = gs.params;
  const WellSpec w = make_well(q);
  std::mt19937_64 rng(10);
  int n = 0, fired = 0, mismatch = 0, draws = 0;
  while (n < 100 && draws < 10000) {
    ++draws;
    const FieldState u = cli::random_field(q, gs.grid, rng, false);
    const Quantities qu = quantities(u);
    if (!(qu.energy > 0.0)) continue;
    ++n;
    const VirialSnapshot v = virial_snapshot(q, qu);
    const double margin = lush1_margin(q, qu, v);
    const WellCondition c = classify_ABC(w, rescale_V_to_Phi(q, qu.mass, qu.energy, v.V, v.V_t));
    mismatch += (margin > 0.0) != (c == WellCondition::A || c == WellCondition::C);
    fired += margin > 0.0;
  }
  return {n == 100 && mismatch == 0 && fired > 0 && fired < n,
          fmt("%d samples, %d mismatches, criterion fired on %d", n, mismatch, fired)};
}

Outcome interpolation() {
  double worst_eq = 0.0, worst_gauss = std::numeric_limits<double>::infinity();
  const std::vector<std::tuple<int, double, double, double, double>> pairs = {
      {2, 3.0, 0.5, 1.0, 1.0}, {2, 3.0, 0.5, 2.0, 0.5}, {2, 3.0, 0.5, 0.3, 2.0}, {3, 3.0, 0.5, 1.0, 1.0},
      {3, 3.0, 0.5, 0.7, 3.0}, {3, 2.5, 0.8, 1.5, 0.8}, {3, 2.5, 0.8, 0.4, 1.7}, {1, 3.0, 0.3, 1.0, 1.0},
      {1, 3.0, 0.3, 2.5, 0.4}, {1, 5.0, 0.2, 0.8, 1.3}};
  for (const auto& [N, p, b, beta, alpha] : pairs) {
    worst_eq = std::max(worst_eq, std::abs(interp_extremizer_check(make_params(N, p, b), beta, alpha)));
  }
  for (auto [N, p, b] : {std::tuple{1, 3.0, 0.3}, {2, 3.0, 0.5}, {3, 3.0, 0.5}}) {
    const ProblemParams q = make_params(N, p, b);
    const GridPtr g = make_grid(N, 4096, 10.0);
    for (double width : {0.7, 1.0, 2.0}) {
      std::vector<cplx> v(g->size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(-g->r[i] * g->r[i] / (width * width));
      worst_gauss = std::min(worst_gauss, interp_defect(make_field(q, g, v)));
    }
  }
  // b = 0 is outside the parameter domain; the classical value is approached at b = 1e-12.
  const double d_err = std::abs(D_integral(make_params(1, 3.0, 1e-12)) - std::sqrt(16.0 / 15.0));
  return {worst_eq < kInterpEqualityTol && worst_gauss > kInterpStrictTol && d_err < kDTol,
          fmt("max extremal defect %.2e, min gaussian defect %.3f, |D - sqrt(16/15)| = %.1e", worst_eq, worst_gauss,
              d_err)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "inls_acceptance_determinism";
  fs::remove_all(root);
  cli::RunConfig cfg = cli::parse_config(R"([params]
N = 2
p = 3
b = 0.5
[initial]
type = quad_phase
gamma = 0.1
[evolve]
t_end = 0.2
[ode]
source = initial
[sweep]
gamma = -0.1, 0.1
[constants]
samples = 50
)");
  cfg.seed = 11;
  int differing = 0, compared = 0;
  for (const char* cmd : {"ground-state", "constants", "classify", "evolve", "ode", "sweep"}) {
    std::vector<fs::path> dirs;
    for (const char* run : {"a", "b"}) {
      dirs.push_back(root / run / cmd);
      fs::create_directories(dirs.back());
      cli::RunConfig c = cfg;
      c.out_dir = dirs.back().string();
      std::ostringstream out, err;
      if (cli::run_command(cmd, c, out, err) != cli::kExitOk) return {false, std::string(cmd) + " failed: " + err.str()};
    }
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      ++compared;
      differing += slurp(entry.path()) != slurp(dirs[1] / entry.path().filename());
    }
  }
  fs::remove_all(root);
  return {differing == 0 && compared > 0, fmt("%d of %d output files differ between runs", differing, compared)};
}

}  // namespace

int main() {
  bool all = true;
  int index = 0;
  auto report = [&](double budget, const std::function<Outcome()>& body) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = budget <= 0.0 || secs < budget;
    const bool pass = o.pass && in_budget;
    all = all && pass;
    std::printf("criterion %2d: %s  %s [%.1f s%s]\n", index, pass ? "PASS" : "FAIL", o.detail.c_str(), secs,
                in_budget ? "" : ", over budget");
    std::fflush(stdout);
  };

  // Shared ground states, solved outside the timed sections that use them.
  const GroundState planar = solve(2, 3.0, 0.5);
  const std::vector<GroundState> cases = {planar, solve(3, 2.5, 0.8)};

  report(4 * 10.0, ground_states);
  report(10.0, classical_limit);
  report(30.0, [&] { return gn_sharpness(cases); });
  report(30.0, [&] { return mp_mk_equivalence(cases); });
  report(30.0, [&] { return banica(cases); });
  report(5.0, [&] { return alpha_fixed_point(planar); });
  report(60.0, [&] { return virial_identity(planar); });
  report(300.0, [&] { return dichotomy(planar); });
  report(60.0, [&] { return mechanical_analogy(planar.params); });
  report(10.0, [&] { return lush1_consistency(planar); });
  report(10.0, interpolation);
  report(0.0, determinism);
  return all ? 0 : 1;
}
