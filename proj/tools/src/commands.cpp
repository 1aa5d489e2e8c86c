#include "inls_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "inls/evolution.hpp"
#include "inls/functionals.hpp"
#include "inls/sharp_constants.hpp"
#include "inls/thresholds.hpp"
#include "inls/virial_ode.hpp"
#include "inls_cli/sampling.hpp"

namespace inls::cli {

namespace fs = std::filesystem;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Validation: return kExitValidation;
    case ErrorKind::Solver: return kExitSolver;
    case ErrorKind::Io: return kExitIo;
  }
  return kExitInternal;
}

namespace {

struct Setup {
  ProblemParams params;
  GridPtr grid;
};

Setup setup(const RunConfig& cfg) {
  Setup s{make_params(cfg.N, cfg.p, cfg.b), make_grid(cfg.N, cfg.M, cfg.R_max)};
  return s;
}

void add_header(Report& r, const RunConfig& cfg, const ProblemParams& q) {
  r.add("N", q.N).add("p", q.p).add("b", q.b).add("M", cfg.M).add("R_max", cfg.R_max);
  r.add("s_c", q.s_c).add("regime", std::string(to_string(q.regime))).add("out_of_theory", q.out_of_theory);
}

std::string path_in(const RunConfig& cfg, const std::string& name) { return (fs::path(cfg.out_dir) / name).string(); }

bool predicts_blowup(Verdict v) {
  return v == Verdict::BlowUpThm12 || v == Verdict::BlowUpNegEnergy || v == Verdict::BlowUpLush1 ||
         v == Verdict::BlowUpLush2;
}

double sup_mp_after_start(const TrajectoryRecord& rec) {
  double s = -std::numeric_limits<double>::infinity();
  for (const auto& x : rec.samples) {
    if (x.t > 0.0) s = std::max(s, x.mp);
  }
  return s;
}

std::string join_fired(const CriterionReport& rep) {
  std::string s;
  for (Verdict v : rep.fired) {
    if (!s.empty()) s += ";";
    s += std::string(to_string(v));
  }
  return s.empty() ? "none" : s;
}

void add_criterion(Report& r, const CriterionReport& c) {
  r.add("me", c.ratios.me).add("mp", c.ratios.mp).add("mk", c.ratios.mk);
  r.add("cond1_lhs", c.cond1_lhs).add("v0", c.v0).add("vt0", c.vt0).add("e0", c.e0).add("m0", c.m0);
  r.add("alpha_m", c.alpha_m).add("dpot_dt", c.dpot_dt);
  r.add("lush1_margin", c.lush1_margin).add("lush2_margin", c.lush2_margin);
  r.add("lush1_arg_at_zero", c.lush1_arg_at_zero).add("boundary_resolved", c.boundary_resolved);
  r.add("dimension_flag", c.dimension_flag);
  r.add("verdict", std::string(to_string(c.verdict))).add("fired", join_fired(c));
}

}  // namespace

std::vector<cplx> read_profile_csv(const std::string& path, const RadialGrid& grid) {
  std::ifstream in(path);
  if (!in) throw io_error("MissingFile", "cannot open profile " + path);
  std::vector<double> r;
  std::vector<cplx> v;
  std::string line;
  int cols = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    std::vector<double> nums;
    bool numeric = true;
    for (const auto& c : cells) {
      char* end = nullptr;
      const double x = std::strtod(c.c_str(), &end);
      if (end == c.c_str()) {
        numeric = false;
        break;
      }
      nums.push_back(x);
    }
    if (!numeric) {
      if (r.empty() && cols < 0) continue;  // header
      throw io_error("BadProfile", "non-numeric row in " + path);
    }
    if (cols < 0) cols = static_cast<int>(nums.size());
    if (static_cast<int>(nums.size()) != cols || (cols != 2 && cols != 3)) {
      throw io_error("BadProfile", "profile rows must have 2 or 3 columns in " + path);
    }
    if (!r.empty() && !(nums[0] > r.back())) throw io_error("BadProfile", "radii must increase in " + path);
    r.push_back(nums[0]);
    v.emplace_back(nums[1], cols == 3 ? nums[2] : 0.0);
  }
  if (r.size() < 2) throw io_error("BadProfile", "profile needs at least two rows: " + path);
  std::vector<cplx> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.r[i];
    if (x <= r.front()) {
      out[i] = v.front();
    } else if (x >= r.back()) {
      out[i] = x == r.back() ? v.back() : cplx{};
    } else {
      const auto it = std::upper_bound(r.begin(), r.end(), x);
      const std::size_t j = static_cast<std::size_t>(it - r.begin());
      const double t = (x - r[j - 1]) / (r[j] - r[j - 1]);
      out[i] = (1.0 - t) * v[j - 1] + t * v[j];
    }
  }
  return out;
}

FieldState build_initial(const RunConfig& cfg, const ProblemParams& q, GridPtr grid, const GroundState* gs) {
  auto base = [&](InitialKind kind) -> FieldState {
    switch (kind) {
      case InitialKind::GroundState: {
        if (!gs) throw validation_error("InvalidConfig", "ground_state data needs a solved ground state");
        return make_real_field(q, grid, gs->profile);
      }
      case InitialKind::Gaussian: {
        if (!(cfg.initial.width > 0.0)) throw validation_error("InvalidConfig", "initial.width must be positive");
        std::vector<cplx> v(grid->size());
        for (std::size_t i = 0; i < v.size(); ++i) {
          const double x = grid->r[i] / cfg.initial.width;
          v[i] = cfg.initial.amplitude * std::exp(-x * x);
        }
        return make_field(q, grid, std::move(v));
      }
      case InitialKind::FromFile: return make_field(q, grid, read_profile_csv(cfg.initial.path, *grid));
      case InitialKind::QuadPhase: break;
    }
    throw validation_error("InvalidConfig", "quad_phase cannot be nested");
  };
  if (cfg.initial.kind == InitialKind::QuadPhase) return quad_phase(base(cfg.initial.inner), cfg.initial.gamma);
  return base(cfg.initial.kind);
}

Report cmd_ground_state(const RunConfig& cfg) {
  const Setup s = setup(cfg);
  const GroundState gs = solve_ground_state(s.params, s.grid, cfg.tol);
  const auto [r1, r2] = pohozaev_residuals(gs);
  Report r;
  add_header(r, cfg, s.params);
  r.add("Q0", gs.Q0).add("mass", gs.mass).add("grad_sq", gs.grad_sq).add("pot", gs.pot).add("energy", gs.energy);
  r.add("ode_residual", gs.residual).add("match_radius", gs.match_radius);
  r.add("pohozaev_res1", r1).add("pohozaev_res2", r2);
  if (s.params.K > 0.0) {
    const double C = gn_constant_from_Q(gs);
    r.add("C_pN_gn", C).add("C_pN_gn_ratio", gn_ratio(gs)).add("C_Q", std::pow(C, 4.0 / s.params.K));
  }
  write_file(path_in(cfg, "ground_state.csv"), profile_csv(s.grid->r, gs.profile));
  write_report(cfg.out_dir, "ground_state", r);
  return r;
}

Report cmd_constants(const RunConfig& cfg) {
  const Setup s = setup(cfg);
  const GroundState gs = solve_ground_state(s.params, s.grid, cfg.tol);
  const ConstantsBundle c = compute_constants(gs);
  Report r;
  add_header(r, cfg, s.params);
  r.add("C_pN_gn", c.C_pN_gn).add("C_Q", c.C_Q).add("C_Q_energy", c.C_Q_energy).add("D_pN", c.D_pN);
  r.add("C_pN_interp", c.C_pN_interp).add("C_pN_interp_empirical", c.C_pN_interp_empirical);
  r.add("interp_relative_discrepancy", (c.C_pN_interp_empirical - c.C_pN_interp) / c.C_pN_interp);
  r.add("C_lush2", c.C_lush2).add("C_lush2_expanded", lush2_constant_expanded(s.params, c.C_pN_interp));
  if (cfg.property_samples > 0) {
    std::mt19937_64 rng(cfg.seed);
    double gn_min = std::numeric_limits<double>::infinity(), banica_min = gn_min;
    for (int i = 0; i < cfg.property_samples; ++i) {
      const FieldState u = random_field(s.params, s.grid, rng);
      const Quantities q = quantities(u);
      const double rhs = c.C_pN_gn * std::pow(q.grad_sq, s.params.K / 4.0) *
                         std::pow(q.mass, (s.params.p + 1.0) / 2.0 - s.params.K / 4.0);
      gn_min = std::min(gn_min, (rhs - q.pot) / std::max({1.0, rhs, q.pot}));
      const double gap = banica_gap(s.params, q, c.C_Q);
      banica_min = std::min(banica_min, gap / std::max({1.0, q.variance * q.grad_sq, q.momentum * q.momentum}));
    }
    r.add("seed", static_cast<std::int64_t>(cfg.seed)).add("samples", cfg.property_samples);
    r.add("gn_min_scaled_margin", gn_min).add("banica_min_scaled_gap", banica_min);
  }
  write_report(cfg.out_dir, "constants", r);
  return r;
}

Report cmd_classify(const RunConfig& cfg) {
  const Setup s = setup(cfg);
  const GroundState gs = solve_ground_state(s.params, s.grid, cfg.tol);
  const ConstantsBundle c = compute_constants(gs);
  const FieldState u = build_initial(cfg, s.params, s.grid, &gs);
  const CriterionReport rep = classify(u, gs, c);
  Report r;
  add_header(r, cfg, s.params);
  r.add("initial", to_string(cfg.initial.kind));
  add_criterion(r, rep);
  write_report(cfg.out_dir, "classify", r);
  return r;
}

Report cmd_evolve(const RunConfig& cfg) {
  const Setup s = setup(cfg);
  std::optional<GroundState> gs;
  try {
    gs = solve_ground_state(s.params, s.grid, cfg.tol);
  } catch (const Error&) {
    // mp is reported as nan when no reference ground state is available.
    if (cfg.initial.kind == InitialKind::GroundState ||
        (cfg.initial.kind == InitialKind::QuadPhase && cfg.initial.inner == InitialKind::GroundState)) {
      throw;
    }
  }
  const FieldState u0 = build_initial(cfg, s.params, s.grid, gs ? &*gs : nullptr);
  const TrajectoryRecord rec = evolve(u0, cfg.evolve, gs ? &*gs : nullptr);
  Report r;
  add_header(r, cfg, s.params);
  r.add("initial", to_string(cfg.initial.kind));
  r.add("outcome", std::string(to_string(rec.outcome))).add("t_final", rec.t_final).add("dt_final", rec.dt_final);
  r.add("steps", rec.steps).add("rejected", rec.rejected).add("samples", static_cast<int>(rec.samples.size()));
  r.add("max_mass_drift", rec.max_mass_drift).add("max_energy_drift", rec.max_energy_drift);
  r.add("grad_growth", std::sqrt(rec.samples.back().grad_sq / rec.samples.front().grad_sq));
  r.add("sup_mp", gs ? sup_mp_after_start(rec) : std::numeric_limits<double>::quiet_NaN());
  if (rec.samples.size() >= 5) {
    const auto [v1, v2] = virial_consistency(rec);
    r.add("virial_residual_Vt", v1).add("virial_residual_Vtt", v2);
  }
  r.add("indicator_note", "blow-up is a numerical indicator (gradient growth with step collapse), not a proof");
  write_file(path_in(cfg, "trajectory.csv"), trajectory_csv(rec));
  write_report(cfg.out_dir, "evolve", r);
  return r;
}

Report cmd_ode(const RunConfig& cfg) {
  const ProblemParams q = make_params(cfg.N, cfg.p, cfg.b);
  const WellSpec w = make_well(q);
  ParticleState st{cfg.ode.Phi0, cfg.ode.Phi_s0, 0.0};
  Report r;
  r.add("N", q.N).add("p", q.p).add("b", q.b).add("s_c", q.s_c);
  if (cfg.ode.from_initial) {
    const GridPtr grid = make_grid(cfg.N, cfg.M, cfg.R_max);
    std::optional<GroundState> gs;
    if (cfg.initial.kind == InitialKind::GroundState || cfg.initial.inner == InitialKind::GroundState) {
      gs = solve_ground_state(q, grid, cfg.tol);
    }
    const FieldState u = build_initial(cfg, q, grid, gs ? &*gs : nullptr);
    const Quantities qu = quantities(u);
    const VirialSnapshot v = virial_snapshot(q, qu);
    st = rescale_V_to_Phi(q, qu.mass, qu.energy, v.V, v.V_t);
    r.add("M0", qu.mass).add("E0", qu.energy).add("V0", v.V).add("Vt0", v.V_t);
    r.add("lush1_margin", lush1_margin(q, qu, v));
  }
  const ParticleRun run = integrate_particle(w, st, cfg.ode.horizon, cfg.ode.dt0);
  r.add("gamma_exp", w.gamma_exp).add("delta_exp", w.delta_exp).add("omega", w.omega).add("U_max", w.U_max);
  r.add("Phi0", st.Phi).add("Phi_s0", st.Phi_s).add("particle_energy", particle_energy(w, st));
  r.add("condition", std::string(to_string(classify_ABC(w, st))));
  r.add("outcome", std::string(to_string(run.outcome)));
  r.add("s_star", run.outcome == ParticleOutcome::HitZero ? run.s_star : std::numeric_limits<double>::quiet_NaN());
  r.add("steps", run.steps).add("max_energy_drift", run.max_energy_drift);
  r.add("model_note", "HitZero is the reduced-model collapse proxy; its PDE correspondence is heuristic");
  write_file(path_in(cfg, "particle.csv"), particle_csv(run));
  write_report(cfg.out_dir, "ode", r);
  return r;
}

Report cmd_sweep(const RunConfig& cfg) {
  const Setup s = setup(cfg);
  const GroundState gs = solve_ground_state(s.params, s.grid, cfg.tol);
  const ConstantsBundle c = compute_constants(gs);
  RunConfig base = cfg;
  if (base.initial.kind != InitialKind::QuadPhase) {
    base.initial.inner = base.initial.kind == InitialKind::QuadPhase ? InitialKind::GroundState : base.initial.kind;
    base.initial.kind = InitialKind::QuadPhase;
  }

  struct Row {
    double gamma = 0.0;
    std::string verdict = "error", outcome = "error", agreement = "na", error;
    double t_final = std::numeric_limits<double>::quiet_NaN();
    double sup_mp = std::numeric_limits<double>::quiet_NaN();
  };
  auto run_one = [&](double gamma) {
    Row row;
    row.gamma = gamma;
    try {
      RunConfig rc = base;
      rc.initial.gamma = gamma;
      const FieldState u = build_initial(rc, s.params, s.grid, &gs);
      const CriterionReport rep = classify(u, gs, c);
      row.verdict = std::string(to_string(rep.verdict));
      const TrajectoryRecord rec = evolve(u, cfg.evolve, &gs);
      row.outcome = std::string(to_string(rec.outcome));
      row.t_final = rec.t_final;
      row.sup_mp = sup_mp_after_start(rec);
      if (predicts_blowup(rep.verdict)) {
        row.agreement = rec.outcome == EvolutionOutcome::BlowUpDetected ? "true" : "false";
      } else if (rep.verdict == Verdict::BoundedThm12) {
        row.agreement = (rec.outcome == EvolutionOutcome::ReachedTend && row.sup_mp < 1.0) ? "true" : "false";
      }
    } catch (const Error& e) {
      row.error = e.code();
    }
    return row;
  };

  std::vector<std::future<Row>> jobs;
  for (double g : cfg.sweep.gammas) jobs.push_back(std::async(std::launch::async, run_one, g));
  std::vector<Row> rows;
  for (auto& j : jobs) rows.push_back(j.get());

  std::ostringstream csv;
  csv << "gamma,verdict,outcome,t_final,sup_mp,agreement,error\n";
  int agree = 0, disagree = 0, failed = 0;
  for (const Row& row : rows) {
    csv << format_double(row.gamma) << ',' << row.verdict << ',' << row.outcome << ',' << format_double(row.t_final)
        << ',' << format_double(row.sup_mp) << ',' << row.agreement << ',' << row.error << '\n';
    if (!row.error.empty()) {
      ++failed;
    } else if (std::abs(row.gamma) >= cfg.sweep.gamma_min) {
      if (row.agreement == "true") ++agree;
      if (row.agreement == "false") ++disagree;
    }
  }
  Report r;
  add_header(r, cfg, s.params);
  r.add("runs", static_cast<int>(rows.size())).add("gamma_min", cfg.sweep.gamma_min);
  r.add("agreements", agree).add("disagreements", disagree).add("failed_runs", failed);
  write_file(path_in(cfg, "sweep.csv"), csv.str());
  write_report(cfg.out_dir, "sweep", r);
  return r;
}

int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    Report r;
    if (name == "ground-state") {
      r = cmd_ground_state(cfg);
    } else if (name == "constants") {
      r = cmd_constants(cfg);
    } else if (name == "classify") {
      r = cmd_classify(cfg);
    } else if (name == "evolve") {
      r = cmd_evolve(cfg);
    } else if (name == "ode") {
      r = cmd_ode(cfg);
    } else if (name == "sweep") {
      r = cmd_sweep(cfg);
    } else {
      err << "error: unknown command '" << name << "'\n";
      return kExitValidation;
    }
    out << r.text();
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace inls::cli
