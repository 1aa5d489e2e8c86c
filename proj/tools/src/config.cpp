#include "inls_cli/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "inls/error.hpp"

namespace inls::cli {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string> kKnown = {
    "params.N",
    "params.p",
    "params.b",
    "grid.M",
    "grid.R_max",
    "solver.tol",
    "initial.type",
    "initial.width",
    "initial.amplitude",
    "initial.gamma",
    "initial.inner",
    "initial.path",
    "evolve.dt0",
    "evolve.t_end",
    "evolve.dt_floor",
    "evolve.grid_floor_factor",
    "evolve.blowup_gradient_factor",
    "evolve.conservation_drift_cap",
    "evolve.output_stride",
    "evolve.linear_only",
    "ode.source",
    "ode.Phi0",
    "ode.Phi_s0",
    "ode.horizon",
    "ode.dt0",
    "sweep.gamma",
    "sweep.gamma_min",
    "constants.samples",
    "output.dir",
};

InitialKind parse_kind(const std::string& s) {
  if (s == "ground_state") return InitialKind::GroundState;
  if (s == "gaussian") return InitialKind::Gaussian;
  if (s == "quad_phase") return InitialKind::QuadPhase;
  if (s == "from_file") return InitialKind::FromFile;
  throw validation_error("InvalidConfig",
                         "initial.type must be one of ground_state, gaussian, quad_phase, from_file (got '" + s + "')");
}

template <class T>
void read(const pt::ptree& t, const std::string& key, T& out) {
  const auto v = t.get_optional<std::string>(key);
  if (!v) return;
  std::istringstream is(*v);
  T x{};
  is >> std::boolalpha >> x;
  if (!is || !(is >> std::ws).eof()) throw validation_error("InvalidConfig", "cannot parse " + key + " = '" + *v + "'");
  out = x;
}

template <>
void read<std::string>(const pt::ptree& t, const std::string& key, std::string& out) {
  if (const auto v = t.get_optional<std::string>(key)) out = *v;
}

std::vector<double> parse_list(const std::string& key, const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    double x;
    is >> x;
    if (!is || !(is >> std::ws).eof()) throw validation_error("InvalidConfig", "cannot parse list " + key + " = '" + s + "'");
    out.push_back(x);
  }
  if (out.empty()) throw validation_error("InvalidConfig", key + " must list at least one value");
  return out;
}

RunConfig from_tree(const pt::ptree& t) {
  for (const auto& [section, body] : t) {
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      if (!kKnown.count(full)) throw validation_error("InvalidConfig", "unknown key " + full);
    }
  }
  RunConfig c;
  read(t, "params.N", c.N);
  read(t, "params.p", c.p);
  read(t, "params.b", c.b);
  read(t, "grid.M", c.M);
  read(t, "grid.R_max", c.R_max);
  read(t, "solver.tol", c.tol);

  if (auto k = t.get_optional<std::string>("initial.type")) c.initial.kind = parse_kind(*k);
  read(t, "initial.width", c.initial.width);
  read(t, "initial.amplitude", c.initial.amplitude);
  read(t, "initial.gamma", c.initial.gamma);
  read(t, "initial.path", c.initial.path);
  if (auto k = t.get_optional<std::string>("initial.inner")) {
    c.initial.inner = parse_kind(*k);
    if (c.initial.inner == InitialKind::QuadPhase) throw validation_error("InvalidConfig", "initial.inner cannot be quad_phase");
    if (c.initial.kind != InitialKind::QuadPhase) throw validation_error("InvalidConfig", "initial.inner only applies to quad_phase");
  }
  if (t.get_optional<std::string>("initial.gamma") && c.initial.kind != InitialKind::QuadPhase) {
    throw validation_error("InvalidConfig", "initial.gamma only applies to quad_phase");
  }
  const bool needs_file = c.initial.kind == InitialKind::FromFile ||
                          (c.initial.kind == InitialKind::QuadPhase && c.initial.inner == InitialKind::FromFile);
  if (needs_file) {
    if (c.initial.path.empty()) throw validation_error("InvalidConfig", "from_file needs initial.path");
    if (!std::filesystem::exists(c.initial.path)) throw io_error("MissingFile", "initial.path not found: " + c.initial.path);
  }

  read(t, "evolve.dt0", c.evolve.dt0);
  read(t, "evolve.t_end", c.evolve.t_end);
  read(t, "evolve.dt_floor", c.evolve.dt_floor);
  read(t, "evolve.grid_floor_factor", c.evolve.grid_floor_factor);
  read(t, "evolve.blowup_gradient_factor", c.evolve.blowup_gradient_factor);
  read(t, "evolve.conservation_drift_cap", c.evolve.conservation_drift_cap);
  read(t, "evolve.output_stride", c.evolve.output_stride);
  read(t, "evolve.linear_only", c.evolve.linear_only);

  if (auto s = t.get_optional<std::string>("ode.source")) {
    if (*s == "initial") {
      c.ode.from_initial = true;
    } else if (*s != "state") {
      throw validation_error("InvalidConfig", "ode.source must be 'state' or 'initial'");
    }
  }
  read(t, "ode.Phi0", c.ode.Phi0);
  read(t, "ode.Phi_s0", c.ode.Phi_s0);
  read(t, "ode.horizon", c.ode.horizon);
  read(t, "ode.dt0", c.ode.dt0);

  if (auto s = t.get_optional<std::string>("sweep.gamma")) c.sweep.gammas = parse_list("sweep.gamma", *s);
  read(t, "sweep.gamma_min", c.sweep.gamma_min);
  read(t, "constants.samples", c.property_samples);
  read(t, "output.dir", c.out_dir);
  return c;
}

}  // namespace

std::string to_string(InitialKind k) {
  switch (k) {
    case InitialKind::GroundState: return "ground_state";
    case InitialKind::Gaussian: return "gaussian";
    case InitialKind::QuadPhase: return "quad_phase";
    case InitialKind::FromFile: return "from_file";
  }
  return "ground_state";
}

RunConfig parse_config(const std::string& text) {
  pt::ptree t;
  std::istringstream is(text);
  try {
    pt::read_ini(is, t);
  } catch (const pt::ini_parser_error& e) {
    throw validation_error("InvalidConfig", e.what());
  }
  return from_tree(t);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("MissingFile", "cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace inls::cli
