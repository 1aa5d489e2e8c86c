#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "inls/evolution.hpp"

namespace inls::cli {

enum class InitialKind { GroundState, Gaussian, QuadPhase, FromFile };

struct InitialSpec {
  InitialKind kind = InitialKind::GroundState;
  double width = 1.0;
  double amplitude = 1.0;
  double gamma = 0.0;
  InitialKind inner = InitialKind::GroundState;  // for QuadPhase: GroundState, Gaussian or FromFile
  std::string path;
};

struct OdeSpec {
  bool from_initial = false;  // rescale (M, E, V, V_t) of the initial data instead of (Phi0, Phi_s0)
  double Phi0 = 0.5;
  double Phi_s0 = 0.0;
  double horizon = 1000.0;
  double dt0 = 1e-3;
};

struct SweepSpec {
  std::vector<double> gammas{-0.2, -0.1, -0.05, 0.05, 0.1, 0.2};
  double gamma_min = 0.05;
};

struct RunConfig {
  int N = 3;
  double p = 3.0;
  double b = 0.5;
  int M = 8192;
  double R_max = 30.0;
  double tol = 1e-8;
  InitialSpec initial;
  EvolutionConfig evolve;
  OdeSpec ode;
  SweepSpec sweep;
  int property_samples = 0;  // random fields checked by the constants command
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

// Parses an INI file with sections [params], [grid], [solver], [initial],
// [evolve], [ode], [sweep], [constants]. Unknown keys are rejected. Missing
// files raise an I/O Error; malformed values raise a validation Error.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& ini_text);

std::string to_string(InitialKind k);

}  // namespace inls::cli
