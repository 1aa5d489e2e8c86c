#pragma once

#include <map>
#include <mutex>
#include <tuple>

#include "inls/ground_state.hpp"
#include "inls/params.hpp"

namespace inls::test {

// Ground states are the expensive fixture shared by most suites; solve each
// (N, p, b, M, R) once per test binary.
inline const GroundState& ground_state(int N, double p, double b, int M = 4096, double R = 30.0, double tol = 1e-5) {
  static std::map<std::tuple<int, double, double, int, double>, GroundState> cache;
  static std::mutex mu;
  std::lock_guard lock(mu);
  const auto key = std::make_tuple(N, p, b, M, R);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, solve_ground_state(make_params(N, p, b), make_grid(N, M, R), tol)).first;
  }
  return it->second;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace inls::test
