#pragma once

#include <array>
#include <complex>
#include <vector>

#include "inls/grid.hpp"

namespace inls::detail {

// LU factorisation of (W + i tau K) for a heptadiagonal stiffness K and a
// diagonal W, via LAPACK's general band routines.
class CrankNicolsonSolver {
 public:
  CrankNicolsonSolver(const BandedStiffness& k, const std::vector<double>& w, double tau);

  // Solves (W + i tau K) x = rhs in place. Throws LinearSolveFailure.
  void solve(std::vector<cplx>& rhs) const;

  double tau() const { return tau_; }

 private:
  static constexpr int kl_ = 3;
  static constexpr int ku_ = 3;
  static constexpr int ldab_ = 2 * kl_ + ku_ + 1;
  int n_ = 0;
  double tau_ = 0.0;
  std::vector<cplx> ab_;
  std::vector<int> ipiv_;
};

}  // namespace inls::detail

namespace inls::detail {

// Solves a real banded system with half-bandwidth 3 in place (dgbsv).
// diag[d][i] holds A(i, i + d) and sub[d][i] holds A(i + d, i).
void solve_banded_real(const std::array<std::vector<double>, 4>& upper, const std::array<std::vector<double>, 4>& lower,
                       std::vector<double>& rhs);

}  // namespace inls::detail
