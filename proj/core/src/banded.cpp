#include "banded.hpp"

#include <complex>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "inls/error.hpp"

namespace inls::detail {

static_assert(sizeof(lapack_int) == sizeof(int), "ILP64 LAPACKE is not supported");

CrankNicolsonSolver::CrankNicolsonSolver(const BandedStiffness& k, const std::vector<double>& w, double tau)
    : n_(static_cast<int>(w.size())), tau_(tau), ab_(static_cast<std::size_t>(ldab_) * w.size()), ipiv_(w.size()) {
  // Column-major band storage: A(i, j) lives at ab[kl + ku + i - j + j * ldab].
  auto at = [&](int i, int j) -> cplx& { return ab_[kl_ + ku_ + i - j + static_cast<std::size_t>(j) * ldab_]; };
  const cplx itau(0.0, tau);
  for (int i = 0; i < n_; ++i) {
    at(i, i) = w[i] + itau * k.diag[0][i];
    for (int d = 1; d <= 3 && i + d < n_; ++d) {
      at(i, i + d) = itau * k.diag[d][i];
      at(i + d, i) = itau * k.diag[d][i];
    }
  }
  const lapack_int info = LAPACKE_zgbtrf(LAPACK_COL_MAJOR, n_, n_, kl_, ku_,
                                         ab_.data(), ldab_, ipiv_.data());
  if (info != 0) throw solver_error("LinearSolveFailure", "zgbtrf returned " + std::to_string(info));
}

void CrankNicolsonSolver::solve(std::vector<cplx>& rhs) const {
  const lapack_int info =
      LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', n_, kl_, ku_, 1, ab_.data(),
                     ldab_, ipiv_.data(), rhs.data(), n_);
  if (info != 0) throw solver_error("LinearSolveFailure", "zgbtrs returned " + std::to_string(info));
}

}  // namespace inls::detail

namespace inls::detail {

void solve_banded_real(const std::array<std::vector<double>, 4>& upper, const std::array<std::vector<double>, 4>& lower,
                       std::vector<double>& rhs) {
  constexpr int kl = 3, ku = 3, ldab = 2 * kl + ku + 1;
  const int n = static_cast<int>(rhs.size());
  std::vector<double> ab(static_cast<std::size_t>(ldab) * n, 0.0);
  std::vector<lapack_int> ipiv(n);
  auto at = [&](int i, int j) -> double& { return ab[kl + ku + i - j + static_cast<std::size_t>(j) * ldab]; };
  for (int i = 0; i < n; ++i) {
    at(i, i) = upper[0][i];
    for (int d = 1; d <= 3 && i + d < n; ++d) {
      at(i, i + d) = upper[d][i];
      at(i + d, i) = lower[d][i];
    }
  }
  const lapack_int info = LAPACKE_dgbsv(LAPACK_COL_MAJOR, n, kl, ku, 1, ab.data(), ldab, ipiv.data(), rhs.data(), n);
  if (info != 0) throw solver_error("LinearSolveFailure", "dgbsv returned " + std::to_string(info));
}

}  // namespace inls::detail
