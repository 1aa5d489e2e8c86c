#pragma once

#include <array>
#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace inls {

using cplx = std::complex<double>;

// Four-point stencil acting on node values, ghosts already folded in.
struct Stencil4 {
  std::array<int, 4> idx{};
  std::array<double, 4> c{};
};

// Uniform half-offset radial grid r_i = (i + 1/2) h on [0, R].
//
// Node weights integrate against the full measure |S^{N-1}| r^{N-1} dr; they
// are midpoint weights plus the generalised Euler-Maclaurin correction at the
// origin, so odd N integrates smooth radial functions to spectral accuracy
// and even N to second order.
//
// Gradients live on faces r = f h (f = 0..M): u is mirrored evenly across
// r = 0 and oddly across r = R (homogeneous Dirichlet), and a fourth-order
// staggered difference gives u_r at every face.
struct RadialGrid {
  int N = 1;
  int M = 0;
  double R = 0.0;
  double h = 0.0;
  double surface = 0.0;           // |S^{N-1}|; 2 for N = 1
  std::vector<double> r;          // nodes
  std::vector<double> weight;     // node quadrature weights (measure included)
  std::vector<double> face_r;     // face radii f h
  std::vector<double> face_weight;
  std::vector<Stencil4> face_stencil;

  std::size_t size() const { return r.size(); }
};

using GridPtr = std::shared_ptr<const RadialGrid>;

// Throws a validation Error for N < 1, M < 8 or R <= 0.
GridPtr make_grid(int N, int M, double R);

double surface_area(int N);

// Weights for integrands carrying an extra r^{-b} factor.
std::vector<double> singular_weights(const RadialGrid& g, double b);

// Sum of weight_i f_i; throws LengthMismatch when sizes differ.
double integrate_radial(const RadialGrid& g, std::span<const double> f);

// u_r on the M + 1 faces.
std::vector<cplx> face_derivative(const RadialGrid& g, std::span<const cplx> u);
std::vector<double> face_derivative(const RadialGrid& g, std::span<const double> u);

// u_r at the nodes (fourth-order centred, same ghost convention).
std::vector<cplx> nodal_derivative(const RadialGrid& g, std::span<const cplx> u);

// Discrete Dirichlet form: sum_f a_f |D_f u|^2.
double gradient_norm_sq(const RadialGrid& g, std::span<const cplx> u);
double gradient_norm_sq(const RadialGrid& g, std::span<const double> u);

// Symmetric banded stiffness matrix with grad_sq(u) = u^* K u.
// diag[d][i] holds K(i, i + d) for d = 0..3.
struct BandedStiffness {
  std::array<std::vector<double>, 4> diag;
};

BandedStiffness stiffness(const RadialGrid& g);

// y = K u
std::vector<cplx> apply_stiffness(const BandedStiffness& k, std::span<const cplx> u);

}  // namespace inls
