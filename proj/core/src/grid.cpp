#include "inls/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "inls/error.hpp"

namespace inls {

namespace {

// zeta(-sigma, 1/2): the leading origin term of the midpoint rule applied
// to r^sigma f(r).
double half_hurwitz_zeta(double sigma) {
  const double s = -sigma;
  if (std::abs(s) < 1e-14) return 0.0;
  return (std::pow(2.0, s) - 1.0) * boost::math::zeta(s);
}

std::vector<double> corrected_weights(const RadialGrid& g, double sigma) {
  std::vector<double> w(g.M);
  for (int i = 0; i < g.M; ++i) w[i] = g.surface * g.h * std::pow(g.r[i], sigma);
  w[0] -= g.surface * half_hurwitz_zeta(sigma) * std::pow(g.h, sigma + 1.0);
  return w;
}

// Folds an out-of-range node index back onto the grid and returns the sign.
int fold(int i, int M, double& sign) {
  sign = 1.0;
  if (i < 0) return -1 - i;
  if (i >= M) {
    sign = -1.0;
    return 2 * M - 1 - i;
  }
  return i;
}

template <class T>
std::vector<T> face_derivative_impl(const RadialGrid& g, std::span<const T> u) {
  if (u.size() != g.size()) throw validation_error("LengthMismatch", "field size differs from grid size");
  std::vector<T> d(g.M + 1);
  for (int f = 0; f <= g.M; ++f) {
    const auto& s = g.face_stencil[f];
    T acc{};
    for (int k = 0; k < 4; ++k) acc += s.c[k] * u[s.idx[k]];
    d[f] = acc;
  }
  return d;
}

template <class T>
double gradient_norm_impl(const RadialGrid& g, std::span<const T> u) {
  const auto d = face_derivative_impl(g, u);
  double acc = 0.0;
  for (int f = 0; f <= g.M; ++f) acc += g.face_weight[f] * std::norm(d[f]);
  return acc;
}

}  // namespace

double surface_area(int N) {
  const double half = 0.5 * N;
  return 2.0 * std::pow(std::numbers::pi, half) / boost::math::tgamma(half);
}

GridPtr make_grid(int N, int M, double R) {
  if (N < 1) throw validation_error("InvalidDimension", "grid dimension must be >= 1");
  if (M < 8) throw validation_error("InvalidGrid", "grid needs at least 8 nodes");
  if (!(R > 0.0) || !std::isfinite(R)) throw validation_error("InvalidGrid", "R_max must be positive");

  auto g = std::make_shared<RadialGrid>();
  g->N = N;
  g->M = M;
  g->R = R;
  g->h = R / M;
  g->surface = surface_area(N);
  g->r.resize(M);
  for (int i = 0; i < M; ++i) g->r[i] = (i + 0.5) * g->h;
  g->weight = corrected_weights(*g, N - 1.0);

  g->face_r.resize(M + 1);
  g->face_weight.resize(M + 1);
  g->face_stencil.resize(M + 1);
  const double inv = 1.0 / (24.0 * g->h);
  const std::array<double, 4> coef{1.0, -27.0, 27.0, -1.0};
  for (int f = 0; f <= M; ++f) {
    const double rf = f * g->h;
    g->face_r[f] = rf;
    double a = g->surface * g->h * std::pow(rf, N - 1.0);
    if (N == 1 && f == 0) a = g->surface * g->h;
    if (f == 0 || f == M) a *= 0.5;
    g->face_weight[f] = a;
    Stencil4& s = g->face_stencil[f];
    for (int k = 0; k < 4; ++k) {
      double sign = 1.0;
      s.idx[k] = fold(f - 2 + k, M, sign);
      s.c[k] = sign * coef[k] * inv;
    }
  }
  return g;
}

std::vector<double> singular_weights(const RadialGrid& g, double b) {
  return corrected_weights(g, g.N - 1.0 - b);
}

double integrate_radial(const RadialGrid& g, std::span<const double> f) {
  if (f.size() != g.size()) {
    throw validation_error("LengthMismatch", "expected " + std::to_string(g.size()) + " samples, got " +
                                                 std::to_string(f.size()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += g.weight[i] * f[i];
  return acc;
}

std::vector<cplx> face_derivative(const RadialGrid& g, std::span<const cplx> u) {
  return face_derivative_impl(g, u);
}

std::vector<double> face_derivative(const RadialGrid& g, std::span<const double> u) {
  return face_derivative_impl(g, u);
}

std::vector<cplx> nodal_derivative(const RadialGrid& g, std::span<const cplx> u) {
  if (u.size() != g.size()) throw validation_error("LengthMismatch", "field size differs from grid size");
  const int M = g.M;
  const double inv = 1.0 / (12.0 * g.h);
  auto at = [&](int i) {
    double sign = 1.0;
    const int j = fold(i, M, sign);
    return sign * u[j];
  };
  std::vector<cplx> d(M);
  for (int i = 0; i < M; ++i) {
    d[i] = (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) * inv;
  }
  return d;
}

double gradient_norm_sq(const RadialGrid& g, std::span<const cplx> u) { return gradient_norm_impl(g, u); }

double gradient_norm_sq(const RadialGrid& g, std::span<const double> u) { return gradient_norm_impl(g, u); }

BandedStiffness stiffness(const RadialGrid& g) {
  BandedStiffness k;
  for (auto& d : k.diag) d.assign(g.M, 0.0);
  for (int f = 0; f <= g.M; ++f) {
    const auto& s = g.face_stencil[f];
    const double a = g.face_weight[f];
    for (int x = 0; x < 4; ++x) {
      for (int y = 0; y < 4; ++y) {
        const int i = s.idx[x];
        const int j = s.idx[y];
        if (j < i) continue;
        k.diag[j - i][i] += a * s.c[x] * s.c[y];
      }
    }
  }
  return k;
}

std::vector<cplx> apply_stiffness(const BandedStiffness& k, std::span<const cplx> u) {
  const int M = static_cast<int>(u.size());
  std::vector<cplx> y(M);
  for (int i = 0; i < M; ++i) {
    cplx acc = k.diag[0][i] * u[i];
    for (int d = 1; d <= 3; ++d) {
      if (i + d < M) acc += k.diag[d][i] * u[i + d];
      if (i - d >= 0) acc += k.diag[d][i - d] * u[i - d];
    }
    y[i] = acc;
  }
  return y;
}

}  // namespace inls
