#include "inls_cli/sampling.hpp"

#include <cmath>

namespace inls::cli {

FieldState random_field(const ProblemParams& params, GridPtr grid, std::mt19937_64& rng, bool complex_valued) {
  std::uniform_int_distribution<int> terms(1, 3);
  std::uniform_int_distribution<int> power(0, 1);
  std::uniform_real_distribution<double> amp(0.2, 2.0);
  std::uniform_real_distribution<double> width(0.6, 3.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> chirp(-0.8, 0.8);
  const int n = terms(rng);
  std::vector<cplx> v(grid->size(), cplx{});
  for (int k = 0; k < n; ++k) {
    const double A = amp(rng), w = width(rng);
    const int m = power(rng);
    const double th = complex_valued ? angle(rng) : (k % 2 ? M_PI : 0.0);
    const double g = complex_valued ? chirp(rng) : 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double r = grid->r[i];
      const double env = A * std::pow(r * r, m) * std::exp(-r * r / (w * w));
      v[i] += env * std::polar(1.0, th + g * r * r);
    }
  }
  return make_field(params, std::move(grid), std::move(v));
}

FieldState random_compact_field(const ProblemParams& params, GridPtr grid, double support, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> expo(1.0, 3.0);
  const double c1 = coef(rng), c2 = coef(rng), e = expo(rng);
  std::vector<cplx> v(grid->size(), cplx{});
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = grid->r[i] / support;
    if (x >= 1.0) continue;
    v[i] = std::pow(1.0 - x * x, e) * (1.5 + c1 * x * x + 0.5 * c2 * x * x * x * x);
  }
  return make_field(params, std::move(grid), std::move(v));
}

}  // namespace inls::cli
