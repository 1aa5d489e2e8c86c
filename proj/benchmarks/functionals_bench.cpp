#include <complex>
#include <vector>

#include <benchmark/benchmark.h>

#include "inls/field.hpp"
#include "inls/functionals.hpp"

namespace inls {
namespace {

FieldState chirped_gaussian(int M) {
  const ProblemParams q = make_params(3, 3.0, 0.5);
  const GridPtr g = make_grid(3, M, 30.0);
  std::vector<cplx> v(g->size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = g->r[i];
    v[i] = std::exp(-r * r / 4.0) * std::polar(1.0, 0.2 * r * r);
  }
  return make_field(q, g, std::move(v));
}

void BM_Quantities(benchmark::State& state) {
  const FieldState u = chirped_gaussian(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Quantities qu = quantities(u);
    benchmark::DoNotOptimize(qu);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Quantities)->RangeMultiplier(4)->Range(1024, 16384);

void BM_VirialSnapshot(benchmark::State& state) {
  const FieldState u = chirped_gaussian(8192);
  for (auto _ : state) {
    VirialSnapshot v = virial_snapshot(u);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_VirialSnapshot);

}  // namespace
}  // namespace inls
