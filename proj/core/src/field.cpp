#include "inls/field.hpp"

#include "inls/error.hpp"

namespace inls {

FieldState make_field(const ProblemParams& params, GridPtr grid, std::vector<cplx> values, double time) {
  if (!grid) throw validation_error("NullGrid", "field requires a grid");
  if (values.size() != grid->size()) throw validation_error("LengthMismatch", "field size differs from grid size");
  if (grid->N != params.N) throw validation_error("DimensionMismatch", "grid dimension differs from params.N");
  return FieldState{params, std::move(grid), std::move(values), time};
}

FieldState make_real_field(const ProblemParams& params, GridPtr grid, std::span<const double> values) {
  std::vector<cplx> v(values.begin(), values.end());
  return make_field(params, std::move(grid), std::move(v));
}

FieldState quad_phase(const FieldState& u, double gamma) {
  FieldState out = u;
  if (gamma == 0.0) return out;
  const auto& r = u.grid->r;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= std::polar(1.0, gamma * r[i] * r[i]);
  return out;
}

FieldState scaled(const FieldState& u, double factor) {
  FieldState out = u;
  for (auto& v : out.values) v *= factor;
  return out;
}

}  // namespace inls
