#include "quasilin/errors.hpp"
#include "quasilin/solver.hpp"

namespace quasilin {

GridField transform_solution(const GridField& field, const NonlinearityPair& pair, TransformDirection direction) {
  const bool to_v = direction == TransformDirection::u_to_v;
  if (field.kind() == (to_v ? FieldKind::v_field : FieldKind::u_field))
    throw ValidationError(std::string("transform ") + (to_v ? "u -> v" : "v -> u") + " applied to a " +
                          to_string(field.kind()) + "-field");
  const ExtReal endpoint = to_v ? pair.u_endpoint() : pair.v_endpoint();
  Vector out(field.size());
  for (int i = 0; i < field.size(); ++i) {
    double x = field[i];
    if (x < 0.0 && x > -1e-12) x = 0.0;  // round-off below the zero boundary value
    if (x < 0.0 || (endpoint.is_finite() && x >= endpoint.value()))
      throw DomainError("node " + std::to_string(i) + ": value " + std::to_string(x) + " outside [0, " +
                        endpoint.to_string() + ")");
    out[i] = to_v ? pair.psi(x) : pair.h(x);
  }
  return GridField(field.grid_ptr(), std::move(out), to_v ? FieldKind::v_field : FieldKind::u_field);
}

}  // namespace quasilin
