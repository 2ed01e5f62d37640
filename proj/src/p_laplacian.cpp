#include "quasilin/p_laplacian.hpp"

#include "quasilin/errors.hpp"

namespace quasilin {

Vector edge_fluxes(const RadialGrid& grid, const VectorRef& u, const Flux& law) {
  const int n = grid.size();
  const double h = grid.spacing();
  Vector flux(n - 1);
  for (int e = 0; e < n - 1; ++e) flux[e] = grid.edge_weights()[e] * law.phi((u[e + 1] - u[e]) / h);
  return flux;
}

Vector p_laplacian(const RadialGrid& grid, const VectorRef& u, const Flux& law, double dirac_mass) {
  const int n = grid.size();
  const Vector flux = edge_fluxes(grid, u, law);
  const double center_flux = -dirac_mass / grid.domain().sphere_area();
  Vector out(n);
  for (int i = 0; i < n; ++i) {
    if (grid.is_dirichlet(i)) {
      out[i] = u[i];
      continue;
    }
    const double inner = i == 0 ? center_flux : flux[i - 1];
    out[i] = -(flux[i] - inner) / grid.control_weights()[i];
  }
  return out;
}

GridField apply_p_laplacian(const GridField& field, double p, double eps) {
  if (!(p > 1.0)) throw ValidationError("p-Laplacian requires p > 1");
  Vector out = p_laplacian(field.grid(), field.values(), Flux{p, eps});
  return GridField(field.grid_ptr(), std::move(out), FieldKind::generic);
}

double control_pairing(const RadialGrid& grid, const VectorRef& a, const VectorRef& b) {
  return (grid.control_weights().array() * a.array() * b.array()).sum();
}

double flux_pairing(const RadialGrid& grid, const VectorRef& u, const VectorRef& w, const Flux& law) {
  const Vector flux = edge_fluxes(grid, u, law);
  double sum = 0.0;
  for (int e = 0; e < flux.size(); ++e) sum += flux[e] * (w[e + 1] - w[e]);
  return sum;
}

SymmetricTridiagonal<double> flux_jacobian(const RadialGrid& grid, const VectorRef& u, const Flux& law) {
  const int first = grid.first_unknown();
  const int m = grid.unknown_count();
  const double h = grid.spacing();
  // k_e = a_e phi'(s_e) / h couples nodes e and e+1.
  const auto k = [&](int e) { return grid.edge_weights()[e] * law.dphi((u[e + 1] - u[e]) / h) / h; };
  SymmetricTridiagonal<double> J{Vector::Zero(m), Vector::Zero(std::max(m - 1, 0))};
  for (int j = 0; j < m; ++j) {
    const int i = first + j;
    const double left = i > 0 ? k(i - 1) : 0.0;
    const double right = k(i);
    J.diag[j] = left + right;
    if (j + 1 < m) J.off[j] = -right;
  }
  return J;
}

double discrete_energy(const RadialGrid& grid, const VectorRef& u, const VectorRef& rhs, const Flux& law,
                       double dirac_mass) {
  const int n = grid.size();
  const double h = grid.spacing();
  double e = 0.0;
  for (int k = 0; k < n - 1; ++k) e += grid.edge_weights()[k] * h * law.primitive((u[k + 1] - u[k]) / h);
  e -= control_pairing(grid, rhs, u);
  if (dirac_mass != 0.0) e -= dirac_mass / grid.domain().sphere_area() * u[0];
  return e;
}

}  // namespace quasilin
