#include "quasilin/norms.hpp"

#include <cmath>

#include "quasilin/errors.hpp"
#include "quasilin/p_laplacian.hpp"

namespace quasilin {

double NormReport::lk_norm(double k) const {
  for (const auto& [kk, v] : lk)
    if (kk == k) return v;
  throw ValidationError("norm report has no L^k entry for the requested k");
}

double integrate(const RadialGrid& grid, const VectorRef& values) {
  if (values.size() != grid.size())
    throw ValidationError("integrate: " + std::to_string(values.size()) + " values for " +
                          std::to_string(grid.size()) + " nodes");
  return grid.quadrature_weights().dot(values);
}

Vector nodal_gradient(const RadialGrid& grid, const VectorRef& u) {
  const int n = grid.size();
  const double h = grid.spacing();
  Vector grad(n);
  for (int i = 1; i < n - 1; ++i) grad[i] = (u[i + 1] - u[i - 1]) / (2 * h);
  grad[n - 1] = (u[n - 1] - u[n - 2]) / h;
  grad[0] = grid.domain().is_ball() ? 0.0 : (u[1] - u[0]) / h;
  return grad;
}

Vector sample_weight(const RadialGrid& grid, const ScalarFunction& f) {
  Vector out(grid.size());
  if (const auto c = f.constant_value()) {
    out.setConstant(*c);
    return out;
  }
  for (int i = 0; i < grid.size(); ++i) out[i] = f(grid.node(i));
  return out;
}

NormReport compute_norms(const GridField& field, double p, const std::vector<double>& k_list,
                         const ScalarFunction& f) {
  const RadialGrid& grid = field.grid();
  const Vector abs_u = field.values().cwiseAbs();
  NormReport r;
  r.sup = abs_u.maxCoeff();
  for (double k : k_list) {
    if (!(k >= 1.0)) throw ValidationError("L^k norms need k >= 1");
    r.lk.emplace_back(k, std::pow(integrate(grid, abs_u.array().pow(k).matrix()), 1.0 / k));
  }
  const Vector grad = nodal_gradient(grid, field.values()).cwiseAbs();
  r.w1p_seminorm = std::pow(integrate(grid, grad.array().pow(p).matrix()), 1.0 / p);
  const Vector fw = sample_weight(grid, f);
  r.weighted_p = integrate(grid, (fw.array() * abs_u.array().pow(p)).matrix());
  return r;
}

double enclosed_mass(const GridField& field, double p, int node) {
  const RadialGrid& grid = field.grid();
  if (node <= 0 || node >= grid.size() - 1) throw ValidationError("enclosed_mass: node must be interior");
  const Vector flux = edge_fluxes(grid, field.values(), Flux{p, kDefaultEpsilon});
  return -grid.domain().sphere_area() * 0.5 * (flux[node - 1] + flux[node]);
}

}  // namespace quasilin
