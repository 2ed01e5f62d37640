#include <cmath>

#include "quasilin/analysis.hpp"
#include "quasilin/errors.hpp"

namespace quasilin {

double rayleigh_quotient(const RadialGrid& grid, const VectorRef& w, const VectorRef& f_nodes, double p) {
  const double h = grid.spacing();
  double top = 0.0;
  for (int e = 0; e < grid.size() - 1; ++e)
    top += grid.edge_weights()[e] * h * std::pow(std::abs((w[e + 1] - w[e]) / h), p);
  double bottom = 0.0;
  for (int i = 0; i < grid.size(); ++i)
    if (!grid.is_dirichlet(i)) bottom += grid.control_weights()[i] * f_nodes[i] * std::pow(std::abs(w[i]), p);
  if (!(bottom > 0.0)) throw PreconditionError("Rayleigh quotient: f-weighted norm vanishes");
  return top / bottom;
}

EigenResult first_eigenvalue(const ScalarFunction& f, double p, const RadialDomain& domain, int n, double eps,
                             double rel_tol, int max_iterations) {
  if (!(p > 1.0)) throw ValidationError("first_eigenvalue requires p > 1");
  const GridPtr grid = build_grid(domain, n);
  const RadialGrid& G = *grid;
  const Vector fw = sample_weight(G, f);
  bool positive = false;
  for (int i = 0; i < G.size(); ++i) {
    if (G.is_dirichlet(i)) continue;
    if (fw[i] < 0.0) throw ValidationError("first_eigenvalue requires f >= 0");
    if (fw[i] > 0.0) positive = true;
  }
  if (!positive) throw PreconditionError("f vanishes identically: lambda_1(f) = +inf");

  const InnerSolveOptions inner{eps, 1e-12, 200, 60};
  const auto normalize = [&](Vector& w) {
    double s = 0.0;
    for (int i = 0; i < G.size(); ++i)
      if (!G.is_dirichlet(i)) s += G.control_weights()[i] * fw[i] * std::pow(std::abs(w[i]), p);
    w /= std::pow(s * domain.sphere_area(), 1.0 / p);
  };

  Vector w = inner_solve(G, fw, p, 0.0, inner).values;
  normalize(w);
  EigenResult result;
  result.quotient_history.push_back(rayleigh_quotient(G, w, fw, p));
  for (int k = 1; k <= max_iterations; ++k) {
    Vector rhs(G.size());
    for (int i = 0; i < G.size(); ++i) rhs[i] = fw[i] * std::copysign(std::pow(std::abs(w[i]), p - 1.0), w[i]);
    // The solution is close to w / lambda^(1/(p-1)).
    const Vector guess = w * std::pow(result.quotient_history.back(), -1.0 / (p - 1.0));
    Vector next = inner_solve(G, rhs, p, 0.0, inner, &guess).values;
    normalize(next);
    w = std::move(next);
    const double q = rayleigh_quotient(G, w, fw, p);
    const double prev = result.quotient_history.back();
    result.quotient_history.push_back(q);
    result.iterations = k;
    if (std::abs(q - prev) <= rel_tol * std::abs(q)) {
      result.lambda1 = q;
      result.eigenfield = GridField(grid, std::move(w));
      return result;
    }
  }
  throw SolverError("first_eigenvalue: Rayleigh quotient did not settle in " + std::to_string(max_iterations) +
                    " iterations");
}

}  // namespace quasilin
