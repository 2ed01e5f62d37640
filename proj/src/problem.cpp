#include "quasilin/problem.hpp"

#include <cmath>

#include "quasilin/errors.hpp"

namespace quasilin {

void ProblemSpec::validate() const {
  if (!(p > 1.0) || !std::isfinite(p)) throw ValidationError("p must be a finite real > 1");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be finite and >= 0");
  if (!(dirac_mass >= 0.0) || !std::isfinite(dirac_mass))
    throw ValidationError("Dirac mass c must be finite and >= 0");
  if (n < 3) throw ValidationError("grid needs at least 3 nodes");
  if (pair.p() != p)
    throw ValidationError("nonlinearity pair '" + pair.id() + "' is built for p = " +
                          std::to_string(pair.p()) + ", problem has p = " + std::to_string(p));
  if (dirac_mass > 0.0) {
    if (!domain.is_ball()) throw PreconditionError("a Dirac mass needs a ball domain");
    if (!(p < domain.dim()))
      throw PreconditionError("a Dirac mass at the origin needs p < N (got p = " + std::to_string(p) +
                              ", N = " + std::to_string(domain.dim()) + ")");
  }
}

GridPtr ProblemSpec::make_grid() const { return build_grid(domain, n); }

namespace {

void require_kind(const GridField& field, FieldKind wanted, const char* what) {
  if (field.kind() != wanted)
    throw ValidationError(std::string(what) + " expects a " + to_string(wanted) + "-field, got " +
                          to_string(field.kind()));
}

void require_below_endpoint(const GridField& field, ExtReal endpoint, const char* name) {
  if (endpoint.is_infinite()) return;
  for (int i = 0; i < field.size(); ++i)
    if (field[i] >= endpoint.value())
      throw DomainError(std::string("value at node ") + std::to_string(i) + " reaches " + name + " = " +
                        endpoint.to_string());
}

// u-side Dirac mass implied by a v-side mass c.
double u_side_mass(const ProblemSpec& spec) {
  if (spec.dirac_mass == 0.0) return 0.0;
  const MassTransferRule rule = singular_mass_transfer(spec.pair, spec.dirac_mass);
  if (rule.kind != MassCase::transfer || !rule.multiplier || rule.multiplier->is_infinite()) return 0.0;
  return spec.dirac_mass / rule.multiplier->value();
}

}  // namespace

ResidualReport residual(const GridField& field, const ProblemSpec& spec, Equation eq) {
  const RadialGrid& grid = field.grid();
  const Flux law = spec.flux();
  const Vector f = sample_weight(grid, spec.f);
  const int n = grid.size();
  ResidualReport r;
  r.nodal = Vector::Zero(n);

  if (eq == Equation::v_equation) {
    require_kind(field, FieldKind::v_field, "v-equation residual");
    require_below_endpoint(field, spec.pair.v_endpoint(), "Lambda");
    const Vector op = p_laplacian(grid, field.values(), law, spec.dirac_mass);
    for (int i = 0; i < n; ++i)
      if (!grid.is_dirichlet(i)) r.nodal[i] = spec.lambda * f[i] * spec.pair.source(field[i]) - op[i];
  } else {
    require_kind(field, FieldKind::u_field, "u-equation residual");
    require_below_endpoint(field, spec.pair.u_endpoint(), "L");
    const Vector op = p_laplacian(grid, field.values(), law, u_side_mass(spec));
    const Vector grad = nodal_gradient(grid, field.values());
    for (int i = 0; i < n; ++i) {
      if (grid.is_dirichlet(i)) continue;
      const double u = field[i];
      const double rhs = spec.pair.beta()(u) * std::pow(std::abs(grad[i]), spec.p) +
                         spec.lambda * f[i] * spec.pair.u_weight(u);
      r.nodal[i] = rhs - op[i];
    }
  }

  r.excluded = spec.dirac_mass > 0.0 ? std::min(spec.tol.singular_exclude, n - 1) : 0;
  Vector admissible = r.nodal.cwiseAbs();
  for (int i = 0; i < r.excluded; ++i) {
    r.excluded_sup = std::max(r.excluded_sup, admissible[i]);
    admissible[i] = 0.0;
  }
  r.sup = admissible.maxCoeff();
  r.l1 = integrate(grid, admissible);
  return r;
}

double energy_functional(const GridField& field, const ProblemSpec& spec) {
  require_kind(field, FieldKind::v_field, "energy functional");
  require_below_endpoint(field, spec.pair.v_endpoint(), "Lambda");
  const RadialGrid& grid = field.grid();
  const Flux law = spec.flux();
  const Vector f = sample_weight(grid, spec.f);
  const double h = grid.spacing();
  const double area = grid.domain().sphere_area();
  double grad = 0.0;
  for (int e = 0; e < grid.size() - 1; ++e)
    grad += grid.edge_weights()[e] * h * law.primitive((field[e + 1] - field[e]) / h);
  double source = 0.0;
  for (int i = 0; i < grid.size(); ++i)
    if (!grid.is_dirichlet(i)) source += grid.control_weights()[i] * f[i] * spec.pair.source_primitive(field[i]);
  return area * (grad - spec.lambda * source) - spec.dirac_mass * field[0];
}

Vector energy_gradient(const GridField& field, const ProblemSpec& spec) {
  require_kind(field, FieldKind::v_field, "energy gradient");
  const RadialGrid& grid = field.grid();
  const Vector f = sample_weight(grid, spec.f);
  const Vector op = p_laplacian(grid, field.values(), spec.flux(), spec.dirac_mass);
  const double area = grid.domain().sphere_area();
  Vector g = Vector::Zero(grid.size());
  for (int i = 0; i < grid.size(); ++i)
    if (!grid.is_dirichlet(i))
      g[i] = area * grid.control_weights()[i] * (op[i] - spec.lambda * f[i] * spec.pair.source(field[i]));
  return g;
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::diverged: return "diverged";
    case SolveStatus::max_iter: return "max-iter";
    case SolveStatus::error: return "error";
  }
  return "error";
}

std::optional<double> SolveOutcome::metric(const std::string& key) const {
  for (const auto& [k, v] : metrics)
    if (k == key) return v;
  return std::nullopt;
}

}  // namespace quasilin
