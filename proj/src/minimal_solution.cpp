#include <cmath>

#include "quasilin/errors.hpp"
#include "quasilin/solver.hpp"

namespace quasilin {

namespace {

SolveOutcome finish(SolveOutcome out, const ProblemSpec& spec, const GridPtr& grid, Vector v) {
  out.field = GridField(grid, std::move(v), FieldKind::v_field);
  out.norms = compute_norms(*out.field, spec.p, {1.0, 2.0}, spec.f);
  if (out.converged()) out.residuals = residual(*out.field, spec, Equation::v_equation);
  return out;
}

// v^{k+1} = inner_solve(lambda f source(v^k)); the Dirac mass, if any, is
// carried by every inner solve.
SolveOutcome monotone_iteration(const ProblemSpec& spec, const GridField* start) {
  const GridPtr grid = spec.make_grid();
  const RadialGrid& G = *grid;
  const Tolerances& tol = spec.tol;
  const InnerSolveOptions inner = InnerSolveOptions::from(tol);
  const Vector f = sample_weight(G, spec.f);
  const ExtReal Lambda = spec.pair.v_endpoint();
  const int n = G.size();

  Vector v = Vector::Zero(n);
  if (start) {
    if (start->size() != n) throw ValidationError("start field lives on a different grid");
    v = start->values();
  }

  SolveOutcome out;
  Vector rhs(n);
  Vector previous = v;
  for (int k = 1; k <= tol.max_iterations; ++k) {
    out.iterations = k;
    bool finite = true;
    try {
      for (int i = 0; i < n; ++i) rhs[i] = G.is_dirichlet(i) ? 0.0 : spec.lambda * f[i] * spec.pair.source(v[i]);
      finite = rhs.allFinite();
    } catch (const DomainError&) {
      finite = false;
    }
    if (!finite) {
      out.status = SolveStatus::diverged;
      out.message = "right side left the finite range at iteration " + std::to_string(k);
      return finish(std::move(out), spec, grid, previous);
    }

    const Vector* guess = k == 1 && !start ? nullptr : &v;
    Vector next = inner_solve(G, rhs, spec.p, spec.dirac_mass, inner, guess).values;

    const double sup_next = next.cwiseAbs().maxCoeff();
    const Vector change = next - v;
    const double slack = 1e-8 * (1.0 + sup_next);
    if (change.minCoeff() < -slack) {
      out.status = SolveStatus::error;
      out.message = "iterates stopped increasing at iteration " + std::to_string(k) + " (drop " +
                    std::to_string(-change.minCoeff()) + ")";
      return finish(std::move(out), spec, grid, next);
    }
    previous = v;
    v = std::move(next);

    if (sup_next > tol.blowup || !std::isfinite(sup_next)) {
      out.status = SolveStatus::diverged;
      out.message = "sup norm passed " + std::to_string(tol.blowup) + " at iteration " + std::to_string(k);
      return finish(std::move(out), spec, grid, previous);
    }
    if (Lambda.is_finite() && v.maxCoeff() >= Lambda.value() - tol.fixed_point) {
      out.status = SolveStatus::diverged;
      out.message = "iterate reached Lambda = " + Lambda.to_string() + " at iteration " + std::to_string(k);
      return finish(std::move(out), spec, grid, previous);
    }
    if (change.cwiseAbs().maxCoeff() <= tol.fixed_point) {
      out.status = SolveStatus::converged;
      return finish(std::move(out), spec, grid, std::move(v));
    }
  }
  // Iterates are nondecreasing, so reaching the cap means sustained growth.
  out.status = SolveStatus::diverged;
  out.message = "still growing after " + std::to_string(tol.max_iterations) + " iterations";
  return finish(std::move(out), spec, grid, std::move(v));
}

}  // namespace

SolveOutcome minimal_solution(const ProblemSpec& spec, const GridField* start) {
  spec.validate();
  return monotone_iteration(spec, start);
}

SolveOutcome dirac_solve(const ProblemSpec& spec) {
  spec.validate();
  if (spec.dirac_mass == 0.0) return monotone_iteration(spec, nullptr);
  const MassTransferRule rule = singular_mass_transfer(spec.pair, spec.dirac_mass);
  if (rule.kind == MassCase::forbid_v_side)
    throw PreconditionError("pair '" + spec.pair.id() + "' has Lambda = " + spec.pair.v_endpoint().to_string() +
                            " < inf: a Dirac mass on the v-equation admits no solution (forbid-v-side)");
  SolveOutcome out = monotone_iteration(spec, nullptr);
  out.mass_rule = rule;
  if (out.converged()) {
    out.companion = transform_solution(*out.field, spec.pair, TransformDirection::v_to_u);
    const RadialGrid& G = out.field->grid();
    const int K = std::min(spec.tol.singular_exclude, G.size() - 2);
    out.metrics.emplace_back("flux_v_at_K", enclosed_mass(*out.field, spec.p, K));
    out.metrics.emplace_back("flux_u_at_K", enclosed_mass(*out.companion, spec.p, K));
    out.metrics.emplace_back("w1p_seminorm_u",
                             compute_norms(*out.companion, spec.p, {}, spec.f).w1p_seminorm);
  }
  return out;
}

}  // namespace quasilin
