#include <algorithm>
#include <cmath>

#include "quasilin/analysis.hpp"
#include "quasilin/errors.hpp"

namespace quasilin {

namespace {

bool is_linear_g(const NonlinearityPair& pair) {
  const double slope = pair.g()(1.0);
  for (double s : {0.25, 2.0, 8.0, 64.0}) {
    if (!pair.g().in_domain(s)) return false;
    if (std::abs(pair.g()(s) - slope * s) > 1e-9 * (1.0 + s)) return false;
  }
  return true;
}

BranchRow make_row(double lambda, const SolveOutcome& o) {
  BranchRow r;
  r.lambda = lambda;
  r.status = o.status;
  r.iterations = o.iterations;
  if (o.field) {
    r.sup_norm = o.norms.sup;
    r.w1p_seminorm = o.norms.w1p_seminorm;
  }
  return r;
}

}  // namespace

BranchTrace critical_lambda(const ProblemSpec& base, const BranchOptions& options) {
  base.validate();
  if (base.dirac_mass != 0.0) throw PreconditionError("critical_lambda: Dirac masses are not supported");
  const EndpointFlags& flags = base.pair.flags();
  if (flags.Lambda_finite() != Tristate::no)
    throw PreconditionError("critical_lambda needs Lambda = inf (pair '" + base.pair.id() + "')");
  if (is_linear_g(base.pair))
    throw PreconditionError("g is linear: the threshold is lambda_1(f), use first_eigenvalue instead");
  if (!is_superlinear(base.pair))
    throw PreconditionError("critical_lambda needs g(s)/s -> inf (pair '" + base.pair.id() + "')");
  if (!is_convex_near_infinity(base.pair))
    throw PreconditionError("critical_lambda needs g convex near infinity (pair '" + base.pair.id() + "')");
  if (!(options.lambda_start > 0.0) || !(options.rel_width > 0.0))
    throw ValidationError("critical_lambda: lambda_start and rel_width must be positive");

  BranchTrace trace;
  std::optional<GridField> best;  // minimal solution at lambda_lo
  const auto probe = [&](double lambda) {
    ProblemSpec spec = base;
    spec.lambda = lambda;
    // Minimal solutions increase with lambda, so the one at lambda_lo
    // lies below the target and is a valid start.
    SolveOutcome o = minimal_solution(spec, best ? &*best : nullptr);
    if (o.status == SolveStatus::error) throw SolverError("critical_lambda: probe at " + std::to_string(lambda) +
                                                          " failed: " + o.message);
    trace.rows.push_back(make_row(lambda, o));
    if (o.converged()) best = o.field;
    return o.converged();
  };

  double lambda = options.lambda_start;
  bool found_hi = false;
  for (int k = 0; k <= options.max_doublings; ++k, lambda *= 2.0) {
    if (probe(lambda)) {
      trace.lambda_lo = lambda;
    } else {
      trace.lambda_hi = lambda;
      found_hi = true;
      break;
    }
  }
  if (!found_hi) throw SolverError("critical_lambda: no divergence up to lambda = " + std::to_string(lambda / 2));

  while (trace.relative_width() > options.rel_width) {
    const double mid = 0.5 * (trace.lambda_lo + trace.lambda_hi);
    if (probe(mid))
      trace.lambda_lo = mid;
    else
      trace.lambda_hi = mid;
  }
  std::sort(trace.rows.begin(), trace.rows.end(),
            [](const BranchRow& a, const BranchRow& b) { return a.lambda < b.lambda; });
  trace.extremal = best;
  return trace;
}

ExtremalReport extremal_branch(const ProblemSpec& base, const BranchTrace& trace, int levels, double r) {
  base.validate();
  if (!(trace.lambda_hi > 0.0) || !(trace.lambda_lo < trace.lambda_hi))
    throw PreconditionError("extremal_branch: invalid lambda* bracket");
  if (trace.relative_width() > 1e-3)
    throw PreconditionError("extremal_branch: lambda* bracket wider than 1e-3 relative (" +
                            std::to_string(trace.relative_width()) + ")");
  if (levels < 3) throw ValidationError("extremal_branch needs at least 3 levels");

  const double lambda_star = trace.lambda_star();
  std::vector<GridField> fields;
  std::vector<BranchRow> rows;
  for (int j = 1; j <= levels; ++j) {
    ProblemSpec spec = base;
    spec.lambda = lambda_star * (1.0 - std::ldexp(1.0, -j));
    SolveOutcome o = minimal_solution(spec, fields.empty() ? nullptr : &fields.back());
    if (!o.converged())
      throw SolverError("extremal_branch: minimal solution at lambda = " + std::to_string(spec.lambda) +
                        " did not converge (" + to_string(o.status) + ")");
    rows.push_back(make_row(spec.lambda, o));
    fields.push_back(*o.field);
  }

  // Geometric-tail extrapolation with the ratio of successive increments.
  const auto extrapolate = [](double a, double b, double c, double& ratio) {
    const double d1 = b - a;
    const double d2 = c - b;
    ratio = d1 != 0.0 ? d2 / d1 : 0.0;
    if (!(ratio > 0.0 && ratio < 1.0)) return c;
    return c + d2 * ratio / (1.0 - ratio);
  };
  const int J = levels - 1;
  double q_sup = 0.0, q_semi = 0.0;
  const double sup_x = extrapolate(rows[J - 2].sup_norm, rows[J - 1].sup_norm, rows[J].sup_norm, q_sup);
  const double semi_x =
      extrapolate(rows[J - 2].w1p_seminorm, rows[J - 1].w1p_seminorm, rows[J].w1p_seminorm, q_semi);
  const double factor = q_sup > 0.0 && q_sup < 1.0 ? q_sup / (1.0 - q_sup) : 0.0;
  Vector v_star = fields[J].values() + factor * (fields[J].values() - fields[J - 1].values());

  ExtremalReport rep{.v_star = GridField(fields[J].grid_ptr(), std::move(v_star), FieldKind::v_field)};
  rep.approach = std::move(rows);
  rep.sup_extrapolated = sup_x;
  rep.seminorm_extrapolated = semi_x;
  rep.seminorm_bounded_observed = std::isfinite(semi_x) && q_semi < 1.0;

  const int N = base.domain.dim();
  if (N <= base.p) {
    rep.sobolev_bypassed = true;
    rep.bounded_expected = true;
    rep.w1p_expected = true;
  } else {
    rep.predicates = admissibility_predicates(base.p, N, r, std::nullopt, std::nullopt);
    rep.w1p_expected = rep.predicates->limi_w1p.value_or(false);
    rep.bounded_expected = rep.predicates->limi_iii.value_or(false) || rep.predicates->limi_i.value_or(false) ||
                           rep.predicates->limi_ii.value_or(false);
  }
  return rep;
}

}  // namespace quasilin
