#include <cmath>
#include <limits>

#include "quasilin/errors.hpp"
#include "quasilin/solver.hpp"

namespace quasilin {

namespace {

constexpr double kRoundoff = std::numeric_limits<double>::epsilon();

struct Residual {
  Vector g;         // gradient of the discrete energy over the unknowns
  Vector scale;     // admissible size of |g_j|
  double sup = 0.0;  // max |g_j| / m_i
  bool converged = false;
};

// G_j = F_{i-1/2} - F_{i+1/2} - m_i rhs_i for the unknown i = first + j.
Residual evaluate(const RadialGrid& grid, const Vector& u, const Vector& rhs, const Flux& law,
                  double center_flux, double tol, double rhs_sup) {
  const int first = grid.first_unknown();
  const int m = grid.unknown_count();
  const Vector flux = edge_fluxes(grid, u, law);
  // Flux error caused by rounding of the nodal values, a_e phi'(s_e) eps |U| / h.
  const double h = grid.spacing();
  Vector flux_noise(flux.size());
  for (int e = 0; e < flux.size(); ++e)
    flux_noise[e] = grid.edge_weights()[e] * law.dphi((u[e + 1] - u[e]) / h) * kRoundoff *
                    (std::abs(u[e]) + std::abs(u[e + 1])) / h;
  Residual r{Vector(m), Vector(m)};
  for (int j = 0; j < m; ++j) {
    const int i = first + j;
    const double inner = i == 0 ? center_flux : flux[i - 1];
    const double mi = grid.control_weights()[i];
    const double load = mi * rhs[i];
    r.g[j] = inner - flux[i] - load;
    // Cancellation between large fluxes limits what is attainable; without
    // the floor a pinned Dirac flux at the center never meets a relative
    // tolerance scaled by the tiny center cell.
    const double noise = 64 * (kRoundoff * (std::abs(inner) + std::abs(flux[i]) + std::abs(load)) +
                               (i > 0 ? flux_noise[i - 1] : 0.0) + flux_noise[i]);
    r.scale[j] = tol * mi * (1.0 + rhs_sup) + noise;
    r.sup = std::max(r.sup, std::abs(r.g[j]) / mi);
  }
  r.converged = (r.g.cwiseAbs().array() <= r.scale.array()).all();
  return r;
}

// Inverse of the unregularized flux, s = sign(F) |F|^{1/(p-1)}.
double inverse_flux(double F, double p) { return std::copysign(std::pow(std::abs(F), 1.0 / (p - 1.0)), F); }

// Radial conservation fixes the half-node fluxes up to the flux entering
// the first unknown: F_{i+1/2} = F_{i-1/2} - m_i rhs_i. Slopes follow by
// inverting phi and values by summing inward from the outer boundary. On a
// ball the entering flux is the center value; on an interval it is the
// root of sum_e h s_e = 0, found by bisection.
Vector integrated_guess(const RadialGrid& grid, const Vector& rhs, double p, double center_flux) {
  const int n = grid.size();
  const double h = grid.spacing();
  Vector load = Vector::Zero(n - 1);  // load[e] = sum of m_i rhs_i over first..e
  double acc = 0.0;
  for (int e = 0; e < n - 1; ++e) {
    if (!grid.is_dirichlet(e)) acc += grid.control_weights()[e] * rhs[e];
    load[e] = acc;
  }
  const auto slopes = [&](double entering) {
    Vector s(n - 1);
    for (int e = 0; e < n - 1; ++e) s[e] = inverse_flux((entering - load[e]) / grid.edge_weights()[e], p);
    return s;
  };

  double entering = center_flux;
  if (!grid.domain().is_ball()) {
    double lo = std::min(0.0, load.minCoeff());
    double hi = std::max(0.0, load.maxCoeff());
    for (int k = 0; k < 200 && hi - lo > 4 * kRoundoff * std::max(std::abs(lo), std::abs(hi)); ++k) {
      const double mid = 0.5 * (lo + hi);
      (slopes(mid).sum() > 0.0 ? hi : lo) = mid;
    }
    entering = 0.5 * (lo + hi);
  }
  const Vector s = slopes(entering);
  Vector u = Vector::Zero(n);
  for (int i = n - 2; i >= grid.first_unknown(); --i) u[i] = u[i + 1] - h * s[i];
  return u;
}

}  // namespace

InnerSolveReport inner_solve(const RadialGrid& grid, const VectorRef& rhs_in, double p, double dirac_mass,
                             const InnerSolveOptions& options, const Vector* initial_guess) {
  if (!(p > 1.0)) throw ValidationError("inner solve requires p > 1");
  if (rhs_in.size() != grid.size()) throw ValidationError("inner solve: right side has the wrong length");
  if (!rhs_in.allFinite()) throw ValidationError("inner solve: right side is not finite");
  if (dirac_mass < 0.0) throw ValidationError("inner solve: negative Dirac mass");
  if (dirac_mass > 0.0 && !grid.domain().is_ball())
    throw PreconditionError("inner solve: a Dirac mass needs a ball domain");

  const Vector rhs = rhs_in;
  const Flux law{p, options.eps};
  const double center_flux = -dirac_mass / grid.domain().sphere_area();
  const int first = grid.first_unknown();
  const int m = grid.unknown_count();
  double rhs_sup = 0.0;
  for (int i = 0; i < grid.size(); ++i)
    if (!grid.is_dirichlet(i)) rhs_sup = std::max(rhs_sup, std::abs(rhs[i]));

  InnerSolveReport report;
  if (rhs_sup == 0.0 && dirac_mass == 0.0) {
    report.values = Vector::Zero(grid.size());
    return report;
  }

  const auto energy = [&](const Vector& x) { return discrete_energy(grid, x, rhs, law, dirac_mass); };
  Vector u = integrated_guess(grid, rhs, p, center_flux);
  double e = energy(u);
  if (initial_guess && initial_guess->size() == grid.size() && initial_guess->allFinite()) {
    Vector warm = *initial_guess;
    warm[grid.size() - 1] = 0.0;
    if (!grid.domain().is_ball()) warm[0] = 0.0;
    const double e_warm = energy(warm);
    if (e_warm < e) {
      u = std::move(warm);
      e = e_warm;
    }
  }
  Residual res = evaluate(grid, u, rhs, law, center_flux, options.tol, rhs_sup);

  for (int it = 0; it < options.max_newton; ++it) {
    if (res.converged) {
      report.values = std::move(u);
      report.newton_iterations = it;
      report.residual_sup = res.sup;
      return report;
    }
    const Vector d = solve_spd(flux_jacobian(grid, u, law), Vector(-res.g));
    if (!d.allFinite()) throw SolverError("inner solve: singular Newton system");
    const double slope = res.g.dot(d);
    const double slack = 16 * kRoundoff * (std::abs(e) + control_pairing(grid, rhs.cwiseAbs(), u.cwiseAbs()) +
                                           std::abs(center_flux * u[0]) + 1e-300);

    double t = 1.0;
    bool accepted = false;
    for (int k = 0; k <= options.max_halvings; ++k, t *= 0.5) {
      Vector trial = u;
      trial.segment(first, m) += t * d;
      const double et = energy(trial);
      if (!std::isfinite(et)) continue;
      const bool armijo = et <= e + 1e-4 * t * slope;
      bool flat = false;
      Residual rt;
      if (!armijo && std::abs(et - e) <= slack) {
        // Energy differences are below round-off; fall back on the residual.
        rt = evaluate(grid, trial, rhs, law, center_flux, options.tol, rhs_sup);
        flat = rt.g.norm() < res.g.norm();
      }
      if (armijo || flat) {
        u = std::move(trial);
        e = et;
        res = flat ? std::move(rt) : evaluate(grid, u, rhs, law, center_flux, options.tol, rhs_sup);
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw SolverError("inner solve: line search stalled after " + std::to_string(options.max_halvings) +
                        " halvings (residual " + std::to_string(res.sup) + ")");
  }
  if (res.converged) {
    report.values = std::move(u);
    report.newton_iterations = options.max_newton;
    report.residual_sup = res.sup;
    return report;
  }
  throw SolverError("inner solve: no convergence in " + std::to_string(options.max_newton) +
                    " Newton steps (residual " + std::to_string(res.sup) + ")");
}

GridField inner_solve(const GridField& rhs, double p, double dirac_mass, const InnerSolveOptions& options) {
  InnerSolveReport r = inner_solve(rhs.grid(), rhs.values(), p, dirac_mass, options);
  return GridField(rhs.grid_ptr(), std::move(r.values), FieldKind::generic);
}

}  // namespace quasilin
