#pragma once

#include <optional>

#include "quasilin/grid.hpp"
#include "quasilin/problem.hpp"

namespace quasilin {

struct InnerSolveOptions {
  double eps = kDefaultEpsilon;
  double tol = 1e-11;
  int max_newton = 200;
  int max_halvings = 60;

  static InnerSolveOptions from(const Tolerances& t) {
    return {t.epsilon, t.newton, t.max_newton, t.max_halvings};
  }
};

struct InnerSolveReport {
  Vector values;
  int newton_iterations = 0;
  double residual_sup = 0.0;
};

/// Unique discrete solution of -Delta_p^h U = F, U = 0 on the Dirichlet
/// boundary, with the pinned center flux -c / sphere_area when c > 0.
/// Damped Newton with energy backtracking. Throws SolverError on
/// stagnation; never returns an unconverged field.
InnerSolveReport inner_solve(const RadialGrid& grid, const VectorRef& rhs, double p,
                             double dirac_mass, const InnerSolveOptions& options,
                             const Vector* initial_guess = nullptr);

GridField inner_solve(const GridField& rhs, double p, double dirac_mass = 0.0,
                      const InnerSolveOptions& options = {});

/// Monotone iteration v^{k+1} = inner_solve(lambda f source(v^k)) from v^0 = 0
/// (or from `start`, which must lie below the minimal solution).
SolveOutcome minimal_solution(const ProblemSpec& spec, const GridField* start = nullptr);

enum class TransformDirection { u_to_v, v_to_u };

/// Nodewise Psi (u -> v) or H (v -> u); throws DomainError naming the node
/// when a value sits at or beyond the endpoint of the map.
GridField transform_solution(const GridField& field, const NonlinearityPair& pair,
                             TransformDirection direction);

/// Monotone iteration with a Dirac mass c at the origin of a ball; the
/// companion u_s = H(v_s) is attached. Throws PreconditionError (forbidden
/// mass, wrong geometry).
SolveOutcome dirac_solve(const ProblemSpec& spec);

struct MountainPassOptions {
  int path_nodes = 21;
  double step = 0.5;          ///< descent step in the H1-preconditioned metric
  int max_iterations = 20000;
  double gradient_tol = 1e-7;
  std::optional<double> lambda_star;  ///< refuse above this estimate
};

/// Second critical point of the discrete J_lambda by a climbing-image
/// string between v_low and a high state, followed by Newton polish.
SolveOutcome mountain_pass_solve(const ProblemSpec& spec, const GridField& v_low,
                                 const MountainPassOptions& options = {});

/// Newton on the full discrete v-equation from `guess` (indefinite
/// Jacobian allowed). Used to polish critical points.
SolveOutcome newton_polish(const ProblemSpec& spec, const GridField& guess, int max_iterations = 60);

}  // namespace quasilin
