#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quasilin/grid.hpp"
#include "quasilin/nonlinearity.hpp"
#include "quasilin/norms.hpp"
#include "quasilin/p_laplacian.hpp"
#include "quasilin/scalar_function.hpp"

namespace quasilin {

struct Tolerances {
  double fixed_point = 1e-10;   ///< sup change between monotone iterates
  double newton = 1e-11;        ///< inner residual, relative to 1 + ||F||_inf
  double blowup = 1e6;          ///< sup norm declared divergence
  int max_iterations = 10000;   ///< monotone iteration cap
  int max_newton = 200;
  int max_halvings = 60;
  double epsilon = kDefaultEpsilon;
  int singular_exclude = 3;     ///< innermost nodes kept out of residuals with a Dirac mass
};

/// All parameters of -Delta_p v = lambda f (1+g(v))^{p-1} (+ c delta_0)
/// and of its gradient-side twin.
struct ProblemSpec {
  double p = 2.0;
  RadialDomain domain = RadialDomain::interval(0.0, 1.0);
  int n = 201;
  ScalarFunction f = ScalarFunction::constant(1.0);
  double lambda = 0.0;
  NonlinearityPair pair = catalog_pair("linear-g");
  double dirac_mass = 0.0;
  Tolerances tol;

  /// p > 1, lambda >= 0, c >= 0, p < N on balls carrying a Dirac mass,
  /// pair exponent equal to p. Throws ValidationError / PreconditionError.
  void validate() const;
  [[nodiscard]] GridPtr make_grid() const;
  [[nodiscard]] Flux flux() const { return Flux{p, tol.epsilon}; }
};

/// Which equation a residual is taken against.
enum class Equation { u_equation, v_equation };

struct ResidualReport {
  Vector nodal;            ///< residual at every node (0 on Dirichlet nodes)
  double sup = 0.0;        ///< over admissible interior nodes
  double l1 = 0.0;         ///< integral of |residual| over admissible nodes
  int excluded = 0;        ///< innermost nodes kept out (singular runs)
  double excluded_sup = 0.0;
};

/// Discrete residual of the u- or v-equation. The field kind must match
/// the equation (u_field / v_field); the gradient term uses centered
/// differences. With a Dirac mass the operator carries the pinned center
/// flux and the tol.singular_exclude innermost nodes are reported apart.
ResidualReport residual(const GridField& field, const ProblemSpec& spec, Equation eq);

/// J(v) = (1/p) int |grad v|^p - lambda int f G(v), G(s) = int_0^s (1+g)^{p-1},
/// in the grid-consistent form whose gradient is the discrete residual.
double energy_functional(const GridField& field, const ProblemSpec& spec);

/// Euclidean gradient of energy_functional over all nodes (0 on Dirichlet).
Vector energy_gradient(const GridField& field, const ProblemSpec& spec);

enum class SolveStatus { converged, diverged, max_iter, error };
std::string to_string(SolveStatus s);

struct SolveOutcome {
  SolveStatus status = SolveStatus::error;
  std::optional<GridField> field;
  int iterations = 0;
  ResidualReport residuals;
  NormReport norms;
  std::string message;
  std::optional<GridField> companion;  ///< u = H(v) attached by Dirac solves
  std::optional<MassTransferRule> mass_rule;
  bool experimental = false;
  std::vector<std::pair<std::string, double>> metrics;

  [[nodiscard]] bool converged() const { return status == SolveStatus::converged; }
  [[nodiscard]] std::optional<double> metric(const std::string& key) const;
};

}  // namespace quasilin
