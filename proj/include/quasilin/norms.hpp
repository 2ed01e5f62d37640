#pragma once

#include <utility>
#include <vector>

#include "quasilin/grid.hpp"
#include "quasilin/scalar_function.hpp"

namespace quasilin {

struct NormReport {
  double sup = 0.0;
  std::vector<std::pair<double, double>> lk;  ///< (k, ||U||_k)
  double w1p_seminorm = 0.0;                  ///< (int |grad U|^p)^(1/p)
  double weighted_p = 0.0;                    ///< int f |U|^p

  [[nodiscard]] double lk_norm(double k) const;
};

/// Integral of the piecewise-linear interpolant of nodal values against
/// the exact Jacobian (sphere_area r^{N-1} on balls). Throws
/// ValidationError on a length mismatch.
double integrate(const RadialGrid& grid, const VectorRef& values);

/// Nodal gradient: centered differences, one-sided at interval ends and at
/// the outer radius, 0 at a ball center by symmetry.
Vector nodal_gradient(const RadialGrid& grid, const VectorRef& u);

/// f evaluated at the nodes.
Vector sample_weight(const RadialGrid& grid, const ScalarFunction& f);

NormReport compute_norms(const GridField& field, double p, const std::vector<double>& k_list,
                         const ScalarFunction& f);

/// Discrete flux of U through the sphere r = r_K: the mean of the two
/// conservative half-node fluxes around node K, times the sphere area and
/// with the sign flipped, so that it is the mass enclosed for
/// -Delta_p U = mu >= 0.
double enclosed_mass(const GridField& field, double p, int node);

}  // namespace quasilin
