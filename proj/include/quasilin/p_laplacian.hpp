#pragma once

#include <cmath>

#include "quasilin/grid.hpp"
#include "quasilin/types.hpp"

namespace quasilin {

/// Regularized p-Laplacian flux phi(s) = (s^2 + eps^2)^((p-2)/2) s and its
/// derivative and primitive. eps keeps phi differentiable at 0 for p > 2
/// and phi' bounded for p < 2.
template <typename Scalar>
struct FluxLaw {
  Scalar p;
  Scalar eps;

  Scalar phi(Scalar s) const {
    if (p == Scalar(2)) return s;
    return std::pow(s * s + eps * eps, (p - 2) / 2) * s;
  }
  Scalar dphi(Scalar s) const {
    if (p == Scalar(2)) return Scalar(1);
    const Scalar q = s * s + eps * eps;
    return std::pow(q, (p - 4) / 2) * ((p - 1) * s * s + eps * eps);
  }
  /// Phi with Phi(0) = 0 and Phi' = phi.
  Scalar primitive(Scalar s) const {
    if (p == Scalar(2)) return s * s / 2;
    return (std::pow(s * s + eps * eps, p / 2) - std::pow(eps, p)) / p;
  }
};

using Flux = FluxLaw<double>;

inline constexpr double kDefaultEpsilon = 1e-10;

/// Half-node fluxes F_e = a_e phi((U_{e+1} - U_e) / h), e = 0..n-2.
Vector edge_fluxes(const RadialGrid& grid, const VectorRef& u, const Flux& law);

/// Nodal discrete -Delta_p in conservative form:
///   out_i = -(F_{i+1/2} - F_{i-1/2}) / m_i
/// with F_{-1/2} = -c / sphere_area at a ball center (0 without a Dirac
/// mass) and identity rows on Dirichlet nodes.
Vector p_laplacian(const RadialGrid& grid, const VectorRef& u, const Flux& law,
                   double dirac_mass = 0.0);

/// Field form; throws ValidationError for p <= 1.
GridField apply_p_laplacian(const GridField& field, double p, double eps = kDefaultEpsilon);

/// sum_i m_i a_i b_i over all nodes.
double control_pairing(const RadialGrid& grid, const VectorRef& a, const VectorRef& b);

/// sum_e F_e(U) (W_{e+1} - W_e): the right side of discrete integration by
/// parts for W vanishing on Dirichlet nodes.
double flux_pairing(const RadialGrid& grid, const VectorRef& u, const VectorRef& w,
                    const Flux& law);

/// Symmetric tridiagonal matrix stored by diagonals; lower(i) couples
/// rows i and i+1.
template <typename Scalar>
struct SymmetricTridiagonal {
  VectorX<Scalar> diag;
  VectorX<Scalar> off;
};

/// Thomas elimination for a symmetric positive definite tridiagonal system.
/// Reentrant; no pivoting, which is stable for SPD input.
template <typename Scalar>
VectorX<Scalar> solve_spd(const SymmetricTridiagonal<Scalar>& a, const VectorX<Scalar>& rhs) {
  const Eigen::Index n = a.diag.size();
  VectorX<Scalar> c(n), d(n);
  Scalar denom = a.diag[0];
  c[0] = n > 1 ? a.off[0] / denom : Scalar(0);
  d[0] = rhs[0] / denom;
  for (Eigen::Index i = 1; i < n; ++i) {
    denom = a.diag[i] - a.off[i - 1] * c[i - 1];
    c[i] = i + 1 < n ? a.off[i] / denom : Scalar(0);
    d[i] = (rhs[i] - a.off[i - 1] * d[i - 1]) / denom;
  }
  for (Eigen::Index i = n - 2; i >= 0; --i) d[i] -= c[i] * d[i + 1];
  return d;
}

/// Jacobian of the scaled residual G_i = F_{i-1/2} - F_{i+1/2} - m_i rhs_i
/// with respect to the unknown nodes (first_unknown..last_unknown).
SymmetricTridiagonal<double> flux_jacobian(const RadialGrid& grid, const VectorRef& u,
                                           const Flux& law);

/// Discrete energy whose gradient over the unknowns is G:
///   E(U) = sum_e a_e h Phi(s_e) - sum_i m_i rhs_i U_i - (c / sphere_area) U_0.
double discrete_energy(const RadialGrid& grid, const VectorRef& u, const VectorRef& rhs,
                       const Flux& law, double dirac_mass = 0.0);

}  // namespace quasilin
