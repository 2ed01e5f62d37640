#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "quasilin/errors.hpp"

namespace quasilin {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int max_subdivisions = 1000000;
  bool throw_at_cap = true;  ///< false: return the current estimate instead
};

namespace detail {

// 7-point Gauss / 15-point Kronrod nodes on [-1, 1] (positive half).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Nodes that round onto an endpoint are moved one ulp inside, so an
// endpoint singularity is never evaluated.
template <typename Scalar>
Scalar inside(Scalar x, Scalar a, Scalar b) {
  if (x <= a) return std::nextafter(a, b);
  if (x >= b) return std::nextafter(b, a);
  return x;
}

template <typename Scalar, typename F>
void gauss_kronrod_15(const F& f, Scalar a, Scalar b, Scalar& integral, Scalar& error) {
  const Scalar center = (a + b) / 2;
  const Scalar half = (b - a) / 2;
  std::array<Scalar, 15> fx;
  fx[7] = f(center);
  for (int j = 0; j < 7; ++j) {
    const Scalar dx = half * Scalar(kKronrodNodes[j]);
    fx[j] = f(inside(center - dx, a, b));
    fx[14 - j] = f(inside(center + dx, a, b));
  }
  Scalar kronrod = fx[7] * Scalar(kKronrodWeights[7]);
  Scalar gauss = fx[7] * Scalar(kGaussWeights[3]);
  Scalar absolute = std::abs(fx[7]) * Scalar(kKronrodWeights[7]);
  for (int j = 0; j < 7; ++j) {
    const Scalar pair = fx[j] + fx[14 - j];
    kronrod += Scalar(kKronrodWeights[j]) * pair;
    absolute += Scalar(kKronrodWeights[j]) * (std::abs(fx[j]) + std::abs(fx[14 - j]));
    if (j % 2 == 1) gauss += Scalar(kGaussWeights[j / 2]) * pair;
  }
  Scalar variation = 0;
  for (int j = 0; j < 14; ++j) variation += std::abs(fx[j + 1] - fx[j]);
  integral = kronrod * half;
  // Round-off floor: the nodes carry an absolute error eps * |x|, which
  // moves the sum by about that times the variation of f.
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar scale = std::max(std::abs(a), std::abs(b));
  const Scalar noise = Scalar(50) * eps * (absolute * std::abs(half) + scale * variation);
  // A panel whose estimate is already at that floor is final: splitting
  // it only multiplies the noise.
  const Scalar estimate = std::abs((kronrod - gauss) * half);
  error = estimate <= noise ? Scalar(0) : estimate;
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (G7/K15) quadrature of f over a finite [a, b].
///
/// Bisects the panel with the largest error estimate until the summed
/// estimate is below max(abs_tol, rel_tol * |I|). Integrable endpoint
/// singularities are fine since no node sits on an endpoint. Throws
/// SolverError when the subdivision cap is hit and InfiniteValueError
/// when the integrand produces a non-finite value.
template <typename Scalar = double, typename F>
Scalar integrate_adaptive(const F& f, Scalar a, Scalar b, const QuadratureOptions& opt = {}) {
  if (a == b) return Scalar(0);
  if (b < a) return -integrate_adaptive<Scalar>(f, b, a, opt);

  struct Panel {
    Scalar a, b, value, error;
  };
  std::vector<Panel> panels;
  Panel first{a, b, 0, 0};
  detail::gauss_kronrod_15<Scalar>(f, a, b, first.value, first.error);
  panels.push_back(first);
  Scalar total = first.value;
  Scalar total_error = first.error;

  const auto worst = [](const Panel& x, const Panel& y) { return x.error < y.error; };
  Scalar settled = 0;
  int subdivisions = 0;
  while (true) {
    if (!std::isfinite(total)) throw InfiniteValueError("quadrature: integrand is not finite");
    const Scalar target = std::max<Scalar>(opt.abs_tol, opt.rel_tol * std::abs(total));
    if (total_error <= target) break;
    if (++subdivisions > opt.max_subdivisions) {
      if (opt.throw_at_cap) throw SolverError("quadrature: subdivision cap reached");
      break;
    }
    std::pop_heap(panels.begin(), panels.end(), worst);
    const Panel p = panels.back();
    panels.pop_back();
    const Scalar mid = (p.a + p.b) / 2;
    const Scalar scale = std::max(std::abs(p.a), std::abs(p.b));
    if (!(mid > p.a && mid < p.b) || p.b - p.a < 64 * std::numeric_limits<Scalar>::epsilon() * scale) {
      // Panel at machine resolution; keep its contribution as is.
      total_error -= p.error;
      settled += p.value;
      continue;
    }
    Panel left{p.a, mid, 0, 0};
    Panel right{mid, p.b, 0, 0};
    detail::gauss_kronrod_15<Scalar>(f, left.a, left.b, left.value, left.error);
    detail::gauss_kronrod_15<Scalar>(f, right.a, right.b, right.value, right.error);
    total += left.value + right.value - p.value;
    total_error += left.error + right.error - p.error;
    panels.push_back(left);
    std::push_heap(panels.begin(), panels.end(), worst);
    panels.push_back(right);
    std::push_heap(panels.begin(), panels.end(), worst);
  }
  // Re-sum to shed the drift of incremental updates.
  Scalar sum = settled;
  for (const auto& p : panels) sum += p.value;
  return sum;
}

enum class Convergence { convergent, divergent, unknown };

struct ImproperIntegral {
  Convergence verdict = Convergence::unknown;
  double value = std::numeric_limits<double>::quiet_NaN();  ///< set when convergent
};

/// Decides whether the improper integral of f over [0, endpoint) converges.
///
/// The range is split into dyadic shells approaching the endpoint
/// ([2^k, 2^(k+1)] for endpoint = inf, [E - E 2^-k, E - E 2^-(k+1)] for a
/// finite E). Shell contributions that shrink geometrically with ratio
/// <= 0.9 give "convergent" plus a geometric tail bound; ratios that stay
/// >= 0.98 give "divergent"; anything in between is "unknown".
ImproperIntegral classify_improper(const std::function<double(double)>& f, double endpoint,
                                   int shells = 48);

}  // namespace quasilin
