#include <cmath>
#include <limits>

#include "quasilin/analysis.hpp"
#include "quasilin/errors.hpp"

namespace quasilin {

namespace {

// Case boundaries arrive as decimals; treat a relative gap of 1e-12 as equality.
bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

void require_range(double p, int N) {
  if (!(p > 1.0) || !(p < N))
    throw PreconditionError("exponents need 1 < p < N (got p = " + std::to_string(p) + ", N = " +
                            std::to_string(N) + ")");
}

}  // namespace

RegularityReport regularity_exponents(double m, double p, int N) {
  require_range(p, N);
  if (!(m >= 1.0)) throw PreconditionError("exponents need m >= 1");
  RegularityReport rep;
  rep.m = m;
  rep.p = p;
  rep.N = N;
  rep.m_bar = N * p / (N * p - N + p);
  rep.p_star = N * p / (N - p);
  rep.p_conj = p / (p - 1.0);

  const double critical = N / p;
  if (same(m, 1.0)) {
    rep.value_case = "none";
  } else if (same(m, critical)) {
    rep.value_case = "Lk-all";
  } else if (m < critical) {
    rep.value_case = "Lk";
    rep.k = N * m / (N - p * m);
  } else {
    rep.value_case = "Linfinity";
  }

  if (same(m, 1.0)) {
    rep.gradient_case = "none";
  } else if (m < rep.m_bar && !same(m, rep.m_bar)) {
    rep.gradient_case = "Ltau";
    rep.tau = N * m / (N - m);
  } else {
    rep.gradient_case = "W01p";
  }
  return rep;
}

RegularityReport admissibility_predicates(double p, int N, double r, std::optional<double> q,
                                          std::optional<double> Q) {
  require_range(p, N);
  if (!(r >= 1.0)) throw PreconditionError("admissibility predicates need r >= 1");
  RegularityReport rep;
  rep.p = p;
  rep.N = N;
  rep.r = r;
  rep.q = q;
  rep.Q = Q;
  rep.m_bar = N * p / (N * p - N + p);
  rep.p_star = N * p / (N - p);
  rep.p_conj = p / (p - 1.0);
  const double inf = std::numeric_limits<double>::infinity();
  const double r_conj = std::isinf(r) ? 1.0 : (r == 1.0 ? inf : r / (r - 1.0));
  rep.r_conj = r_conj;
  const double inv_r = std::isinf(r) ? 0.0 : 1.0 / r;

  const double maja_bound = N / double(N - p);
  rep.maja_bound = maja_bound;
  if (q) rep.maja = *q > 1.0 && *q < maja_bound && *q * r_conj < maja_bound;

  rep.majet_bound = rep.p_star;
  if (Q) rep.majet = *Q > 1.0 && *Q < rep.p_star - 1.0 && (*Q + 1.0) * r_conj < rep.p_star;

  rep.limi_w1p_bound = p * (1.0 + rep.p_conj) / (1.0 + rep.p_conj * inv_r);
  rep.limi_w1p = N < *rep.limi_w1p_bound;
  rep.limi_i = rep.majet;
  rep.limi_ii = rep.maja;
  rep.limi_iii_bound = p * rep.p_conj / (1.0 + inv_r / (p - 1.0));
  rep.limi_iii = N < *rep.limi_iii_bound;
  return rep;
}

}  // namespace quasilin
