#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "quasilin/grid.hpp"
#include "quasilin/problem.hpp"
#include "quasilin/solver.hpp"

namespace quasilin {

struct EigenResult {
  double lambda1 = 0.0;
  std::optional<GridField> eigenfield;  ///< normalized: int f |w|^p = 1
  int iterations = 0;
  std::vector<double> quotient_history;
};

/// f-weighted first eigenvalue of -Delta_p by inverse power iteration.
/// Throws PreconditionError when f vanishes identically.
EigenResult first_eigenvalue(const ScalarFunction& f, double p, const RadialDomain& domain, int n,
                             double eps = kDefaultEpsilon, double rel_tol = 1e-10,
                             int max_iterations = 5000);

/// Grid-consistent Rayleigh quotient sum a_e h |s_e|^p / sum m_i f_i |w_i|^p.
double rayleigh_quotient(const RadialGrid& grid, const VectorRef& w, const VectorRef& f_nodes,
                         double p);

struct BranchRow {
  double lambda = 0.0;
  SolveStatus status = SolveStatus::error;
  double sup_norm = 0.0;
  double w1p_seminorm = 0.0;
  int iterations = 0;
};

struct BranchTrace {
  std::vector<BranchRow> rows;  ///< sorted by lambda
  double lambda_lo = 0.0;       ///< largest lambda seen converging
  double lambda_hi = 0.0;       ///< smallest lambda seen diverging
  std::optional<GridField> extremal;

  [[nodiscard]] double lambda_star() const { return 0.5 * (lambda_lo + lambda_hi); }
  [[nodiscard]] double relative_width() const { return (lambda_hi - lambda_lo) / lambda_hi; }
};

struct BranchOptions {
  double lambda_start = 1e-2;
  double rel_width = 1e-4;
  int max_doublings = 60;
};

/// Brackets lambda* by doubling, then bisects. Requires Lambda = inf, a
/// superlinear g, convex near infinity; g linear is refused with a pointer
/// to first_eigenvalue.
BranchTrace critical_lambda(const ProblemSpec& spec, const BranchOptions& options = {});

struct RegularityReport {
  // inputs
  double m = 0.0, p = 0.0;
  int N = 0;
  std::optional<double> r, q, Q;  ///< r = inf encoded as +infinity
  // exponents
  double m_bar = 0.0;
  std::optional<double> k;        ///< U^{p-1} in L^k
  std::optional<double> tau;      ///< |grad U|^{p-1} in L^tau
  double p_star = 0.0, p_conj = 0.0;
  std::optional<double> r_conj;
  std::string value_case;         ///< "Lk", "Lk-all", "Linfinity", "none"
  std::string gradient_case;      ///< "Ltau", "W01p", "none"
  // predicates
  std::optional<bool> maja, majet;
  std::optional<bool> limi_w1p, limi_i, limi_ii, limi_iii;
  std::optional<double> maja_bound, majet_bound, limi_w1p_bound, limi_iii_bound;
};

/// Exponents of the regularity lemma for -Delta_p U = F, F in L^m.
/// Throws PreconditionError unless 1 < p < N and m >= 1.
RegularityReport regularity_exponents(double m, double p, int N);

/// Growth / integrability predicates; r may be +inf (r' = 1), q and Q may
/// be absent. Throws PreconditionError unless 1 < p < N and r >= 1.
RegularityReport admissibility_predicates(double p, int N, double r, std::optional<double> q,
                                          std::optional<double> Q);

struct ExtremalReport {
  GridField v_star;
  std::vector<BranchRow> approach{};     ///< lambda = lambda*(1 - 2^-j)
  double sup_extrapolated = 0.0;
  double seminorm_extrapolated = 0.0;
  bool seminorm_bounded_observed = false;
  bool sobolev_bypassed = false;          ///< N <= p: exponents undefined
  bool bounded_expected = false;
  bool w1p_expected = false;
  std::optional<RegularityReport> predicates{};
};

/// Minimal solutions approaching lambda*, Richardson-extrapolated limit,
/// and the regularity predicates for f in L^r. Refuses a bracket wider
/// than 1e-3 relative.
ExtremalReport extremal_branch(const ProblemSpec& spec, const BranchTrace& trace, int levels = 8,
                               double r = std::numeric_limits<double>::infinity());

struct UniquenessStart {
  SolveStatus status = SolveStatus::error;
  int iterations = 0;
  std::optional<GridField> limit;
  std::string message;
};

struct UniquenessReport {
  std::vector<UniquenessStart> starts;
  std::vector<std::vector<double>> distances;  ///< sup distances of converged limits
  int distinct_limits = 0;
  bool unique = false;
};

struct UniquenessOptions {
  bool force = false;                    ///< allow pairs other than g = v
  std::optional<double> lambda1;         ///< refuse lambda >= lambda1
  double threshold = 1e-8;
};

UniquenessReport uniqueness_probe(const ProblemSpec& spec, const std::vector<GridField>& starts,
                                  const UniquenessOptions& options = {});

}  // namespace quasilin
