#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quasilin/extended_real.hpp"
#include "quasilin/scalar_function.hpp"

namespace quasilin {

enum class Tristate { yes, no, unknown };

std::string to_string(Tristate t);

/// Endpoint data of a beta/g pair. An empty optional means "undecidable".
struct EndpointFlags {
  std::optional<ExtReal> L;       ///< right end of the u range, L = H(Lambda)
  std::optional<ExtReal> Lambda;  ///< right end of the v range, Lambda = Psi(L)
  Tristate beta_in_L1 = Tristate::unknown;
  std::optional<ExtReal> gamma_limit;  ///< lim gamma(t) as t -> L

  [[nodiscard]] Tristate L_finite() const;
  [[nodiscard]] Tristate Lambda_finite() const;
};

/// Exact formulas a pair may carry in place of quadrature.
struct ClosedForms {
  ScalarFunction::Map gamma;
  ScalarFunction::Map psi;
  ScalarFunction::Map h;
  ScalarFunction::Map source_primitive;  ///< int_0^s (1+g)^(p-1) w
};

/// Multiplicative source weight w, folded into the zero-order source as
/// (1+g(v))^(p-1) w(v); on the gradient side it reads w_u(u) = w(Psi(u)).
struct SourceWeight {
  ScalarFunction::Map on_v;
  ScalarFunction::Map on_v_derivative;
  ScalarFunction::Map on_u;
  std::string description;
};

/// The beta <-> g correspondence for a fixed exponent p.
///
/// gamma(t) = int_0^t beta, Psi(u) = int_0^u exp(gamma/(p-1)),
/// H(v) = int_0^v ds / (1 + g(s)) = Psi^{-1}(v), and beta(u) = (p-1) g'(Psi(u)).
/// Cheap to copy; the state is shared and immutable.
class NonlinearityPair {
 public:
  struct Impl;

  [[nodiscard]] const std::string& id() const;
  [[nodiscard]] double p() const;
  [[nodiscard]] const ScalarFunction& beta() const;
  [[nodiscard]] const ScalarFunction& g() const;

  /// Domain of Psi / beta and of H / g as evaluated (not the classified L,
  /// Lambda, which may be unknown).
  [[nodiscard]] ExtReal u_endpoint() const;
  [[nodiscard]] ExtReal v_endpoint() const;

  [[nodiscard]] double gamma(double t) const;
  [[nodiscard]] double psi(double u) const;
  [[nodiscard]] double h(double v) const;
  [[nodiscard]] double g_prime(double v) const;

  [[nodiscard]] bool has_weight() const;
  [[nodiscard]] const SourceWeight* weight() const;

  /// (1 + g(v))^(p-1) w(v).
  [[nodiscard]] double source(double v) const;
  [[nodiscard]] double source_derivative(double v) const;
  /// int_0^v source.
  [[nodiscard]] double source_primitive(double v) const;
  /// Right side weight of the gradient equation at u (1 without a weight).
  [[nodiscard]] double u_weight(double u) const;

  /// Classified endpoint data; computed once, on first use, for pairs
  /// without symbolic flags.
  [[nodiscard]] const EndpointFlags& flags() const;

  [[nodiscard]] bool is_cataloged() const;

  explicit NonlinearityPair(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

 private:
  std::shared_ptr<Impl> impl_;
};

// Free-function spellings of the dictionary.
double eval_gamma(const NonlinearityPair& pair, double t);
double eval_psi(const NonlinearityPair& pair, double u);
double eval_h(const NonlinearityPair& pair, double v);

/// Pair with beta(u) = (p-1) g'(Psi(u)); H by quadrature, Psi = H^{-1}.
NonlinearityPair derive_beta_from_g(const ScalarFunction& g, double p);

/// Pair with g(v) = exp(gamma(Psi^{-1}(v))/(p-1)) - 1; Psi by quadrature,
/// H = Psi^{-1}.
NonlinearityPair derive_g_from_beta(const ScalarFunction& beta, double p);

EndpointFlags classify_endpoints(const NonlinearityPair& pair);

// Singular (Dirac) mass bookkeeping between the two problems.

enum class MassCase { transfer, annihilate_u_side, forbid_u_side, forbid_v_side };
enum class MassSide { v_equation, u_equation };

std::string to_string(MassCase c);

struct MassTransferRule {
  MassCase kind = MassCase::transfer;
  /// exp(gamma(inf)) when L = inf; finite and >= 1 iff beta is in L1 too.
  std::optional<ExtReal> multiplier;
  double mass = 0.0;
  MassSide side = MassSide::v_equation;
};

MassTransferRule singular_mass_transfer(const NonlinearityPair& pair, double c,
                                        MassSide side = MassSide::v_equation);

// Sampled growth tests used as hypotheses by the branch and mountain-pass
// machinery.

/// g(s)/s increasing along s = 2^3 .. 2^40 (truncated at overflow or at the
/// v endpoint) and at least doubling overall.
bool is_superlinear(const NonlinearityPair& pair);

/// Second differences of g nonnegative (>= -1e-8 relative) on the top
/// decade of the sampled range.
bool is_convex_near_infinity(const NonlinearityPair& pair);

// Catalog.

struct CatalogParams {
  std::optional<double> q;
  std::optional<double> b;
  std::optional<double> p;
};

/// ids: "ex1".."ex6" (p = 2), "linear-g" (beta = p-1, g = v),
/// "remark-log" (linear-g with source weight ln^b(1+v)). Parameters
/// default to q = 0.5 (ex2), 2 (ex4), 1 (ex6); b = 1; p = 2.
NonlinearityPair catalog_pair(std::string_view id, const CatalogParams& params = {});
std::vector<std::string> catalog_ids();
std::vector<NonlinearityPair> builtin_catalog();

/// Builds a pair directly from parts; used by the catalog and by callers
/// that know closed forms of their own.
NonlinearityPair make_pair(std::string id, double p, ScalarFunction beta, ScalarFunction g,
                           ClosedForms closed, std::optional<EndpointFlags> flags,
                           std::optional<SourceWeight> weight = std::nullopt);

}  // namespace quasilin
