#pragma once

#include <mutex>

#include "quasilin/nonlinearity.hpp"

namespace quasilin {

struct NonlinearityPair::Impl {
  std::string id;
  double p = 2.0;
  ScalarFunction beta;
  ScalarFunction g;
  ScalarFunction::Map gamma_fn, psi_fn, h_fn, source_primitive_fn;
  std::optional<SourceWeight> weight;
  bool cataloged = false;

  std::function<EndpointFlags()> classify;
  mutable std::once_flag flags_once;
  mutable EndpointFlags flags;

  Impl(std::string id_, double p_, ScalarFunction beta_, ScalarFunction g_)
      : id(std::move(id_)), p(p_), beta(std::move(beta_)), g(std::move(g_)) {}
};

/// x in [0, endpoint) with F(x) = y for F increasing, F(0) = 0: doubling
/// bracket, then Newton safeguarded by bisection, to 1e-12 relative.
double invert_increasing(const ScalarFunction::Map& F, const ScalarFunction::Map& dF, double y,
                         ExtReal endpoint, const std::string& what);

}  // namespace quasilin
