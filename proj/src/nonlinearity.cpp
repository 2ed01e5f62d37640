#include "quasilin/nonlinearity.hpp"

#include <cmath>
#include <sstream>

#include "nonlinearity_impl.hpp"
#include "quasilin/errors.hpp"
#include "quasilin/quadrature.hpp"

namespace quasilin {

std::string to_string(Tristate t) {
  switch (t) {
    case Tristate::yes: return "yes";
    case Tristate::no: return "no";
    case Tristate::unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(MassCase c) {
  switch (c) {
    case MassCase::transfer: return "transfer";
    case MassCase::annihilate_u_side: return "annihilate-u-side";
    case MassCase::forbid_u_side: return "forbid-u-side";
    case MassCase::forbid_v_side: return "forbid-v-side";
  }
  return "transfer";
}

Tristate EndpointFlags::L_finite() const {
  if (!L) return Tristate::unknown;
  return L->is_finite() ? Tristate::yes : Tristate::no;
}

Tristate EndpointFlags::Lambda_finite() const {
  if (!Lambda) return Tristate::unknown;
  return Lambda->is_finite() ? Tristate::yes : Tristate::no;
}

namespace {

// Outer integrals of integrands that are themselves quadratures; the inner
// error (1e-12 relative) would otherwise be refined against forever.
const QuadratureOptions kNested{1e-12, 1e-10, 1000000};

std::string describe(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

// 1/(1+g(s)), which is 0 once g overflows.
double h_density(const ScalarFunction& g, double s) {
  try {
    return 1.0 / (1.0 + g(s));
  } catch (const InfiniteValueError&) {
    return 0.0;
  }
}

void require_in(const ScalarFunction& fn, double t, const char* what) {
  if (!fn.in_domain(t))
    throw DomainError(std::string(what) + ": argument " + describe(t) + " outside [0, " +
                      fn.endpoint().to_string() + ")");
}

ImproperIntegral classify_on(const std::function<double(double)>& f, ExtReal endpoint) {
  return classify_improper(f, endpoint.value());
}

std::optional<ExtReal> integral_limit(const ImproperIntegral& r) {
  switch (r.verdict) {
    case Convergence::convergent: return ExtReal(std::max(0.0, r.value));
    case Convergence::divergent: return ExtReal::infinity();
    case Convergence::unknown: return std::nullopt;
  }
  return std::nullopt;
}

// Generic classification from whatever closed data the pair has.
EndpointFlags classify_generic(const NonlinearityPair::Impl& impl) {
  EndpointFlags flags;
  const bool beta_closed = impl.beta.kind() == ScalarFunction::Kind::closed_form;
  const bool g_closed = impl.g.kind() == ScalarFunction::Kind::closed_form;
  const double p = impl.p;

  if (beta_closed) {
    const auto b = classify_on([&](double t) { return impl.beta(t); }, impl.beta.endpoint());
    flags.gamma_limit = integral_limit(b);
    if (flags.gamma_limit)
      flags.beta_in_L1 = flags.gamma_limit->is_finite() ? Tristate::yes : Tristate::no;
  }
  if (g_closed) {
    const auto l = classify_on([&](double s) { return h_density(impl.g, s); }, impl.g.endpoint());
    flags.L = integral_limit(l);
    flags.Lambda = impl.g.endpoint();
  }
  if (beta_closed) {
    if (!flags.L) flags.L = impl.beta.endpoint();
    if (!g_closed) {
      const auto lam = classify_on(
          [&](double t) { return std::exp(impl.gamma_fn(t) / (p - 1.0)); }, impl.beta.endpoint());
      flags.Lambda = integral_limit(lam);
    }
  }
  return flags;
}

void validate_g(const ScalarFunction& g) {
  if (g(0.0) != 0.0) throw ValidationError("g must vanish at 0");
  std::vector<double> samples;
  if (g.kind() == ScalarFunction::Kind::tabulated) {
    samples = g.values();
  } else {
    const double top = g.endpoint().is_finite() ? 0.999 * g.endpoint().value() : 10.0;
    for (int i = 0; i <= 200; ++i) samples.push_back(g(top * i / 200.0));
  }
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i] < samples[i - 1] - 1e-12 * (1.0 + std::abs(samples[i - 1])))
      throw ValidationError("g must be nondecreasing (sample " + std::to_string(i) + ")");
}

void validate_beta(const ScalarFunction& beta) {
  std::vector<double> samples;
  if (beta.kind() == ScalarFunction::Kind::tabulated) {
    samples = beta.values();
  } else {
    const double top = beta.endpoint().is_finite() ? 0.999 * beta.endpoint().value() : 10.0;
    for (int i = 0; i <= 200; ++i) samples.push_back(beta(top * i / 200.0));
  }
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (samples[i] < 0.0)
      throw ValidationError("beta must be nonnegative (sample " + std::to_string(i) + ")");
}

void validate_p(double p) {
  if (!(p > 1.0)) throw ValidationError("exponent p must exceed 1");
}

}  // namespace

double invert_increasing(const ScalarFunction::Map& F, const ScalarFunction::Map& dF, double y,
                         ExtReal endpoint, const std::string& what) {
  if (y == 0.0) return 0.0;
  if (!(y > 0.0)) throw DomainError(what + ": negative argument " + describe(y));

  const auto value_at = [&](double x) {
    try {
      return F(x);
    } catch (const InfiniteValueError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  double lo = 0.0;
  double hi = 0.0;
  bool bracketed = false;
  if (endpoint.is_infinite()) {
    hi = std::max(1.0, y);
    for (int k = 0; k < 2100; ++k) {
      if (value_at(hi) >= y) {
        bracketed = true;
        break;
      }
      lo = hi;
      hi *= 2.0;
      if (std::isinf(hi)) break;
    }
  } else {
    const double e = endpoint.value();
    for (int k = 1; k < 1100; ++k) {
      const double x = e - std::ldexp(e, -k);
      if (!(x < e)) break;
      if (value_at(x) >= y) {
        hi = x;
        bracketed = true;
        break;
      }
      lo = x;
    }
  }
  if (!bracketed)
    throw DomainError(what + ": value " + describe(y) + " is beyond the range of the map");

  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 400; ++it) {
    const double fx = value_at(x) - y;
    if (fx == 0.0) return x;
    if (fx > 0.0) hi = x; else lo = x;
    double next = 0.5 * (lo + hi);
    if (std::isfinite(fx)) {
      const double d = dF(x);
      if (d > 0.0 && std::isfinite(d)) {
        const double newton = x - fx / d;
        if (newton > lo && newton < hi) next = newton;
      }
    }
    const double dx = std::abs(next - x);
    x = next;
    if (dx <= 1e-12 * (1.0 + std::abs(x)) || hi - lo <= 1e-15 * (1.0 + std::abs(x))) break;
  }
  return x;
}

const std::string& NonlinearityPair::id() const { return impl_->id; }
double NonlinearityPair::p() const { return impl_->p; }
const ScalarFunction& NonlinearityPair::beta() const { return impl_->beta; }
const ScalarFunction& NonlinearityPair::g() const { return impl_->g; }
ExtReal NonlinearityPair::u_endpoint() const { return impl_->beta.endpoint(); }
ExtReal NonlinearityPair::v_endpoint() const { return impl_->g.endpoint(); }
bool NonlinearityPair::is_cataloged() const { return impl_->cataloged; }
bool NonlinearityPair::has_weight() const { return impl_->weight.has_value(); }
const SourceWeight* NonlinearityPair::weight() const {
  return impl_->weight ? &*impl_->weight : nullptr;
}

double NonlinearityPair::gamma(double t) const {
  require_in(impl_->beta, t, "gamma");
  return impl_->gamma_fn(t);
}

double NonlinearityPair::psi(double u) const {
  require_in(impl_->beta, u, "Psi");
  const double v = impl_->psi_fn(u);
  if (!std::isfinite(v)) throw InfiniteValueError("Psi(" + describe(u) + ") overflows");
  return v;
}

double NonlinearityPair::h(double v) const {
  require_in(impl_->g, v, "H");
  return impl_->h_fn(v);
}

double NonlinearityPair::g_prime(double v) const { return impl_->g.derivative(v); }

double NonlinearityPair::source(double v) const {
  const double base = std::pow(1.0 + impl_->g(v), impl_->p - 1.0);
  return impl_->weight ? base * impl_->weight->on_v(v) : base;
}

double NonlinearityPair::source_derivative(double v) const {
  const double p = impl_->p;
  const double one_g = 1.0 + impl_->g(v);
  const double base_d = (p - 1.0) * std::pow(one_g, p - 2.0) * impl_->g.derivative(v);
  if (!impl_->weight) return base_d;
  const double base = std::pow(one_g, p - 1.0);
  return base_d * impl_->weight->on_v(v) + base * impl_->weight->on_v_derivative(v);
}

double NonlinearityPair::source_primitive(double v) const {
  require_in(impl_->g, v, "source primitive");
  if (impl_->source_primitive_fn) return impl_->source_primitive_fn(v);
  return integrate_adaptive([this](double s) { return source(s); }, 0.0, v);
}

double NonlinearityPair::u_weight(double u) const {
  return impl_->weight ? impl_->weight->on_u(u) : 1.0;
}

const EndpointFlags& NonlinearityPair::flags() const {
  std::call_once(impl_->flags_once, [this] { impl_->flags = impl_->classify(); });
  return impl_->flags;
}

double eval_gamma(const NonlinearityPair& pair, double t) { return pair.gamma(t); }
double eval_psi(const NonlinearityPair& pair, double u) { return pair.psi(u); }
double eval_h(const NonlinearityPair& pair, double v) { return pair.h(v); }

EndpointFlags classify_endpoints(const NonlinearityPair& pair) { return pair.flags(); }

namespace {

using Classifier = std::function<EndpointFlags(const NonlinearityPair::Impl&)>;

NonlinearityPair build_pair(std::string id, double p, ScalarFunction beta, ScalarFunction g,
                            ClosedForms closed, Classifier classify, bool cataloged,
                            std::optional<SourceWeight> weight) {
  validate_p(p);
  auto impl = std::make_shared<NonlinearityPair::Impl>(std::move(id), p, std::move(beta), std::move(g));
  // Closures hold a raw pointer to the Impl that owns them, so they never
  // outlive it.
  NonlinearityPair::Impl* raw = impl.get();
  impl->weight = std::move(weight);
  impl->cataloged = cataloged;
  impl->source_primitive_fn = std::move(closed.source_primitive);

  impl->gamma_fn = closed.gamma ? std::move(closed.gamma) : ScalarFunction::Map([raw](double t) {
    return integrate_adaptive([raw](double s) { return raw->beta(s); }, 0.0, t);
  });
  impl->psi_fn = closed.psi ? std::move(closed.psi) : ScalarFunction::Map([raw](double u) {
    const double q = raw->p - 1.0;
    return integrate_adaptive([raw, q](double s) { return std::exp(raw->gamma_fn(s) / q); }, 0.0, u,
                              kNested);
  });
  impl->h_fn = closed.h ? std::move(closed.h) : ScalarFunction::Map([raw](double v) {
    return integrate_adaptive([raw](double s) { return h_density(raw->g, s); }, 0.0, v);
  });
  impl->classify = [raw, classify = std::move(classify)] { return classify(*raw); };
  return NonlinearityPair(std::move(impl));
}

// beta integrability and gamma limit, by the dyadic shell test.
void classify_beta(const ScalarFunction& beta, EndpointFlags& flags) {
  if (beta.kind() != ScalarFunction::Kind::closed_form) return;
  flags.gamma_limit = integral_limit(classify_on([&beta](double s) { return beta(s); }, beta.endpoint()));
  if (flags.gamma_limit)
    flags.beta_in_L1 = flags.gamma_limit->is_finite() ? Tristate::yes : Tristate::no;
}

}  // namespace

NonlinearityPair make_pair(std::string id, double p, ScalarFunction beta, ScalarFunction g,
                           ClosedForms closed, std::optional<EndpointFlags> flags,
                           std::optional<SourceWeight> weight) {
  const bool symbolic = flags.has_value();
  Classifier classify = symbolic ? Classifier([f = *flags](const NonlinearityPair::Impl&) { return f; })
                                 : Classifier(classify_generic);
  return build_pair(std::move(id), p, std::move(beta), std::move(g), std::move(closed),
                    std::move(classify), symbolic, std::move(weight));
}

NonlinearityPair derive_beta_from_g(const ScalarFunction& g, double p) {
  validate_p(p);
  validate_g(g);
  const ScalarFunction::Map h = [g](double v) {
    return integrate_adaptive([&g](double s) { return h_density(g, s); }, 0.0, v);
  };
  const ScalarFunction::Map dh = [g](double v) { return h_density(g, v); };
  const ExtReal Lambda = g.endpoint();
  const ScalarFunction::Map psi = [h, dh, Lambda](double u) {
    return invert_increasing(h, dh, u, Lambda, "H^{-1}");
  };

  // L = H(Lambda); a tabulated g leaves it open.
  const bool tabulated = g.kind() == ScalarFunction::Kind::tabulated;
  std::optional<ExtReal> L;
  if (!tabulated)
    L = integral_limit(classify_on([&g](double s) { return h_density(g, s); }, Lambda));
  const ExtReal beta_end = L ? *L : (tabulated ? ExtReal(h(g.endpoint().value())) : ExtReal::infinity());

  auto beta = ScalarFunction::closed_form(
      "(p-1) g'(H^{-1}(u)) from " + g.name(),
      [g, psi, p](double u) { return (p - 1.0) * g.derivative(psi(u)); }, beta_end);

  ClosedForms closed;
  closed.h = h;
  closed.psi = psi;
  Classifier classify = [tabulated, L, Lambda](const NonlinearityPair::Impl& impl) {
    EndpointFlags flags;
    if (tabulated) return flags;
    flags.L = L;
    flags.Lambda = Lambda;
    classify_beta(impl.beta, flags);
    return flags;
  };
  return build_pair("derived-from-g", p, std::move(beta), g, std::move(closed), std::move(classify),
                    false, std::nullopt);
}

NonlinearityPair derive_g_from_beta(const ScalarFunction& beta, double p) {
  validate_p(p);
  validate_beta(beta);
  const ExtReal L = beta.endpoint();
  const double q = p - 1.0;
  const ScalarFunction::Map gamma = [beta](double t) {
    return integrate_adaptive([&beta](double s) { return beta(s); }, 0.0, t);
  };
  const ScalarFunction::Map dpsi = [gamma, q](double u) { return std::exp(gamma(u) / q); };
  const ScalarFunction::Map psi = [dpsi](double u) { return integrate_adaptive(dpsi, 0.0, u, kNested); };
  const ScalarFunction::Map h = [psi, dpsi, L](double v) {
    return invert_increasing(psi, dpsi, v, L, "Psi^{-1}");
  };

  const bool tabulated = beta.kind() == ScalarFunction::Kind::tabulated;
  std::optional<ExtReal> Lambda;
  if (!tabulated) Lambda = integral_limit(classify_on(dpsi, L));
  const ExtReal g_end = Lambda ? *Lambda : (tabulated ? ExtReal(psi(L.value())) : ExtReal::infinity());

  auto g = ScalarFunction::closed_form(
      "exp(gamma(Psi^{-1}(v))/(p-1)) - 1 from " + beta.name(),
      [gamma, h, q](double v) { return std::expm1(gamma(h(v)) / q); }, g_end);

  ClosedForms closed;
  closed.gamma = gamma;
  closed.psi = psi;
  closed.h = h;
  Classifier classify = [tabulated, L, Lambda](const NonlinearityPair::Impl& impl) {
    EndpointFlags flags;
    if (tabulated) return flags;
    flags.L = L;
    flags.Lambda = Lambda;
    classify_beta(impl.beta, flags);
    return flags;
  };
  return build_pair("derived-from-beta", p, beta, std::move(g), std::move(closed), std::move(classify),
                    false, std::nullopt);
}

MassTransferRule singular_mass_transfer(const NonlinearityPair& pair, double c, MassSide side) {
  if (!(c >= 0.0)) throw ValidationError("Dirac mass coefficient must be nonnegative");
  const EndpointFlags& f = pair.flags();

  MassTransferRule rule;
  rule.mass = c;
  rule.side = side;
  if (f.L && f.L->is_infinite() && f.gamma_limit) rule.multiplier = ext_exp(*f.gamma_limit);

  if (c == 0.0) {
    rule.kind = MassCase::transfer;
    return rule;
  }
  const Tristate L_fin = f.L_finite();
  const Tristate Lambda_fin = f.Lambda_finite();
  const Tristate in_l1 = f.beta_in_L1;

  if (side == MassSide::v_equation) {
    if (Lambda_fin == Tristate::yes) {
      rule.kind = MassCase::forbid_v_side;
      return rule;
    }
    if (Lambda_fin == Tristate::unknown || L_fin == Tristate::unknown)
      throw PreconditionError("mass transfer undecidable: endpoint classification unknown for " +
                              pair.id());
    if (L_fin == Tristate::yes) {
      rule.kind = MassCase::forbid_u_side;
      return rule;
    }
    if (in_l1 == Tristate::unknown)
      throw PreconditionError("mass transfer undecidable: integrability of beta unknown for " +
                              pair.id());
    rule.kind = in_l1 == Tristate::yes ? MassCase::transfer : MassCase::annihilate_u_side;
    return rule;
  }

  if (L_fin == Tristate::unknown || (L_fin == Tristate::no && in_l1 == Tristate::unknown))
    throw PreconditionError("mass transfer undecidable: endpoint classification unknown for " +
                            pair.id());
  rule.kind = (L_fin == Tristate::no && in_l1 == Tristate::yes) ? MassCase::transfer
                                                                : MassCase::forbid_u_side;
  return rule;
}

namespace {

// Sample points s = 2^k kept while g is finite and inside its domain.
std::vector<std::pair<double, double>> growth_samples(const NonlinearityPair& pair) {
  std::vector<std::pair<double, double>> out;
  for (int k = 3; k <= 40; ++k) {
    const double s = std::ldexp(1.0, k);
    if (!pair.g().in_domain(s)) break;
    double gs = 0.0;
    try {
      gs = pair.g()(s);
    } catch (const DomainError&) {
      break;
    }
    if (!std::isfinite(gs) || gs > 1e300) break;
    out.emplace_back(s, gs);
  }
  return out;
}

}  // namespace

bool is_superlinear(const NonlinearityPair& pair) {
  const auto samples = growth_samples(pair);
  if (samples.size() < 4) return false;
  double prev = -std::numeric_limits<double>::infinity();
  for (const auto& [s, gs] : samples) {
    const double ratio = gs / s;
    if (!(ratio > prev * (1.0 + 1e-12))) return false;
    prev = ratio;
  }
  return samples.back().second / samples.back().first >=
         2.0 * samples.front().second / samples.front().first;
}

bool is_convex_near_infinity(const NonlinearityPair& pair) {
  const auto samples = growth_samples(pair);
  if (samples.size() < 2) return false;
  const double top = samples.back().first;
  const double bottom = top / 10.0;
  constexpr int kPoints = 50;
  const double step = (top - bottom) / kPoints;
  std::vector<double> values;
  for (int i = 0; i <= kPoints; ++i) values.push_back(pair.g()(bottom + i * step));
  const double scale = std::abs(values.back()) + 1.0;
  for (int i = 1; i < kPoints; ++i) {
    const double second = values[i + 1] - 2.0 * values[i] + values[i - 1];
    if (second < -1e-8 * scale) return false;
  }
  return true;
}

}  // namespace quasilin
