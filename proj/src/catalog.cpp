#include <cmath>
#include <sstream>

#include "quasilin/errors.hpp"
#include "quasilin/nonlinearity.hpp"

namespace quasilin {

namespace {

using Map = ScalarFunction::Map;
constexpr double kInf = std::numeric_limits<double>::infinity();

EndpointFlags symbolic(double L, double Lambda, bool beta_in_l1, double gamma_limit) {
  EndpointFlags f;
  f.L = ExtReal(L);
  f.Lambda = ExtReal(Lambda);
  f.beta_in_L1 = beta_in_l1 ? Tristate::yes : Tristate::no;
  f.gamma_limit = ExtReal(gamma_limit);
  return f;
}

std::string with_param(const std::string& id, const char* name, double value) {
  std::ostringstream s;
  s << id << "(" << name << "=" << value << ")";
  return s.str();
}

// beta == p-1, g(v) = v: Psi = e^u - 1, H = ln(1+v) for every p.
NonlinearityPair linear_g(double p, std::string id, std::optional<SourceWeight> weight = std::nullopt,
                          Map primitive = {}) {
  auto beta = ScalarFunction::closed_form("p-1", [p](double) { return p - 1.0; }, ExtReal::infinity(),
                                          [](double) { return 0.0; });
  auto g = ScalarFunction::closed_form("v", [](double v) { return v; }, ExtReal::infinity(),
                                       [](double) { return 1.0; });
  ClosedForms c;
  c.gamma = [p](double t) { return (p - 1.0) * t; };
  c.psi = [](double u) { return std::expm1(u); };
  c.h = [](double v) { return std::log1p(v); };
  c.source_primitive = primitive ? std::move(primitive)
                                 : Map([p](double s) { return std::expm1(p * std::log1p(s)) / p; });
  return make_pair(std::move(id), p, beta, g, std::move(c), symbolic(kInf, kInf, false, kInf),
                   std::move(weight));
}

NonlinearityPair example1() { return linear_g(2.0, "ex1"); }

NonlinearityPair example2(double q) {
  if (!(q > 0.0 && q < 1.0)) throw ValidationError("ex2 requires q in (0, 1)");
  const double k = 1.0 - q;
  auto beta = ScalarFunction::closed_form(
      "q/(1+(1-q)u)", [q, k](double u) { return q / (1.0 + k * u); }, ExtReal::infinity(),
      [q, k](double u) { return -q * k / ((1.0 + k * u) * (1.0 + k * u)); });
  auto g = ScalarFunction::closed_form(
      "(1+v)^q-1", [q](double v) { return std::expm1(q * std::log1p(v)); }, ExtReal::infinity(),
      [q](double v) { return q * std::pow(1.0 + v, q - 1.0); });
  ClosedForms c;
  c.gamma = [q, k](double t) { return q / k * std::log1p(k * t); };
  c.psi = [k](double u) { return std::expm1(std::log1p(k * u) / k); };
  c.h = [k](double v) { return std::expm1(k * std::log1p(v)) / k; };
  c.source_primitive = [q](double s) { return std::expm1((q + 1.0) * std::log1p(s)) / (q + 1.0); };
  return make_pair(with_param("ex2", "q", q), 2.0, beta, g, std::move(c),
                   symbolic(kInf, kInf, false, kInf));
}

NonlinearityPair example3() {
  auto beta = ScalarFunction::closed_form(
      "1+e^u", [](double u) { return 1.0 + std::exp(u); }, ExtReal::infinity(),
      [](double u) { return std::exp(u); });
  auto g = ScalarFunction::closed_form(
      "(1+v)(1+ln(1+v))-1",
      [](double v) {
        const double l = std::log1p(v);
        return v + l + v * l;
      },
      ExtReal::infinity(), [](double v) { return 2.0 + std::log1p(v); });
  ClosedForms c;
  c.gamma = [](double t) { return t + std::expm1(t); };
  c.psi = [](double u) { return std::expm1(std::expm1(u)); };
  c.h = [](double v) { return std::log1p(std::log1p(v)); };
  c.source_primitive = [](double s) {
    const double w2 = (1.0 + s) * (1.0 + s);
    return (w2 - 1.0) / 4.0 + w2 * std::log1p(s) / 2.0;
  };
  return make_pair("ex3", 2.0, beta, g, std::move(c), symbolic(kInf, kInf, false, kInf));
}

NonlinearityPair example4(double q) {
  if (!(q > 1.0)) throw ValidationError("ex4 requires q > 1");
  const double k = q - 1.0;
  const double L = 1.0 / k;
  auto beta = ScalarFunction::closed_form(
      "q/(1-(q-1)u)", [q, k](double u) { return q / (1.0 - k * u); }, ExtReal(L),
      [q, k](double u) { return q * k / ((1.0 - k * u) * (1.0 - k * u)); });
  auto g = ScalarFunction::closed_form(
      "(1+v)^q-1", [q](double v) { return std::expm1(q * std::log1p(v)); }, ExtReal::infinity(),
      [q](double v) { return q * std::pow(1.0 + v, q - 1.0); });
  ClosedForms c;
  c.gamma = [q, k](double t) { return -q / k * std::log1p(-k * t); };
  c.psi = [k](double u) { return std::expm1(-std::log1p(-k * u) / k); };
  c.h = [k](double v) { return -std::expm1(-k * std::log1p(v)) / k; };
  c.source_primitive = [q](double s) { return std::expm1((q + 1.0) * std::log1p(s)) / (q + 1.0); };
  return make_pair(with_param("ex4", "q", q), 2.0, beta, g, std::move(c),
                   symbolic(L, kInf, false, kInf));
}

NonlinearityPair example5() {
  auto beta = ScalarFunction::closed_form(
      "1/(1-u)", [](double u) { return 1.0 / (1.0 - u); }, ExtReal(1.0),
      [](double u) { return 1.0 / ((1.0 - u) * (1.0 - u)); });
  auto g = ScalarFunction::closed_form(
      "e^v-1", [](double v) { return std::expm1(v); }, ExtReal::infinity(),
      [](double v) { return std::exp(v); });
  ClosedForms c;
  c.gamma = [](double t) { return -std::log1p(-t); };
  c.psi = [](double u) { return -std::log1p(-u); };
  c.h = [](double v) { return -std::expm1(-v); };
  c.source_primitive = [](double s) { return std::expm1(s); };
  return make_pair("ex5", 2.0, beta, g, std::move(c), symbolic(1.0, kInf, false, kInf));
}

NonlinearityPair example6(double q) {
  if (!(q > 0.0)) throw ValidationError("ex6 requires q > 0");
  const double k = q + 1.0;
  const double L = 1.0 / k;
  auto beta = ScalarFunction::closed_form(
      "q/(1-(q+1)u)", [q, k](double u) { return q / (1.0 - k * u); }, ExtReal(L),
      [q, k](double u) { return q * k / ((1.0 - k * u) * (1.0 - k * u)); });
  auto g = ScalarFunction::closed_form(
      "(1-v)^-q-1", [q](double v) { return std::expm1(-q * std::log1p(-v)); }, ExtReal(1.0),
      [q](double v) { return q * std::pow(1.0 - v, -q - 1.0); });
  ClosedForms c;
  c.gamma = [q, k](double t) { return -q / k * std::log1p(-k * t); };
  c.psi = [k](double u) { return -std::expm1(std::log1p(-k * u) / k); };
  c.h = [k](double v) { return -std::expm1(k * std::log1p(-v)) / k; };
  c.source_primitive = [q](double s) {
    if (q == 1.0) return -std::log1p(-s);
    return -std::expm1((1.0 - q) * std::log1p(-s)) / (1.0 - q);
  };
  return make_pair(with_param("ex6", "q", q), 2.0, beta, g, std::move(c),
                   symbolic(L, 1.0, false, kInf));
}

NonlinearityPair remark_log(double b, double p) {
  if (!(b >= 0.0)) throw ValidationError("remark-log requires b >= 0");
  SourceWeight w;
  w.description = "ln^b(1+v)";
  w.on_v = [b](double v) { return std::pow(std::log1p(v), b); };
  w.on_v_derivative = [b](double v) {
    if (b == 0.0) return 0.0;
    return b * std::pow(std::log1p(v), b - 1.0) / (1.0 + v);
  };
  w.on_u = [b](double u) { return std::pow(u, b); };
  Map primitive;
  if (b == 0.0) primitive = [p](double s) { return std::expm1(p * std::log1p(s)) / p; };
  std::ostringstream id;
  id << "remark-log(b=" << b << ",p=" << p << ")";
  return linear_g(p, id.str(), std::move(w), std::move(primitive));
}

}  // namespace

std::vector<std::string> catalog_ids() {
  return {"ex1", "ex2", "ex3", "ex4", "ex5", "ex6", "linear-g", "remark-log"};
}

NonlinearityPair catalog_pair(std::string_view id, const CatalogParams& params) {
  const double p = params.p.value_or(2.0);
  const bool example = id.size() == 3 && id.substr(0, 2) == "ex";
  if (example && p != 2.0)
    throw ValidationError("catalog examples ex1..ex6 are stated for p = 2");
  if (id == "ex1") return example1();
  if (id == "ex2") return example2(params.q.value_or(0.5));
  if (id == "ex3") return example3();
  if (id == "ex4") return example4(params.q.value_or(2.0));
  if (id == "ex5") return example5();
  if (id == "ex6") return example6(params.q.value_or(1.0));
  if (id == "linear-g") {
    std::ostringstream name;
    name << "linear-g(p=" << p << ")";
    return linear_g(p, name.str());
  }
  if (id == "remark-log") return remark_log(params.b.value_or(1.0), p);
  throw ValidationError("unknown catalog pair '" + std::string(id) + "'");
}

std::vector<NonlinearityPair> builtin_catalog() {
  std::vector<NonlinearityPair> out;
  for (const auto& id : catalog_ids()) out.push_back(catalog_pair(id));
  return out;
}

}  // namespace quasilin
