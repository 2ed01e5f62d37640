#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "quasilin/errors.hpp"
#include "quasilin/nonlinearity.hpp"

using namespace quasilin;

namespace {

// 0.99 min(L, 10), pulled back while Psi overflows or leaves 1e12 (ex3
// reaches double range near u = 6.6).
double u_top(const NonlinearityPair& pair) {
  double top = 0.99 * std::min(pair.flags().L->value(), 10.0);
  while (true) {
    try {
      if (pair.psi(top) < 1e12) return top;
    } catch (const InfiniteValueError&) {
    }
    top *= 0.95;
  }
}

}  // namespace

TEST(Catalog, IdsAndParameters) {
  const auto ids = catalog_ids();
  for (const char* id : {"ex1", "ex2", "ex3", "ex4", "ex5", "ex6", "linear-g", "remark-log"})
    EXPECT_NE(std::find(ids.begin(), ids.end(), id), ids.end()) << id;
  EXPECT_THROW(catalog_pair("ex7"), ValidationError);
  EXPECT_THROW(catalog_pair("ex2", {.q = 1.5}), ValidationError);
  EXPECT_THROW(catalog_pair("ex4", {.q = 0.5}), ValidationError);
  EXPECT_THROW(catalog_pair("ex1", {.p = 3.0}), ValidationError);
  EXPECT_EQ(catalog_pair("linear-g", {.p = 3.0}).p(), 3.0);
}

TEST(Catalog, Entry1And4) {
  const auto e1 = catalog_pair("ex1");
  EXPECT_EQ(e1.beta()(3.0), 1.0);
  EXPECT_EQ(e1.g()(3.0), 3.0);
  const double q = 2.0;
  const auto e4 = catalog_pair("ex4", {.q = q});
  for (double u : {0.0, 0.3, 0.9})
    EXPECT_NEAR(e4.beta()(u), q / (1 - (q - 1) * u), 1e-14);
  for (double v : {0.0, 1.0, 9.0})
    EXPECT_NEAR(1 + e4.g()(v), std::pow(1 + v, q), 1e-12 * std::pow(1 + v, q));
}

TEST(Catalog, RemarkPairWithZeroExponentHasUnitWeight) {
  const auto pair = catalog_pair("remark-log", {.b = 0.0, .p = 2.0});
  for (double v : {0.0, 0.5, 3.0}) EXPECT_NEAR(pair.source(v), 1 + v, 1e-14);
  const auto weighted = catalog_pair("remark-log", {.b = 1.0, .p = 2.0});
  EXPECT_NEAR(weighted.source(1.0), 2.0 * std::log(2.0), 1e-14);
  EXPECT_NEAR(weighted.u_weight(0.7), 0.7, 1e-14);
}

// H(Psi(t)) = t on 100 samples of [0, 0.99 min(L, 10)].
TEST(CatalogProperties, RoundTrip) {
  for (const auto& pair : builtin_catalog()) {
    const double top = u_top(pair);
    for (int k = 0; k < 100; ++k) {
      const double t = top * k / 99.0;
      EXPECT_NEAR(pair.h(pair.psi(t)), t, 1e-8) << pair.id() << " t=" << t;
    }
  }
}

TEST(CatalogProperties, DerivativeIdentities) {
  const double d = 1e-5;
  for (const auto& pair : builtin_catalog()) {
    const double top = u_top(pair);
    const double p = pair.p();
    for (int k = 1; k < 50; ++k) {
      const double u = top * k / 50.0;
      const double dpsi = (pair.psi(u + d) - pair.psi(u - d)) / (2 * d);
      const double expected = std::exp(pair.gamma(u) / (p - 1));
      EXPECT_LE(std::abs(dpsi - expected), 1e-6 * (1 + dpsi)) << pair.id() << " u=" << u;
      const double v = pair.psi(u);
      if (pair.v_endpoint().is_finite() && v + d >= pair.v_endpoint().value()) continue;
      const double dv = d * (1 + v);
      if (pair.v_endpoint().is_finite() && v + dv >= pair.v_endpoint().value()) continue;
      const double dh = (pair.h(v + dv) - pair.h(v - std::min(dv, v))) / (dv + std::min(dv, v));
      EXPECT_LE(std::abs(dh * (1 + pair.g()(v)) - 1), 1e-5) << pair.id() << " v=" << v;
    }
  }
}

TEST(CatalogProperties, RelationBetaEqualsScaledGPrime) {
  for (const auto& pair : builtin_catalog()) {
    const double top = u_top(pair);
    for (int k = 0; k < 40; ++k) {
      const double u = top * k / 39.0;
      const double beta = pair.beta()(u);
      const double rhs = (pair.p() - 1) * pair.g_prime(pair.psi(u));
      EXPECT_LE(std::abs(beta - rhs), 1e-6 * std::max(1.0, std::abs(beta))) << pair.id() << " u=" << u;
    }
  }
}

// Each derivation recovers the other half of a cataloged pair.
TEST(CatalogProperties, DictionaryInvolution) {
  for (const char* id : {"ex2", "ex3", "ex5"}) {
    const auto pair = catalog_pair(id);
    const auto g_strip = ScalarFunction::closed_form("g", [pair](double v) { return pair.g()(v); },
                                                     pair.v_endpoint());
    const auto b_strip = ScalarFunction::closed_form("beta", [pair](double u) { return pair.beta()(u); },
                                                     pair.u_endpoint());
    const auto from_g = derive_beta_from_g(g_strip, 2.0);
    const auto from_beta = derive_g_from_beta(b_strip, 2.0);
    for (double u : {0.05, 0.3, 0.6, 0.9}) {
      const double b = pair.beta()(u);
      EXPECT_LE(std::abs(from_g.beta()(u) - b), 1e-5 * b) << id << " u=" << u;
      const double v = pair.psi(u);
      EXPECT_LE(std::abs(from_beta.g()(v) - pair.g()(v)), 1e-7 * (1 + pair.g()(v))) << id << " v=" << v;
    }
  }
}

TEST(CatalogProperties, MonotoneBetaIffConvexG) {
  for (const char* id : {"ex3", "ex4", "ex5", "ex6"}) {
    const auto pair = catalog_pair(id);
    const double top = u_top(pair);
    double prev = pair.beta()(0.0);
    for (int k = 1; k < 100; ++k) {
      const double b = pair.beta()(top * k / 99.0);
      EXPECT_GE(b - prev, 0.0) << id;
      prev = b;
    }
    const double vtop = pair.v_endpoint().is_finite() ? 0.99 * pair.v_endpoint().value() : 20.0;
    const double dv = vtop / 100.0;
    for (int k = 1; k < 99; ++k) {
      const double v = k * dv;
      const double second = pair.g()(v + dv) - 2 * pair.g()(v) + pair.g()(v - dv);
      EXPECT_GE(second, -1e-8 * (1 + std::abs(pair.g()(v)))) << id << " v=" << v;
    }
  }
  // ex2 has decreasing beta and concave g.
  const auto ex2 = catalog_pair("ex2");
  EXPECT_LT(ex2.beta()(1.0), ex2.beta()(0.0));
  EXPECT_LT(ex2.g()(2.0) - 2 * ex2.g()(1.0) + ex2.g()(0.0), 0.0);
}

TEST(CatalogProperties, MassTransferTrichotomy) {
  for (const auto& pair : builtin_catalog()) {
    for (MassSide side : {MassSide::v_equation, MassSide::u_equation}) {
      const MassTransferRule rule = singular_mass_transfer(pair, 1.0, side);
      int hits = 0;
      for (MassCase c : {MassCase::transfer, MassCase::annihilate_u_side, MassCase::forbid_u_side,
                         MassCase::forbid_v_side})
        hits += rule.kind == c;
      EXPECT_EQ(hits, 1);
    }
  }
}

TEST(CatalogProperties, EndpointConsistency) {
  // Lambda = Psi(L) and L = H(Lambda), approached from inside.
  for (const auto& pair : builtin_catalog()) {
    const EndpointFlags& f = pair.flags();
    if (f.L->is_finite()) {
      const double L = f.L->value();
      const double near = pair.psi(L * (1 - 1e-9));
      if (f.Lambda->is_finite())
        EXPECT_NEAR(near, f.Lambda->value(), 1e-3) << pair.id();
      else
        EXPECT_GT(pair.psi(L * (1 - 1e-15)), near + 10.0) << pair.id();
    }
    if (f.Lambda->is_finite()) EXPECT_NEAR(pair.h(f.Lambda->value() * (1 - 1e-12)), f.L->value(), 1e-6);
  }
}
