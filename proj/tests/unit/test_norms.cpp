#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "quasilin/errors.hpp"
#include "quasilin/norms.hpp"

using namespace quasilin;

constexpr double kPi = std::numbers::pi;

TEST(Integrate, Examples) {
  const auto interval = build_grid(RadialDomain::interval(0, 1), 11);
  EXPECT_NEAR(integrate(*interval, Vector::Ones(11)), 1.0, 1e-14);

  const auto ball3 = build_grid(RadialDomain::ball(1, 3), 101);
  EXPECT_NEAR(integrate(*ball3, Vector::Ones(101)), 4 * kPi / 3, 1e-6);

  const auto ball2 = build_grid(RadialDomain::ball(1, 2), 101);
  EXPECT_NEAR(integrate(*ball2, ball2->nodes()), 2 * kPi / 3, 1e-6);

  EXPECT_THROW(integrate(*interval, Vector::Ones(10)), ValidationError);
}

TEST(Integrate, ExactOnPiecewiseLinear) {
  const auto grid = build_grid(RadialDomain::interval(0, 2), 5);
  Vector v(5);
  v << 0, 3, -1, 2, 0;
  // Trapezoids with h = 0.5.
  EXPECT_NEAR(integrate(*grid, v), 0.5 * (3 - 1 + 2), 1e-14);
}

TEST(NodalGradient, OneSidedAtEnds) {
  const auto grid = build_grid(RadialDomain::interval(0, 1), 5);
  const Vector g = nodal_gradient(*grid, grid->nodes());
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(g[i], 1.0, 1e-14);
  EXPECT_NEAR(integrate(*grid, g.cwiseAbs().array().pow(3.0).matrix()), 1.0, 1e-14);
}

TEST(ComputeNorms, SineMode) {
  const auto grid = build_grid(RadialDomain::interval(0, 1), 801);
  const GridField u = sample(grid, [](double x) { return std::sin(kPi * x); });
  const NormReport r = compute_norms(u, 2.0, {1.0, 2.0}, ScalarFunction::constant(1.0));
  EXPECT_NEAR(r.sup, 1.0, 1e-12);
  EXPECT_NEAR(r.lk_norm(1.0), 2 / kPi, 1e-5);
  EXPECT_NEAR(r.lk_norm(2.0), std::sqrt(0.5), 1e-5);
  EXPECT_NEAR(r.w1p_seminorm, kPi / std::sqrt(2.0), 1e-4);
  EXPECT_NEAR(r.weighted_p, 0.5, 1e-5);
  EXPECT_THROW(static_cast<void>(r.lk_norm(3.0)), ValidationError);
}

TEST(ComputeNorms, GreenFunctionL2) {
  // (1/(4 pi))(1/r - 1) on ball(1, 3); the center node takes the value at h/2.
  const auto grid = build_grid(RadialDomain::ball(1, 3), 801);
  const double h = grid->spacing();
  const GridField u = sample(grid, [h](double r) { return (1 / std::max(r, h / 2) - 1) / (4 * kPi); });
  const NormReport r = compute_norms(u, 2.0, {2.0}, ScalarFunction::constant(1.0));
  EXPECT_NEAR(r.lk_norm(2.0), std::sqrt(1 / (12 * kPi)), 0.01 * std::sqrt(1 / (12 * kPi)));
}

TEST(ComputeNormsProperties, NonnegativeAndOrdered) {
  const auto grid = build_grid(RadialDomain::ball(1, 3), 101);
  const GridField u = sample(grid, [](double r) { return std::cos(3 * r) - std::cos(3.0); });
  const NormReport r = compute_norms(u, 2.5, {1.0, 2.0, 4.0}, ScalarFunction::constant(1.0));
  const double vol = grid->domain().measure();
  double prev = 0.0;
  for (const auto& [k, v] : r.lk) {
    EXPECT_GE(v, 0.0);
    const double normalized = v / std::pow(vol, 1 / k);
    EXPECT_LE(normalized, r.sup * (1 + 1e-12));
    EXPECT_GE(normalized, prev * (1 - 1e-12));  // Jensen on a probability measure
    prev = normalized;
  }
  EXPECT_GE(r.w1p_seminorm, 0.0);
}

TEST(EnclosedMass, FundamentalSolution) {
  // Flux of (1/(4 pi))(1/r - 1) through any sphere is 1.
  const auto grid = build_grid(RadialDomain::ball(1, 3), 401);
  const double h = grid->spacing();
  const GridField u = sample(grid, [h](double r) { return (1 / std::max(r, h) - 1) / (4 * kPi); });
  for (int k : {10, 100, 300}) EXPECT_NEAR(enclosed_mass(u, 2.0, k), 1.0, 0.3 / (k * k)) << k;  // O((h/r)^2)
  EXPECT_THROW(enclosed_mass(u, 2.0, 0), ValidationError);
}
