#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "quasilin/errors.hpp"
#include "quasilin/solver.hpp"

using namespace quasilin;

TEST(InnerSolve, PoissonIsExactAtNodes) {
  const auto grid = build_grid(RadialDomain::interval(0, 1), 401);
  const GridField rhs = sample(grid, [](double) { return 1.0; });
  const GridField u = inner_solve(rhs, 2.0);
  EXPECT_NEAR(u[200], 0.125, 1e-12);
  for (int i = 0; i < 401; ++i) {
    const double x = grid->node(i);
    EXPECT_NEAR(u[i], x * (1 - x) / 2, 1e-12);
  }
}

TEST(InnerSolve, PPoissonCenterValue) {
  for (double p : {1.5, 3.0}) {
    const auto grid = build_grid(RadialDomain::interval(0, 1), 401);
    const GridField rhs = sample(grid, [](double) { return 1.0; });
    const GridField u = inner_solve(rhs, p);
    const double exact = (p - 1) / p * std::pow(0.5, p / (p - 1));
    EXPECT_NEAR(u[200], exact, 1e-3 * exact) << "p=" << p;
  }
}

TEST(InnerSolve, GreenFunction) {
  const auto grid = build_grid(RadialDomain::ball(1, 3), 401);
  const GridField u = inner_solve(GridField::zeros(grid), 2.0, 1.0);
  for (int i = 20; i < 400; i += 10) {
    const double r = grid->node(i);
    const double exact = (1 / r - 1) / (4 * std::numbers::pi);
    EXPECT_NEAR(u[i], exact, 0.01 * exact + 1e-12) << "r=" << r;
  }
}

TEST(InnerSolve, ZeroRightSide) {
  const auto grid = build_grid(RadialDomain::ball(1, 2), 31);
  EXPECT_EQ(inner_solve(GridField::zeros(grid), 3.0).sup_norm(), 0.0);
}

TEST(InnerSolve, ResidualWithinTolerance) {
  for (double p : {1.5, 2.0, 3.0}) {
    const auto grid = build_grid(RadialDomain::ball(1, 3), 201);
    const GridField rhs = sample(grid, [](double r) { return 1 + std::cos(4 * r); });
    const GridField u = inner_solve(rhs, p);
    const GridField op = apply_p_laplacian(u, p);
    double err = 0.0;
    for (int i = 0; i < 200; ++i) err = std::max(err, std::abs(op[i] - rhs[i]));
    EXPECT_LE(err, 1e-6) << "p=" << p;
  }
}

TEST(InnerSolveProperties, Comparison) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double p : {1.5, 2.0, 3.0}) {
    for (const auto& domain : {RadialDomain::interval(0, 1), RadialDomain::ball(1, 3)}) {
      const auto grid = build_grid(domain, 41);
      for (int trial = 0; trial < 20; ++trial) {
        Vector f1(41), f2(41);
        for (int i = 0; i < 41; ++i) {
          f1[i] = grid->is_dirichlet(i) ? 0.0 : 5 * unit(rng);
          f2[i] = grid->is_dirichlet(i) ? 0.0 : f1[i] + 5 * unit(rng);
        }
        const GridField u1 = inner_solve(GridField(grid, f1), p);
        const GridField u2 = inner_solve(GridField(grid, f2), p);
        for (int i = 0; i < 41; ++i) EXPECT_LE(u1[i], u2[i] + 1e-10 * (1 + u2.sup_norm())) << "p=" << p;
      }
    }
  }
}
