#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "quasilin/errors.hpp"
#include "quasilin/grid.hpp"

using namespace quasilin;

TEST(Grid, IntervalNodes) {
  const auto grid = build_grid(RadialDomain::interval(0, 1), 5);
  ASSERT_EQ(grid->size(), 5);
  for (int i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(grid->node(i), 0.25 * i);
  EXPECT_TRUE(grid->is_dirichlet(0));
  EXPECT_TRUE(grid->is_dirichlet(4));
  EXPECT_EQ(grid->unknown_count(), 3);
}

TEST(Grid, BallNodes) {
  const auto grid = build_grid(RadialDomain::ball(1, 3), 101);
  EXPECT_NEAR(grid->spacing(), 0.01, 1e-15);
  EXPECT_EQ(grid->node(0), 0.0);
  EXPECT_EQ(grid->node(100), 1.0);
  EXPECT_FALSE(grid->is_dirichlet(0));
  EXPECT_EQ(grid->first_unknown(), 0);
}

TEST(Grid, TooFewNodes) {
  EXPECT_THROW(build_grid(RadialDomain::interval(0, 1), 2), ValidationError);
}

TEST(Grid, DomainValidation) {
  EXPECT_THROW(RadialDomain::interval(1, 1), ValidationError);
  EXPECT_THROW(RadialDomain::ball(0, 3), ValidationError);
  EXPECT_THROW(RadialDomain::ball(1, 1), ValidationError);
  EXPECT_NEAR(unit_sphere_area(2), 2 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(unit_sphere_area(3), 4 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(RadialDomain::ball(2, 3).measure(), 32 * std::numbers::pi / 3, 1e-12);
}

TEST(Grid, UniformSpacing) {
  for (int n : {3, 17, 400}) {
    const auto grid = build_grid(RadialDomain::interval(-1, 2), n);
    for (int i = 1; i < n; ++i) EXPECT_NEAR(grid->node(i) - grid->node(i - 1), grid->spacing(), 1e-14);
    EXPECT_EQ(grid->node(n - 1), 2.0);
  }
}

TEST(Grid, QuadratureWeightsSumToMeasure) {
  for (int N : {2, 3, 5}) {
    const auto grid = build_grid(RadialDomain::ball(1.5, N), 37);
    EXPECT_NEAR(grid->quadrature_weights().sum(), grid->domain().measure(), 1e-12);
  }
}

TEST(GridField, Invariants) {
  const auto grid = build_grid(RadialDomain::interval(0, 1), 5);
  Vector v = Vector::Zero(5);
  v[2] = 1.0;
  EXPECT_NO_THROW(GridField(grid, v));
  v[0] = 1.0;
  EXPECT_THROW(GridField(grid, v), ValidationError);
  v[0] = 0.0;
  v[1] = std::nan("");
  EXPECT_THROW(GridField(grid, v), ValidationError);
  EXPECT_THROW(GridField(grid, Vector::Zero(4)), ValidationError);
}

TEST(GridField, SampleZeroesDirichletNodes) {
  const auto grid = build_grid(RadialDomain::ball(1, 3), 11);
  const GridField f = sample(grid, [](double r) { return 2 - r; });
  EXPECT_EQ(f[10], 0.0);
  EXPECT_EQ(f[0], 2.0);
  EXPECT_DOUBLE_EQ(f.sup_norm(), 2.0);
  EXPECT_EQ(to_string(FieldKind::v_field), "v");
}
