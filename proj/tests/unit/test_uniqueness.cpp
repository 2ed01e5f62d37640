#include <gtest/gtest.h>

#include "quasilin/analysis.hpp"
#include "quasilin/errors.hpp"
#include "quasilin/solver.hpp"

using namespace quasilin;

namespace {

ProblemSpec linear(double lambda, int n = 201) {
  ProblemSpec spec;
  spec.domain = RadialDomain::interval(0, 1);
  spec.n = n;
  spec.lambda = lambda;
  return spec;
}

double lambda1() {
  return first_eigenvalue(ScalarFunction::constant(1.0), 2.0, RadialDomain::interval(0, 1), 201).lambda1;
}

}  // namespace

TEST(Uniqueness, LinearBelowLambda1) {
  const double l1 = lambda1();
  const ProblemSpec spec = linear(0.5 * l1);
  const SolveOutcome sol = minimal_solution(spec);
  ASSERT_TRUE(sol.converged());
  const GridField half(sol.field->grid_ptr(), 0.5 * sol.field->values(), FieldKind::v_field);
  UniquenessOptions opt;
  opt.lambda1 = l1;
  const UniquenessReport rep =
      uniqueness_probe(spec, {GridField::zeros(spec.make_grid(), FieldKind::v_field), half}, opt);
  EXPECT_TRUE(rep.unique);
  EXPECT_EQ(rep.distinct_limits, 1);
  EXPECT_LE(rep.distances[0][1], 1e-8);
}

TEST(Uniqueness, LambdaZero) {
  const ProblemSpec spec = linear(0.0, 51);
  const auto grid = spec.make_grid();
  const UniquenessReport rep = uniqueness_probe(
      spec, {GridField::zeros(grid, FieldKind::v_field), sample(grid, [](double x) { return 0.0 * x; }, FieldKind::v_field)});
  EXPECT_TRUE(rep.unique);
  EXPECT_EQ(rep.starts[0].limit->sup_norm(), 0.0);
}

TEST(Uniqueness, Refusals) {
  const double l1 = lambda1();
  ProblemSpec spec = linear(1.1 * l1, 51);
  UniquenessOptions opt;
  opt.lambda1 = l1;
  const auto zero = GridField::zeros(spec.make_grid(), FieldKind::v_field);
  EXPECT_THROW(uniqueness_probe(spec, {zero}, opt), PreconditionError);
  spec.lambda = 1.0;
  spec.pair = catalog_pair("ex5");
  EXPECT_THROW(uniqueness_probe(spec, {zero}), PreconditionError);
}

TEST(Uniqueness, BratuHasTwoLimits) {
  ProblemSpec spec = linear(1.0, 201);
  spec.pair = catalog_pair("ex5");
  const SolveOutcome low = minimal_solution(spec);
  const SolveOutcome high = mountain_pass_solve(spec, *low.field);
  ASSERT_TRUE(high.converged()) << high.message;
  UniquenessOptions opt;
  opt.force = true;
  const UniquenessReport rep =
      uniqueness_probe(spec, {GridField::zeros(spec.make_grid(), FieldKind::v_field), *high.field}, opt);
  EXPECT_FALSE(rep.unique);
  EXPECT_EQ(rep.distinct_limits, 2);
}

TEST(Uniqueness, FailingStartIsRecorded) {
  const double l1 = lambda1();
  const ProblemSpec spec = linear(0.5 * l1, 201);
  const auto grid = spec.make_grid();
  // Far above the solution: the iteration decreases, which the monotone
  // iteration reports as an error for that start only.
  const GridField high = sample(grid, [](double x) { return 100 * x * (1 - x); }, FieldKind::v_field);
  const UniquenessReport rep = uniqueness_probe(spec, {GridField::zeros(grid, FieldKind::v_field), high});
  EXPECT_EQ(rep.starts.size(), 2u);
  EXPECT_TRUE(rep.starts[0].limit.has_value());
  EXPECT_EQ(rep.starts[1].status, SolveStatus::error);
  EXPECT_FALSE(rep.starts[1].message.empty());
}
