#include <gtest/gtest.h>

#include <cmath>

#include "quasilin/analysis.hpp"
#include "quasilin/errors.hpp"
#include "quasilin/solver.hpp"

using namespace quasilin;

namespace {

ProblemSpec singular_spec(int n, double c) {
  ProblemSpec spec;
  spec.domain = RadialDomain::ball(1, 3);
  spec.n = n;
  const double l1 = first_eigenvalue(ScalarFunction::constant(1.0), 2.0, spec.domain, 201).lambda1;
  spec.lambda = 0.1 * l1;
  spec.dirac_mass = c;
  return spec;
}

}  // namespace

TEST(DiracSolve, NoMassMatchesMinimalSolution) {
  const ProblemSpec spec = singular_spec(101, 0.0);
  const SolveOutcome a = dirac_solve(spec);
  const SolveOutcome b = minimal_solution(spec);
  ASSERT_TRUE(a.converged() && b.converged());
  EXPECT_LE((a.field->values() - b.field->values()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DiracSolve, ForbiddenWhenLambdaFinite) {
  ProblemSpec spec = singular_spec(51, 1.0);
  spec.pair = catalog_pair("ex6");
  EXPECT_THROW(dirac_solve(spec), PreconditionError);
}

TEST(DiracSolve, NeedsBallWithPBelowN) {
  ProblemSpec spec = singular_spec(51, 1.0);
  spec.domain = RadialDomain::interval(0, 1);
  EXPECT_THROW(dirac_solve(spec), PreconditionError);
}

TEST(DiracSolve, SeminormsAndFluxes) {
  std::vector<double> semi_v, semi_u, flux_u, flux_v;
  for (int n : {201, 401}) {
    const SolveOutcome out = dirac_solve(singular_spec(n, 1.0));
    ASSERT_TRUE(out.converged()) << out.message;
    ASSERT_TRUE(out.companion.has_value());
    EXPECT_EQ(out.companion->kind(), FieldKind::u_field);
    ASSERT_TRUE(out.mass_rule.has_value());
    EXPECT_EQ(out.mass_rule->kind, MassCase::annihilate_u_side);
    semi_v.push_back(out.norms.w1p_seminorm);
    semi_u.push_back(*out.metric("w1p_seminorm_u"));
    flux_u.push_back(*out.metric("flux_u_at_K"));
    flux_v.push_back(*out.metric("flux_v_at_K"));
  }
  EXPECT_GE(semi_v[1] / semi_v[0], 1.3);
  EXPECT_LE(std::abs(semi_u[1] / semi_u[0] - 1), 0.05);
  EXPECT_LT(flux_u[1], flux_u[0]);
  EXPECT_NEAR(flux_v[1], 1.0, 0.01);
}
