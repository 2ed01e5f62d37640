#include <gtest/gtest.h>

#include <cmath>

#include "oracles/shooting.hpp"

namespace {

const oracle::Source kExp = [](double w) { return std::exp(w); };

}  // namespace

// -v'' = lambda e^v on (0, 1) has v = -2 log(cosh(theta (x - 1/2) / 2) / cosh(theta / 4))
// with lambda = theta^2 / (2 cosh^2(theta / 4)) and sup v = 2 log cosh(theta / 4).
TEST(ShootingOracle, BratuClosedForm) {
  for (double theta : {0.5, 2.0, 4.0, 6.0, 10.0}) {
    const double c = std::cosh(theta / 4);
    const double alpha = 2 * std::log(c);
    const double lambda = theta * theta / (2 * c * c);
    EXPECT_NEAR(oracle::interval_lambda(kExp, alpha), lambda, 1e-7 * lambda) << theta;
  }
}

TEST(ShootingOracle, BratuTurningPoint) {
  const auto tp = oracle::maximize([](double a) { return oracle::interval_lambda(kExp, a); }, 0.2, 4.0);
  EXPECT_NEAR(tp.lambda, 3.513830719, 1e-7);
  EXPECT_NEAR(tp.alpha, 1.18684215, 1e-5);
}

TEST(ShootingOracle, LinearSourceGivesEigenvalues) {
  const oracle::Source F = [](double w) { return w; };
  const double pi = std::acos(-1.0);
  // Linear problems: lambda is independent of alpha.
  EXPECT_NEAR(oracle::interval_lambda(F, 0.3), pi * pi, 1e-7);
  EXPECT_NEAR(oracle::interval_lambda(F, 3.0), pi * pi, 1e-7);
  EXPECT_NEAR(oracle::ball_lambda(F, 3, 1.0), pi * pi, 1e-6);
  EXPECT_NEAR(oracle::p_laplacian_lambda1(2.0), pi * pi, 1e-12);
}

TEST(ShootingOracle, SolveAlpha) {
  const auto lam = [](double a) { return oracle::interval_lambda(kExp, a); };
  const double a = oracle::solve_alpha(lam, 1.0, 0.01, 1.0);
  EXPECT_NEAR(lam(a), 1.0, 1e-8);
  EXPECT_THROW(oracle::solve_alpha(lam, 10.0, 0.01, 1.0), std::invalid_argument);
}
