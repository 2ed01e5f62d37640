#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "quasilin/errors.hpp"
#include "quasilin/p_laplacian.hpp"

using namespace quasilin;

namespace {

Vector random_field(const RadialGrid& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Vector u(grid.size());
  for (int i = 0; i < grid.size(); ++i) u[i] = grid.is_dirichlet(i) ? 0.0 : unit(rng);
  return u;
}

// -(r^{N-1} phi(U'))' / r^{N-1} for U = cos(pi r / 2) on ball(1, N), or
// U = sin(pi x) on (0, 1) with N = 1.
double exact_operator(double r, double p, int N, bool ball) {
  const double pi = std::numbers::pi;
  double du, d2u;
  if (ball) {
    du = -pi / 2 * std::sin(pi * r / 2);
    d2u = -pi * pi / 4 * std::cos(pi * r / 2);
  } else {
    du = pi * std::cos(pi * r);
    d2u = -pi * pi * std::sin(pi * r);
  }
  const double flux = std::pow(std::abs(du), p - 2) * du;
  const double dflux = (p - 1) * std::pow(std::abs(du), p - 2) * d2u;
  return -(dflux + (N - 1) / r * flux);
}

double manufactured_error(int n, double p, bool ball) {
  const auto domain = ball ? RadialDomain::ball(1, 3) : RadialDomain::interval(0, 1);
  const auto grid = build_grid(domain, n);
  const double pi = std::numbers::pi;
  const GridField u = sample(grid, [&](double r) { return ball ? std::cos(pi * r / 2) : std::sin(pi * r); });
  const GridField out = apply_p_laplacian(u, p);
  double err = 0.0;
  for (int i = 1; i < n - 1; ++i)
    err = std::max(err, std::abs(out[i] - exact_operator(grid->node(i), p, domain.dim(), ball)));
  return err;
}

}  // namespace

TEST(PLaplacian, QuadraticIsExact) {
  const auto grid = build_grid(RadialDomain::interval(0, 1), 41);
  const GridField u = sample(grid, [](double x) { return x * (1 - x) / 2; });
  const GridField out = apply_p_laplacian(u, 2.0);
  for (int i = 1; i < 40; ++i) EXPECT_NEAR(out[i], 1.0, 1e-12);
  EXPECT_EQ(out[0], 0.0);
  EXPECT_EQ(out[40], 0.0);
}

TEST(PLaplacian, RadialQuadraticIsExactOnBalls) {
  // U = (1 - r^2) / (2N) solves -Delta U = 1.
  for (int N : {2, 3}) {
    const auto grid = build_grid(RadialDomain::ball(1, N), 33);
    const GridField u = sample(grid, [N](double r) { return (1 - r * r) / (2 * N); });
    const GridField out = apply_p_laplacian(u, 2.0);
    for (int i = 0; i < 32; ++i) EXPECT_NEAR(out[i], 1.0, 1e-11) << "N=" << N << " i=" << i;
  }
}

TEST(PLaplacian, ZeroField) {
  const auto grid = build_grid(RadialDomain::ball(1, 3), 21);
  for (double p : {1.5, 2.0, 3.0})
    EXPECT_EQ(apply_p_laplacian(GridField::zeros(grid), p).sup_norm(), 0.0);
}

TEST(PLaplacian, RejectsP) {
  const auto grid = build_grid(RadialDomain::interval(0, 1), 5);
  EXPECT_THROW(apply_p_laplacian(GridField::zeros(grid), 1.0), ValidationError);
}

TEST(PLaplacian, DiracFluxIsInstalledExactly) {
  // The pinned inner flux enters the center row alone.
  const auto grid = build_grid(RadialDomain::ball(1, 3), 51);
  const Flux law{2.0, kDefaultEpsilon};
  const Vector u = Vector::Zero(grid->size());
  const Vector out = p_laplacian(*grid, u, law, 1.0);
  EXPECT_NEAR(out[0] * grid->control_weights()[0], -1.0 / (4 * std::numbers::pi), 1e-14);
}

TEST(PLaplacianProperties, IntegrationByParts) {
  std::mt19937_64 rng(7);
  for (double p : {1.5, 2.0, 3.0}) {
    for (const auto& domain : {RadialDomain::interval(0, 1), RadialDomain::ball(1, 3)}) {
      const auto grid = build_grid(domain, 31);
      const Flux law{p, kDefaultEpsilon};
      for (int trial = 0; trial < 50; ++trial) {
        const Vector u = random_field(*grid, rng);
        const Vector w = random_field(*grid, rng);
        Vector op = p_laplacian(*grid, u, law);
        for (int i = 0; i < grid->size(); ++i)
          if (grid->is_dirichlet(i)) op[i] = 0.0;
        const double lhs = control_pairing(*grid, op, w);
        const double rhs = flux_pairing(*grid, u, w, law);
        EXPECT_NEAR(lhs, rhs, 1e-11 * (1 + std::abs(rhs))) << "p=" << p;
      }
    }
  }
}

TEST(PLaplacianProperties, Monotone) {
  std::mt19937_64 rng(11);
  for (double p : {1.5, 2.0, 3.0}) {
    const auto grid = build_grid(RadialDomain::ball(1, 2), 25);
    const Flux law{p, kDefaultEpsilon};
    for (int trial = 0; trial < 100; ++trial) {
      const Vector u = random_field(*grid, rng);
      const Vector v = random_field(*grid, rng);
      Vector diff = p_laplacian(*grid, u, law) - p_laplacian(*grid, v, law);
      for (int i = 0; i < grid->size(); ++i)
        if (grid->is_dirichlet(i)) diff[i] = 0.0;
      EXPECT_GE(control_pairing(*grid, diff, u - v), -1e-12);
    }
  }
}

TEST(PLaplacianProperties, EnergyGradientMatchesResidual) {
  std::mt19937_64 rng(3);
  const auto grid = build_grid(RadialDomain::ball(1, 3), 15);
  for (double p : {1.5, 3.0}) {
    const Flux law{p, 1e-6};
    const Vector u = random_field(*grid, rng);
    const Vector rhs = Vector::Constant(grid->size(), 0.7);
    const Vector op = p_laplacian(*grid, u, law, 0.3);
    for (int i = grid->first_unknown(); i <= grid->last_unknown(); ++i) {
      Vector up = u, um = u;
      const double d = 1e-6;
      up[i] += d;
      um[i] -= d;
      const double fd = (discrete_energy(*grid, up, rhs, law, 0.3) - discrete_energy(*grid, um, rhs, law, 0.3)) / (2 * d);
      const double g = grid->control_weights()[i] * (op[i] - rhs[i]);
      EXPECT_NEAR(fd, g, 1e-6 * (1 + std::abs(g))) << "p=" << p << " i=" << i;
    }
  }
}

TEST(PLaplacianProperties, JacobianMatchesDifferences) {
  std::mt19937_64 rng(5);
  const auto grid = build_grid(RadialDomain::interval(0, 1), 12);
  const Flux law{3.0, kDefaultEpsilon};
  const Vector u = random_field(*grid, rng);
  const auto jac = flux_jacobian(*grid, u, law);
  const int first = grid->first_unknown();
  for (int k = 0; k < grid->unknown_count(); ++k) {
    const int i = first + k;
    Vector up = u, um = u;
    const double d = 1e-6;
    up[i] += d;
    um[i] -= d;
    const Vector col = (p_laplacian(*grid, up, law) - p_laplacian(*grid, um, law)) / (2 * d);
    EXPECT_NEAR(col[i] * grid->control_weights()[i], jac.diag[k], 1e-5 * (1 + std::abs(jac.diag[k])));
    if (k + 1 < grid->unknown_count())
      EXPECT_NEAR(col[i + 1] * grid->control_weights()[i + 1], jac.off[k], 1e-5 * (1 + std::abs(jac.off[k])));
  }
}

TEST(PLaplacianProperties, ThomasSolveMatchesDense) {
  SymmetricTridiagonal<double> a{Vector::Constant(6, 4.0), Vector::Constant(5, -1.0)};
  const Vector rhs = Vector::LinSpaced(6, 1, 6);
  const Vector x = solve_spd(a, rhs);
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(6, 6);
  for (int i = 0; i < 6; ++i) dense(i, i) = 4.0;
  for (int i = 0; i < 5; ++i) dense(i, i + 1) = dense(i + 1, i) = -1.0;
  EXPECT_LT((dense * x - rhs).norm(), 1e-13);
}

TEST(PLaplacianRefinement, SecondOrderForP2) {
  for (bool ball : {false, true}) {
    const double e1 = manufactured_error(101, 2.0, ball);
    const double e2 = manufactured_error(201, 2.0, ball);
    const double e3 = manufactured_error(401, 2.0, ball);
    EXPECT_GE(std::log2(e1 / e2), 1.9) << ball;
    EXPECT_GE(std::log2(e2 / e3), 1.9) << ball;
  }
}

TEST(PLaplacianRefinement, FirstOrderForP3) {
  for (bool ball : {false, true}) {
    const double e1 = manufactured_error(101, 3.0, ball);
    const double e2 = manufactured_error(201, 3.0, ball);
    const double e3 = manufactured_error(401, 3.0, ball);
    EXPECT_GE(std::log2(e1 / e2), 0.9) << ball;
    EXPECT_GE(std::log2(e2 / e3), 0.9) << ball;
  }
}

// Away from the critical point of sin(pi x), where the exact operator for
// p < 2 is unbounded.
TEST(PLaplacianRefinement, SingularPAwayFromCriticalPoint) {
  const double p = 1.5, pi = std::numbers::pi;
  std::vector<double> errs;
  for (int n : {101, 201, 401}) {
    const auto grid = build_grid(RadialDomain::interval(0, 1), n);
    const GridField out = apply_p_laplacian(sample(grid, [&](double x) { return std::sin(pi * x); }), p);
    double err = 0.0;
    for (int i = 1; i < n - 1; ++i) {
      const double x = grid->node(i);
      if (std::abs(x - 0.5) < 0.1) continue;
      err = std::max(err, std::abs(out[i] - exact_operator(x, p, 1, false)));
    }
    errs.push_back(err);
  }
  EXPECT_GE(std::log2(errs[0] / errs[1]), 0.9);
  EXPECT_GE(std::log2(errs[1] / errs[2]), 0.9);
}
