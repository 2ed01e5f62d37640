#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "quasilin/errors.hpp"
#include "quasilin/scalar_function.hpp"

using namespace quasilin;
namespace fs = std::filesystem;

TEST(ScalarFunction, ClosedFormDomain) {
  auto f = ScalarFunction::closed_form("1/(1-u)", [](double u) { return 1.0 / (1.0 - u); }, ExtReal(1.0));
  EXPECT_DOUBLE_EQ(f(0.5), 2.0);
  EXPECT_THROW(f(1.0), DomainError);
  EXPECT_THROW(f(-0.1), DomainError);
  EXPECT_NEAR(f.derivative(0.5), 4.0, 1e-6);
}

TEST(ScalarFunction, TabulatedInterpolatesAndClosesTable) {
  auto f = ScalarFunction::tabulated({0.0, 1.0, 2.0}, {0.0, 2.0, 3.0});
  EXPECT_DOUBLE_EQ(f(0.5), 1.0);
  EXPECT_DOUBLE_EQ(f(2.0), 3.0);
  EXPECT_THROW(f(2.5), DomainError);
}

TEST(ScalarFunction, TabulatedRejectsBadAbscissae) {
  EXPECT_THROW(ScalarFunction::tabulated({0.0, 1.0, 1.0}, {0, 1, 2}), ValidationError);
  EXPECT_THROW(ScalarFunction::tabulated({0.5, 1.0}, {0, 1}), ValidationError);
}

TEST(ScalarFunction, CsvNeedsHeader) {
  const fs::path dir = fs::temp_directory_path() / "quasilin_sf_test";
  fs::create_directories(dir);
  {
    std::ofstream(dir / "good.csv") << "t,value\n0,0\n1,1\n2,4\n";
    std::ofstream(dir / "nohead.csv") << "0,0\n1,1\n";
  }
  auto f = ScalarFunction::from_csv(dir / "good.csv");
  EXPECT_DOUBLE_EQ(f(1.5), 2.5);
  EXPECT_THROW(ScalarFunction::from_csv(dir / "nohead.csv"), ValidationError);
  EXPECT_THROW(ScalarFunction::from_csv(dir / "missing.csv"), ValidationError);
}
