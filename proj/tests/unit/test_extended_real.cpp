#include <gtest/gtest.h>

#include <cmath>

#include "quasilin/errors.hpp"
#include "quasilin/extended_real.hpp"

using quasilin::ExtReal;

TEST(ExtReal, ArithmeticIsTotal) {
  const ExtReal inf = ExtReal::infinity();
  EXPECT_EQ(ExtReal(1.5) + ExtReal(2.0), ExtReal(3.5));
  EXPECT_TRUE((inf + ExtReal(1.0)).is_infinite());
  EXPECT_EQ(ExtReal(0.0) * inf, ExtReal(0.0));
  EXPECT_TRUE((ExtReal(2.0) * inf).is_infinite());
  EXPECT_LT(ExtReal(1e300), inf);
}

TEST(ExtReal, RejectsNegativeAndNaN) {
  EXPECT_THROW(ExtReal(-1.0), quasilin::ValidationError);
  EXPECT_THROW(ExtReal(std::nan("")), quasilin::ValidationError);
}

TEST(ExtReal, ExpOverflowsToInfinity) {
  EXPECT_TRUE(quasilin::ext_exp(1000.0).is_infinite());
  EXPECT_TRUE(quasilin::ext_exp(ExtReal::infinity()).is_infinite());
  EXPECT_DOUBLE_EQ(quasilin::ext_exp(1.0).value(), std::exp(1.0));
  EXPECT_EQ(ExtReal::infinity().to_string(), "inf");
}
