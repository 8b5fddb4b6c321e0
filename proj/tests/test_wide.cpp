#include <gtest/gtest.h>
#include <quadmath.h>

#include <cmath>
#include <random>

#include "hustab/wide.hpp"

namespace {

using hustab::Wide;
using quad = __float128;

quad to_quad(const Wide& w) { return static_cast<quad>(w.hi()) + static_cast<quad>(w.lo()); }

double rel_err(const Wide& got, quad want) { return static_cast<double>(fabsq((to_quad(got) - want) / want)); }

TEST(Wide, SumAndProductAreExactForDoubleInputs) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1e3, 1e3);
  for (int k = 0; k < 1000; ++k) {
    const double a = d(rng);
    const double b = d(rng) * 1e-9;
    EXPECT_EQ(to_quad(Wide(a) + b), static_cast<quad>(a) + static_cast<quad>(b));
    EXPECT_EQ(to_quad(Wide(a) * b), static_cast<quad>(a) * static_cast<quad>(b));
  }
}

TEST(Wide, DivisionIsAccurateTo1e30) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(1e-3, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const Wide a = Wide(d(rng)) / 3.0;
    const Wide b = d(rng);
    EXPECT_LT(rel_err(a / b, to_quad(a) / to_quad(b)), 1e-30);
  }
}

TEST(Wide, ExpLogPowMatchQuadPrecision) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> x_dist(1e-3, 1.0);
  std::uniform_real_distribution<double> a_dist(-5.0, 0.0);
  double worst_exp = 0.0;
  double worst_log = 0.0;
  double worst_pow = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const double x = x_dist(rng);
    const double alpha = a_dist(rng);
    const double e_arg = alpha * 7.0;
    worst_exp = std::max(worst_exp, rel_err(hustab::exp(Wide(e_arg)), expq(e_arg)));
    worst_log = std::max(worst_log, static_cast<double>(fabsq(to_quad(hustab::log(Wide(x))) - logq(x))));
    worst_pow = std::max(worst_pow, rel_err(hustab::pow(Wide(x), alpha), powq(x, alpha)));
  }
  EXPECT_LT(worst_exp, 1e-30);
  EXPECT_LT(worst_log, 1e-31);  // absolute: log crosses zero
  EXPECT_LT(worst_pow, 1e-29);
}

TEST(Wide, PowSpecialCasesAreExact) {
  EXPECT_EQ(hustab::pow(Wide(0.37), 0.0), Wide(1.0));
  EXPECT_EQ(hustab::pow(Wide(1.0), -3.5), Wide(1.0));
  EXPECT_EQ(hustab::log(Wide(1.0)), Wide(0.0));
  EXPECT_EQ(hustab::exp(Wide(0.0)), Wide(1.0));
}

TEST(Wide, ExpSaturatesOutsideDoubleRange) {
  EXPECT_EQ(hustab::exp(Wide(-800.0)).hi(), 0.0);
  EXPECT_TRUE(std::isinf(hustab::exp(Wide(800.0)).hi()));
  EXPECT_TRUE(std::isnan(hustab::log(Wide(-1.0)).hi()));
}

TEST(Wide, ComparisonsUseBothWords) {
  const Wide one = 1.0;
  const Wide above(1.0, 1e-20);
  EXPECT_LT(one, above);
  EXPECT_GT(above, one);
  EXPECT_NE(one, above);
  EXPECT_EQ(above.to_double(), 1.0);
}

}  // namespace
