#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

#include "hustab/domain.hpp"

namespace {

using namespace hustab;

TEST(Alpha, RejectsPositiveAndNonFinite) {
  EXPECT_NO_THROW(Alpha(0.0));
  EXPECT_NO_THROW(Alpha(-3.0));
  EXPECT_THROW(Alpha(0.5), std::invalid_argument);
  EXPECT_THROW(Alpha(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
  EXPECT_THROW(Alpha(-std::numeric_limits<double>::infinity()), std::invalid_argument);
  EXPECT_TRUE(Alpha(0.0).is_zero());
  EXPECT_TRUE(Alpha(-1.0).is_negative());
}

TEST(Grid, TinyGridRespectsTheMargin) {
  const DomainGrid g = make_interior_grid(0.25, 2);
  ASSERT_EQ(g.size(), 1u);
  for (const GridPoint& p : g.points()) {
    EXPECT_GE(p.x, 0.25);
    EXPECT_GE(p.y, 0.25);
    EXPECT_LE(p.x + p.y, 0.75);
  }
}

TEST(Grid, CountMatchesBruteForceEnumeration) {
  for (int m : {2, 3, 7, 50, 200}) {
    std::size_t count = 0;
    for (int i = 1; i < m; ++i) {
      for (int j = 1; i + j <= m; ++j) ++count;
    }
    EXPECT_EQ(make_interior_grid(1e-3, m).size(), count) << "m = " << m;
  }
  EXPECT_EQ(make_interior_grid(1e-3, 200).size(), 19900u);
}

TEST(Grid, EveryPointIsStrictlyInteriorAndWithinMargin) {
  for (double eta : {1e-3, 1e-2, 0.1, 0.3}) {
    const DomainGrid g = make_interior_grid(eta, 60);
    for (const GridPoint& p : g.points()) {
      ASSERT_GT(p.x, 0.0);
      ASSERT_GT(p.y, 0.0);
      ASSERT_LT(p.x + p.y, 1.0);
      ASSERT_GE(p.x, eta);
      ASSERT_GE(p.y, eta);
      ASSERT_LE(p.x + p.y, 1.0 - eta + 1e-15);
      ASSERT_EQ(g.axis()[p.i], p.x);
      ASSERT_EQ(g.axis()[p.j], p.y);
    }
  }
}

TEST(Grid, IsDeterministicAndSymmetric) {
  const DomainGrid a = make_interior_grid(1e-3, 80);
  const DomainGrid b = make_interior_grid(1e-3, 80);
  ASSERT_EQ(a.size(), b.size());
  std::set<std::pair<double, double>> pts;
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a.points()[k].x, b.points()[k].x);
    EXPECT_EQ(a.points()[k].y, b.points()[k].y);
    pts.emplace(a.points()[k].x, a.points()[k].y);
  }
  for (const auto& [x, y] : pts) EXPECT_TRUE(pts.count({y, x})) << x << ", " << y;
  EXPECT_TRUE(std::is_sorted(a.axis().begin(), a.axis().end()));
}

TEST(Grid, RejectsBadParameters) {
  EXPECT_THROW(make_interior_grid(0.6, 10), std::invalid_argument);
  EXPECT_THROW(make_interior_grid(1.0 / 3.0, 10), std::invalid_argument);
  EXPECT_THROW(make_interior_grid(0.0, 10), std::invalid_argument);
  EXPECT_THROW(make_interior_grid(-0.1, 10), std::invalid_argument);
  EXPECT_THROW(make_interior_grid(0.01, 1), std::invalid_argument);
}

TEST(ProbabilityVector, ValidatesTheOpenSimplex) {
  EXPECT_NO_THROW(validate_prob_vector(std::vector<double>{0.5, 0.5}));
  EXPECT_NO_THROW(validate_prob_vector(std::vector<double>{0.2, 0.3, 0.5}));
  EXPECT_THROW(validate_prob_vector(std::vector<double>{0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(validate_prob_vector(std::vector<double>{1.0}), std::invalid_argument);
  EXPECT_THROW(validate_prob_vector(std::vector<double>{0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(validate_prob_vector(std::vector<double>{-0.1, 1.1}), std::invalid_argument);
  EXPECT_NO_THROW(validate_prob_vector(std::vector<double>{0.5, 0.5 + 5e-13}));
  EXPECT_THROW(validate_prob_vector(std::vector<double>{0.5, 0.5 + 5e-12}), std::invalid_argument);
}

TEST(SimplexSample, PairRespectsMargin) {
  const auto s = simplex_sample(2, 1, 7, 0.1);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_GE(s[0][0], 0.1);
  EXPECT_LE(s[0][0], 0.9);
  EXPECT_NEAR(s[0][0] + s[0][1], 1.0, 1e-12);
}

TEST(SimplexSample, IsReproducibleBitForBit) {
  const auto a = simplex_sample(3, 100, 42, 0.01);
  const auto b = simplex_sample(3, 100, 42, 0.01);
  ASSERT_EQ(a.size(), 100u);
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(a[k][i], b[k][i]);
  }
  const auto c = simplex_sample(3, 100, 43, 0.01);
  EXPECT_NE(a[0][0], c[0][0]);
}

TEST(SimplexSample, MarginAndSumHoldForManySeeds) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (int n : {2, 3, 6, 10}) {
      for (const ProbabilityVector& p : simplex_sample(n, 30, seed, 0.02)) {
        const double sum = std::accumulate(p.values().begin(), p.values().end(), 0.0);
        ASSERT_NEAR(sum, 1.0, kSimplexSumTolerance);
        for (double v : p.values()) ASSERT_GE(v, 0.02);
      }
    }
  }
}

TEST(SimplexSample, RejectsInfeasibleMargin) {
  EXPECT_THROW(simplex_sample(2, 5, 7, 0.6), std::invalid_argument);
  EXPECT_THROW(simplex_sample(1, 5, 7, 0.1), std::invalid_argument);
}

}  // namespace
