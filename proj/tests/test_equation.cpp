#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hustab/approximant.hpp"
#include "hustab/equation.hpp"
#include "hustab/generators.hpp"

namespace {

using namespace hustab;

TEST(EvalF, MatchesClosedForms) {
  EXPECT_DOUBLE_EQ(eval_f(FunctionSpec::power(1.0, 0.0), Alpha(-1.0), 0.25), 4.0);
  EXPECT_NEAR(eval_f(FunctionSpec::log_form(2.0, -1.0), Alpha(0.0), 0.5), 2.0 * std::log(0.5) - 1.0, 1e-15);
  EXPECT_NEAR(eval_f(FunctionSpec::log_form(2.0, -1.0), Alpha(0.0), 0.5), -2.386294, 1e-6);
  EXPECT_NEAR(eval_f(FunctionSpec::power(1.0, 2.0), Alpha(-0.5), 0.25), 2.0 + 2.0 * std::sqrt(4.0 / 3.0) - 2.0,
              1e-15);
  EXPECT_NEAR(eval_f(FunctionSpec::power(1.0, 2.0), Alpha(-0.5), 0.25), 2.309401, 1e-6);
}

TEST(EvalF, RejectsPointsOutsideTheOpenInterval) {
  const FunctionSpec f = FunctionSpec::power(1.0, 0.0);
  EXPECT_THROW(eval_f(f, Alpha(-1.0), 0.0), std::domain_error);
  EXPECT_THROW(eval_f(f, Alpha(-1.0), 1.0), std::domain_error);
  EXPECT_THROW(eval_f(f, Alpha(-1.0), -0.2), std::domain_error);
}

TEST(Defect, VanishesForExactSolutions) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const FunctionSpec inv = FunctionSpec::power(1.0, 0.0);
  for (int k = 0; k < 500; ++k) {
    const double x = 0.001 + 0.99 * u(rng);
    const double y = (1.0 - x) * (0.001 + 0.998 * u(rng));
    EXPECT_LE(std::fabs(defect(inv, Alpha(-1.0), x, y)), 1e-12) << x << ", " << y;
  }
}

TEST(Defect, HandValueForTheIdentityFunction) {
  // 0.5 + 2 * 0.5 - 0.25 - (4/3)(2/3) = 13/36.
  std::vector<double> xs;
  std::vector<double> vs;
  for (int k = 1; k < 1000; ++k) {
    xs.push_back(k / 1000.0);
    vs.push_back(k / 1000.0);
  }
  const FunctionSpec table = FunctionSpec::tabulated(xs, vs);
  EXPECT_NEAR(defect(table, Alpha(-1.0), 0.5, 0.25), 13.0 / 36.0, 1e-12);
  const FunctionSpec identity = FunctionSpec::callable([](double x) { return x; }, "x");
  EXPECT_NEAR(defect(identity, Alpha(-1.0), 0.5, 0.25), 13.0 / 36.0, 1e-15);
}

TEST(Defect, IsExactlyAntisymmetricAndZeroOnTheDiagonal) {
  const std::vector<FunctionSpec> specs{
      FunctionSpec::callable([](double x) { return std::sin(7.0 * x) + x * x; }, "wiggle"),
      perturb(FunctionSpec::power(3.0, -2.0), {1e-2, 5, NoiseKind::uniform}),
      perturb(FunctionSpec::log_form(1.0, 0.5), {1e-2, 6, NoiseKind::comb}),
  };
  const DomainGrid grid = make_interior_grid(1e-2, 40);
  for (const FunctionSpec& f : specs) {
    for (double alpha : {-2.0, -0.3, 0.0}) {
      for (const GridPoint& p : grid.points()) {
        const double d = defect(f, Alpha(alpha), p.x, p.y);
        ASSERT_EQ(d, -defect(f, Alpha(alpha), p.y, p.x));
        if (p.x == p.y) {
          ASSERT_EQ(d, 0.0);
        }
      }
    }
  }
}

TEST(Defect, RejectsPointsOutsideTheOpenTriangle) {
  const FunctionSpec f = FunctionSpec::power(1.0, 0.0);
  EXPECT_THROW(defect(f, Alpha(-1.0), 0.0, 0.5), std::domain_error);
  EXPECT_THROW(defect(f, Alpha(-1.0), 0.5, 0.5), std::domain_error);
  EXPECT_THROW(defect(f, Alpha(-1.0), 0.7, 0.4), std::domain_error);
}

TEST(ResidualSup, ExactSolutionsOnTheDefaultGrid) {
  const DomainGrid grid = make_interior_grid(1e-3, 200);
  EXPECT_LE(residual_sup(make_exact_power(2.0, -1.0, Alpha(-0.5)), Alpha(-0.5), grid).value, 1e-9);
  EXPECT_LE(residual_sup(make_exact_log(1.0, 0.0), Alpha(0.0), grid).value, 1e-12);
}

TEST(ResidualSup, EqualsTheBruteForceGridMaximum) {
  const DomainGrid grid = make_interior_grid(1e-2, 60);
  const FunctionSpec f = perturb(FunctionSpec::power(1.0, 0.5), {1e-3, 11, NoiseKind::uniform});
  const ResidualEstimate est = residual_sup(f, Alpha(-1.0), grid);
  double best = 0.0;
  ArgPoint where{};
  for (const GridPoint& p : grid.points()) {
    const double v = std::fabs(defect(f, Alpha(-1.0), p.x, p.y));
    if (v > best) {
      best = v;
      where = {p.x, p.y};
    }
  }
  EXPECT_EQ(est.value, best);
  EXPECT_EQ(est.provenance, Provenance::estimated_on_grid);
  ASSERT_TRUE(est.argmax && est.grid);
  EXPECT_EQ(std::fabs(defect(f, Alpha(-1.0), est.argmax->x, est.argmax->y)), best);
  const ArgPoint mirrored{est.argmax->y, est.argmax->x};
  EXPECT_TRUE(where == *est.argmax || where == mirrored);
  EXPECT_EQ(est.grid->resolution, 60);
}

TEST(ResidualSup, NoisyExactSolutionStaysBelowTheNoiseBound) {
  const DomainGrid grid = make_interior_grid(1e-3, 120);
  for (NoiseKind kind : {NoiseKind::uniform, NoiseKind::comb}) {
    const FunctionSpec f = perturb(FunctionSpec::power(1.0, 0.0), {1e-3, 2, kind});
    const double est = residual_sup(f, Alpha(-1.0), grid).value;
    EXPECT_GT(est, 0.0);
    EXPECT_LE(est, noise_residual_bound(1e-3, Alpha(-1.0), grid).value);
  }
}

TEST(ResidualSup, ReportsTheFailingPointForShortTables) {
  const FunctionSpec narrow = FunctionSpec::tabulated({0.2, 0.8}, {1.0, 2.0});
  try {
    residual_sup(narrow, Alpha(-1.0), make_interior_grid(1e-2, 10));
    FAIL() << "expected a domain error";
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("grid point"), std::string::npos);
  }
}

TEST(Transforms, FMatchesFAndIsHomogeneous) {
  const FunctionSpec f = FunctionSpec::power(1.0, 2.0);
  const Alpha alpha(-0.7);
  for (double x : {0.1, 0.25, 0.5, 0.9}) {
    EXPECT_NEAR(transform_F(f, alpha, 1.0 - x, x), eval_f(f, alpha, x), 1e-12 * std::fabs(eval_f(f, alpha, x)));
  }
  for (double t : {0.5, 2.0, 10.0}) {
    for (const auto& [u, v] : std::vector<std::pair<double, double>>{{1.0, 1.0}, {0.3, 2.0}, {5.0, 0.1}}) {
      const double lhs = transform_F(f, alpha, t * u, t * v);
      const double rhs = std::pow(t, alpha.value()) * transform_F(f, alpha, u, v);
      EXPECT_NEAR(lhs, rhs, 1e-12 * std::fabs(rhs));
    }
  }
  EXPECT_NEAR(transform_F(FunctionSpec::power(1.0, 0.0), Alpha(-1.0), 2.0, 1.0), 1.0, 1e-15);
}

TEST(Transforms, GHasTheClosedFormOfThePowerSolution) {
  EXPECT_EQ(transform_g(FunctionSpec::power(3.0, 1.0), Alpha(-2.0), 1.0), 0.0);
  EXPECT_NEAR(transform_g(FunctionSpec::power(1.0, 0.0), Alpha(-1.0), 2.0), 0.5, 1e-15);
  for (const auto& [a, b] : std::vector<std::pair<double, double>>{{1.0, 0.0}, {-3.0, 4.0}, {7.5, 7.5}}) {
    const FunctionSpec f = FunctionSpec::power(a, b);
    for (double alpha : {-3.0, -1.0, -0.2}) {
      for (double u : {0.5, 2.0, 3.0, 11.0}) {
        EXPECT_NEAR(transform_g(f, Alpha(alpha), u), (b - a) * (std::pow(u, alpha) - 1.0), 1e-10);
      }
      for (double u : {0.5, 2.0, 3.0}) {
        for (double v : {0.5, 2.0, 3.0}) {
          const double lhs = transform_g(f, Alpha(alpha), u * v);
          const double rhs = transform_g(f, Alpha(alpha), u) * std::pow(v, alpha) + transform_g(f, Alpha(alpha), v);
          EXPECT_NEAR(lhs, rhs, 1e-10);
        }
      }
    }
  }
}

TEST(Transforms, GOfTheLogSolutionIsLambdaLn) {
  for (double u : {0.25, 2.0, 7.0}) {
    EXPECT_NEAR(transform_g(FunctionSpec::log_form(2.5, -4.0), Alpha(0.0), u), 2.5 * std::log(u), 1e-14);
  }
}

TEST(Transforms, GIsSymmetricForExactSolutions) {
  EXPECT_NEAR(transform_G(FunctionSpec::power(1.0, 0.0), Alpha(-1.0), 1.0, 2.0), 1.0, 1e-15);
  const FunctionSpec f = FunctionSpec::power(2.0, -5.0);
  for (const auto& [u, v] : std::vector<std::pair<double, double>>{{1.0, 2.0}, {0.1, 4.0}, {3.0, 3.5}}) {
    EXPECT_NEAR(transform_G(f, Alpha(-1.5), u, v), transform_G(f, Alpha(-1.5), v, u), 1e-10);
  }
}

TEST(Transforms, CocycleVanishesForExactSolutions) {
  EXPECT_LE(std::fabs(cocycle_defect(FunctionSpec::power(2.0, -1.0), Alpha(-0.5), 1.0, 1.0, 1.0)), 1e-12);
  EXPECT_LE(std::fabs(cocycle_defect(FunctionSpec::power(1.0, 1.0), Alpha(-1.0), 1.0, 2.0, 2.0)), 1e-12);
}

// At alpha = 0 a perturbation |n| <= delta has residual at most 4 delta on
// all of the open triangle, so the substitution bounds can be checked with a
// true supremum rather than a grid estimate.
TEST(Transforms, PerturbedBoundsAtAlphaZero) {
  const double delta = 1e-3;
  const double eps = 4.0 * delta;
  for (NoiseKind kind : {NoiseKind::uniform, NoiseKind::comb}) {
    const FunctionSpec f = perturb(FunctionSpec::log_form(1.5, 0.25), {delta, 9, kind});
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> d(0.05, 5.0);
    for (int k = 0; k < 200; ++k) {
      const double u = d(rng);
      const double v = d(rng);
      const double w = d(rng);
      EXPECT_LE(std::fabs(transform_G(f, Alpha(0.0), u, v) - transform_G(f, Alpha(0.0), v, u)), 3.0 * eps);
      EXPECT_LE(std::fabs(cocycle_defect(f, Alpha(0.0), u, v, w)), eps);
    }
  }
}

TEST(Transforms, RejectNonPositiveArguments) {
  const FunctionSpec f = FunctionSpec::power(1.0, 0.0);
  EXPECT_THROW(transform_F(f, Alpha(-1.0), 0.0, 1.0), std::domain_error);
  EXPECT_THROW(transform_g(f, Alpha(-1.0), -2.0), std::domain_error);
  EXPECT_THROW(cocycle_defect(f, Alpha(-1.0), 1.0, 1.0, 0.0), std::domain_error);
}

TEST(FunctionSpec, TabulatedInterpolatesAndValidates) {
  const FunctionSpec t = FunctionSpec::tabulated({0.1, 0.5, 0.9}, {1.0, 3.0, -1.0});
  EXPECT_DOUBLE_EQ(eval_f(t, Alpha(-1.0), 0.3), 2.0);
  EXPECT_DOUBLE_EQ(eval_f(t, Alpha(-1.0), 0.9), -1.0);
  EXPECT_THROW(eval_f(t, Alpha(-1.0), 0.05), std::domain_error);
  EXPECT_THROW(FunctionSpec::tabulated({0.5, 0.5}, {1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(FunctionSpec::tabulated({0.0, 0.5}, {1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(FunctionSpec::tabulated({0.2, 0.5}, {1.0}), std::invalid_argument);
  EXPECT_THROW(FunctionSpec::tabulated({0.2}, {1.0}), std::invalid_argument);
}

TEST(Noise, BoundedDeterministicAndSeedDependent) {
  const PerturbationPlan a{1e-3, 1, NoiseKind::uniform};
  const PerturbationPlan b{1e-3, 2, NoiseKind::uniform};
  int differ = 0;
  for (int k = 1; k < 2000; ++k) {
    const double x = k / 2000.0;
    ASSERT_LE(std::fabs(a.noise(x)), 1e-3);
    ASSERT_EQ(a.noise(x), a.noise(x));
    if (a.noise(x) != b.noise(x)) ++differ;
  }
  EXPECT_GT(differ, 1900);
  EXPECT_EQ(PerturbationPlan{}.noise(0.3), 0.0);
}

TEST(Noise, CombAlternatesBetweenTeeth) {
  const PerturbationPlan comb{1e-3, 0, NoiseKind::comb};
  for (int k = 0; k < 1023; ++k) {
    const double here = comb.noise((k + 0.5) / kCombTeeth);
    const double next = comb.noise((k + 1.5) / kCombTeeth);
    ASSERT_EQ(std::fabs(here), 1e-3);
    ASSERT_EQ(here, -next);
  }
  const PerturbationPlan flipped{1e-3, 1, NoiseKind::comb};
  EXPECT_EQ(comb.noise(0.3), -flipped.noise(0.3));
}

TEST(Noise, KindAndProvenanceNamesRoundTrip) {
  for (NoiseKind k : {NoiseKind::uniform, NoiseKind::comb}) EXPECT_EQ(noise_kind_from_string(to_string(k)), k);
  for (Provenance p : {Provenance::estimated_on_grid, Provenance::supplied, Provenance::derived_from_noise_bound}) {
    EXPECT_EQ(provenance_from_string(to_string(p)), p);
  }
  EXPECT_EQ(to_string(Provenance::estimated_on_grid), "estimated-on-grid");
  EXPECT_THROW(noise_kind_from_string("gaussian"), std::invalid_argument);
  EXPECT_THROW(provenance_from_string("guessed"), std::invalid_argument);
}

TEST(Perturb, ZeroBoundLeavesTheBaseUnchanged) {
  const FunctionSpec base = FunctionSpec::power(2.0, -1.0);
  const FunctionSpec same = perturb(base, {0.0, 3, NoiseKind::uniform});
  for (double x : {0.01, 0.3, 0.77}) EXPECT_EQ(eval_f(same, Alpha(-0.5), x), eval_f(base, Alpha(-0.5), x));
  EXPECT_THROW(perturb(base, {-1.0, 3, NoiseKind::uniform}), std::invalid_argument);
}

}  // namespace
