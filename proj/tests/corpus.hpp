#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hustab/function_spec.hpp"

namespace hustab::testing {

struct PowerCase {
  double a;
  double b;
  double alpha;
};

struct LogCase {
  double lambda;
  double c;
};

inline const std::vector<double>& corpus_alphas() {
  static const std::vector<double> alphas{-5.0, -2.0, -1.0, -0.5, -0.1};
  return alphas;
}

/// 20 seeded (a, b) in [-10, 10]^2, each at every corpus alpha.
inline std::vector<PowerCase> power_corpus() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> coef(-10.0, 10.0);
  std::vector<PowerCase> out;
  for (int k = 0; k < 20; ++k) {
    const double a = coef(rng);
    const double b = coef(rng);
    for (double alpha : corpus_alphas()) out.push_back({a, b, alpha});
  }
  return out;
}

inline std::vector<LogCase> log_corpus() {
  std::mt19937_64 rng(977);
  std::uniform_real_distribution<double> coef(-10.0, 10.0);
  std::vector<LogCase> out;
  for (int k = 0; k < 10; ++k) {
    const double lambda = coef(rng);
    out.push_back({lambda, coef(rng)});
  }
  return out;
}

struct NoisyCase {
  FunctionSpec base;
  double alpha;
  double delta;
  NoiseKind kind;
  std::uint64_t seed;
};

/// 10 (alpha, base) pairs x 3 noise bounds x 2 noise kinds = 60 configurations.
inline std::vector<NoisyCase> soundness_corpus() {
  struct Base {
    double alpha;
    FunctionSpec spec;
  };
  const std::vector<Base> bases{
      {-2.0, FunctionSpec::power(1.0, 0.0)},   {-2.0, FunctionSpec::power(-3.0, 2.5)},
      {-2.0, FunctionSpec::power(0.5, 7.0)},   {-1.0, FunctionSpec::power(1.0, 0.0)},
      {-1.0, FunctionSpec::power(2.0, -1.0)},  {-1.0, FunctionSpec::power(-6.0, -4.0)},
      {-0.5, FunctionSpec::power(2.0, -1.0)},  {-0.5, FunctionSpec::power(9.0, 3.0)},
      {0.0, FunctionSpec::log_form(1.0, 0.0)}, {0.0, FunctionSpec::log_form(-2.5, 4.0)},
  };
  std::vector<NoisyCase> out;
  std::uint64_t seed = 1;
  for (const Base& b : bases) {
    for (double delta : {1e-4, 1e-3, 1e-2}) {
      for (NoiseKind kind : {NoiseKind::uniform, NoiseKind::comb}) {
        out.push_back({b.spec, b.alpha, delta, kind, seed++});
      }
    }
  }
  return out;
}

}  // namespace hustab::testing
