#include "hustab/generators.hpp"

#include <bit>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "hash.hpp"

namespace hustab {

FunctionSpec make_exact_power(double a, double b, const Alpha& alpha) {
  if (!alpha.is_negative()) {
    throw std::invalid_argument("power-form solutions need alpha < 0; use the log form for alpha = 0");
  }
  return FunctionSpec::power(a, b);
}

FunctionSpec make_exact_log(double lambda, double c) { return FunctionSpec::log_form(lambda, c); }

FunctionSpec perturb(const FunctionSpec& spec, const PerturbationPlan& plan) {
  return FunctionSpec::perturbed(spec, plan);
}

MeasureFamily make_canonical_family(const FamilyParams& params, const Alpha& alpha, int max_n) {
  // Rejects a mismatched variant up front rather than on first evaluation.
  if (std::holds_alternative<PowerFamily>(params) != alpha.is_negative()) {
    throw std::invalid_argument("family params do not match alpha");
  }
  std::string label;
  if (const auto* pf = std::get_if<PowerFamily>(&params)) {
    label = "canonical power family c=" + std::to_string(pf->c) + " d=" + std::to_string(pf->d);
  } else {
    const auto& lf = std::get<LogFamily>(params);
    label = "canonical log family c=" + std::to_string(lf.c) + " lambda=" + std::to_string(lf.lambda);
  }
  return MeasureFamily(
      max_n, [params, alpha](const ProbabilityVector& p) { return canonical_family_eval(params, alpha, p); },
      label);
}

MeasureFamily perturb_family(const MeasureFamily& family, std::span<const double> deltas, std::uint64_t seed) {
  const auto needed = static_cast<std::size_t>(family.max_n() - 1);
  if (deltas.size() < needed) {
    throw std::invalid_argument("perturb_family needs " + std::to_string(needed) + " deltas, got " +
                                std::to_string(deltas.size()));
  }
  for (double d : deltas) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("deltas must be finite and >= 0");
  }
  std::vector<double> bounds(deltas.begin(), deltas.begin() + static_cast<std::ptrdiff_t>(needed));
  auto eval = [family, bounds, seed](const ProbabilityVector& p) {
    const double delta = bounds[p.size() - 2];
    const double base = family(p);
    if (delta == 0.0) return base;
    std::uint64_t h = detail::splitmix64(seed ^ static_cast<std::uint64_t>(p.size()));
    for (double pi : p.values()) h = detail::splitmix64(h ^ std::bit_cast<std::uint64_t>(pi));
    return base + delta * (2.0 * detail::unit_interval(h) - 1.0);
  };
  return MeasureFamily(family.max_n(), eval, family.description() + " + bounded noise");
}

std::vector<double> perturbed_family_epsilons(const Alpha& alpha, std::span<const double> deltas,
                                              int max_n, double margin) {
  if (max_n < 3) throw std::invalid_argument("epsilon bounds need max_n >= 3");
  if (deltas.size() < static_cast<std::size_t>(max_n - 1)) {
    throw std::invalid_argument("epsilon bounds need deltas for n = 2.." + std::to_string(max_n));
  }
  if (!(margin > 0.0)) throw std::invalid_argument("margin must be > 0");
  auto delta = [&](int n) { return deltas[static_cast<std::size_t>(n - 2)]; };
  // (p1 + p2)^alpha <= (2 margin)^alpha when every component is >= margin.
  const double weight = alpha.is_zero() ? 1.0 : std::pow(2.0 * margin, alpha.value());
  std::vector<double> eps{2.0 * delta(3)};
  for (int n = 3; n <= max_n; ++n) eps.push_back(delta(n) + delta(n - 1) + weight * delta(2));
  return eps;
}

}  // namespace hustab
