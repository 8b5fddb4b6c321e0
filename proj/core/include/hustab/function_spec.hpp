#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hustab {

enum class NoiseKind { uniform, comb };

/// Bounded deterministic perturbation. noise(x) is a pure function of
/// (seed, bits of x) with |noise(x)| <= bound, so it is defined at every x,
/// including the composed arguments y / (1 - x) of the defect.
struct PerturbationPlan {
  double bound = 0.0;
  std::uint64_t seed = 0;
  NoiseKind kind = NoiseKind::uniform;

  double noise(double x) const;
};

/// Comb teeth per unit interval: the comb sign flips every 1/1024 in x.
inline constexpr double kCombTeeth = 1024.0;

/// f(x) = a x^alpha + b (1-x)^alpha - b.
struct PowerForm {
  double a = 0.0;
  double b = 0.0;
};

/// f(x) = lambda ln(1-x) + c.
struct LogForm {
  double lambda = 0.0;
  double c = 0.0;
};

/// Samples on ]0,1[ with linear interpolation; f0/f1 hold closed-domain
/// endpoint values when present.
struct Tabulated {
  std::vector<double> xs;
  std::vector<double> values;
  std::optional<double> f0;
  std::optional<double> f1;
};

class FunctionSpec;

struct Perturbed {
  std::shared_ptr<const FunctionSpec> base;
  PerturbationPlan plan;
};

/// Arbitrary function of x, e.g. x -> I2(1-x, x) for a measure family.
struct Callable {
  std::function<double(double)> fn;
  std::string label;
};

/// A candidate f on ]0,1[.
class FunctionSpec {
 public:
  using Form = std::variant<PowerForm, LogForm, std::shared_ptr<const Tabulated>, Perturbed, Callable>;

  static FunctionSpec power(double a, double b);
  static FunctionSpec log_form(double lambda, double c);
  /// Throws std::invalid_argument unless xs is strictly increasing inside ]0,1[,
  /// has at least two entries, and matches values in length.
  static FunctionSpec tabulated(std::vector<double> xs, std::vector<double> values,
                                std::optional<double> f0 = std::nullopt,
                                std::optional<double> f1 = std::nullopt);
  /// Throws std::invalid_argument for a negative or non-finite bound.
  static FunctionSpec perturbed(FunctionSpec base, PerturbationPlan plan);
  static FunctionSpec callable(std::function<double(double)> fn, std::string label);

  const Form& form() const { return form_; }
  std::string describe() const;

 private:
  explicit FunctionSpec(Form form) : form_(std::move(form)) {}
  Form form_;
};

std::string to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(const std::string& name);

}  // namespace hustab
