#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hustab/approximant.hpp"
#include "hustab/domain.hpp"
#include "hustab/equation.hpp"

namespace hustab {

/// H^alpha_n(p) = (sum p_i^alpha - 1) / (2^(1-alpha) - 1).
double entropy_degree_alpha(const ProbabilityVector& p, const Alpha& alpha);

/// J_n = c H^alpha_n + d (p1^alpha - 1), alpha < 0.
struct PowerFamily {
  double c = 0.0;
  double d = 0.0;
  friend bool operator==(const PowerFamily&, const PowerFamily&) = default;
};

/// J_n = c H^0_n + lambda ln p1, alpha = 0.
struct LogFamily {
  double c = 0.0;
  double lambda = 0.0;
  friend bool operator==(const LogFamily&, const LogFamily&) = default;
};

using FamilyParams = std::variant<PowerFamily, LogFamily>;

/// Throws std::invalid_argument when the variant does not match alpha.
double canonical_family_eval(const FamilyParams& params, const Alpha& alpha, const ProbabilityVector& p);

/// (a, b) of the n = 2 solution mapped to (c, d) = ((2^(1-a) - 1) a, b - a),
/// or (lambda, c) to LogFamily{c, lambda}.
FamilyParams family_params_from(const ApproximantParams& params, const Alpha& alpha);

struct FamilyEntry {
  int n = 0;
  std::vector<double> p;
  double value = 0.0;
  friend bool operator==(const FamilyEntry&, const FamilyEntry&) = default;
};

/// Tabulated family values at explicit probability vectors.
struct FamilyTable {
  double alpha = 0.0;
  std::vector<FamilyEntry> entries;
  friend bool operator==(const FamilyTable&, const FamilyTable&) = default;
};

/// A sequence I_2, ..., I_max_n of functions on the open simplices.
class MeasureFamily {
 public:
  using Evaluator = std::function<double(const ProbabilityVector&)>;

  /// Throws std::invalid_argument for max_n < 2 or an empty evaluator.
  MeasureFamily(int max_n, Evaluator evaluator, std::string description);

  /// n >= 3 lookups are exact on the stored vector. n = 2 lookups use the
  /// stored vector when present and otherwise interpolate linearly in p2.
  /// max_n is the largest tabulated n; every n in 2..max_n must be present.
  static MeasureFamily from_table(const FamilyTable& table);

  int max_n() const { return max_n_; }
  bool supports(int n) const { return n >= 2 && n <= max_n_; }
  const std::string& description() const { return description_; }

  /// Throws std::invalid_argument when p.size() is unsupported.
  double operator()(const ProbabilityVector& p) const;

 private:
  int max_n_;
  Evaluator evaluator_;
  std::string description_;
};

/// max over samples of |I_n(p) - I_(n-1)(p1+p2, p3, ..) - (p1+p2)^a I_2(p1/(p1+p2), p2/(p1+p2))|.
/// Throws std::invalid_argument for n < 3, unsupported n or n-1, or a sample
/// of the wrong length.
double recursivity_residual(const MeasureFamily& family, const Alpha& alpha, int n,
                            std::span<const ProbabilityVector> samples);

/// max over samples of |I_3(p1, p2, p3) - I_3(p1, p3, p2)|.
double semisymmetry_residual(const MeasureFamily& family, std::span<const ProbabilityVector> samples);

/// eps[0] = eps_1 (semisymmetry), eps[k-1] = eps_k (recursivity at n = k+1).
/// alpha < 0: sum_{k=2}^{n-1} eps_k + 15 (2 eps_2 + eps_1)(1 + sum_{k=2}^{n-1} (p_1 + .. + p_k)^alpha)
/// alpha = 0: sum_{k=2}^{n-1} eps_k + 63 (n-1)(2 eps_2 + eps_1)
/// Needs at least max(2, n-1) entries, all >= 0; extra entries are ignored.
double family_bound(const Alpha& alpha, int n, const ProbabilityVector& p, std::span<const double> eps);

/// Fits the n = 2 solution to f(x) = I_2(1-x, x) and maps it to family params.
FamilyParams fit_family_params(const MeasureFamily& family, const Alpha& alpha,
                               std::span<const double> log_u_grid);

/// f(x) = I_2(1-x, x) as a FunctionSpec.
FunctionSpec family_bridge(const MeasureFamily& family);

/// Seeded simplex samples (seed + n) followed by the structured set: the
/// uniform vector and the n margin corners.
std::vector<ProbabilityVector> family_samples(int n, int count, std::uint64_t seed, double margin);

struct SampleCheck {
  std::vector<double> p;
  double value = 0.0;       // I_n(p)
  double canonical = 0.0;   // J_n(p)
  double deviation = 0.0;
  double bound = 0.0;
  bool passed = false;
  friend bool operator==(const SampleCheck&, const SampleCheck&) = default;
};

struct PerNReport {
  int n = 0;
  /// Residual that enters the bound at this n: eps_(n-1) for n >= 3; unset for n = 2.
  std::optional<double> recursivity_residual;
  double max_deviation = 0.0;
  bool passed = false;
  std::vector<SampleCheck> checks;
  friend bool operator==(const PerNReport&, const PerNReport&) = default;
};

struct FamilyCertifyOptions {
  double margin = 0.01;
  /// Upper bounds eps_1..eps_(N-1) to use instead of the sampled residuals.
  std::optional<std::vector<double>> epsilon_bounds;
  Provenance bounds_provenance = Provenance::derived_from_noise_bound;
  double base_margin = 0.01;
  int base_resolution = 100;
  std::vector<double> log_u_grid = default_log_u_grid();
};

struct FamilyCertificate {
  double alpha = 0.0;
  int max_n = 0;
  int samples_per_n = 0;
  std::uint64_t seed = 0;
  double margin = 0.0;
  double semisymmetry_residual = 0.0;             // sampled eps_1
  std::vector<double> recursivity_residuals;      // sampled eps_2..eps_(N-1)
  std::vector<double> epsilons;                   // eps_1..eps_(N-1) used in the bounds
  Provenance epsilon_provenance = Provenance::estimated_on_grid;
  FamilyParams params;
  std::vector<PerNReport> per_n;
  bool satisfied = false;
  StabilityCertificate base;
  std::vector<std::string> notes;

  CertificateStatus status() const;
  friend bool operator==(const FamilyCertificate&, const FamilyCertificate&) = default;
};

/// Throws std::invalid_argument for N < 3, N beyond the family, or
/// epsilon_bounds shorter than N-1.
FamilyCertificate certify_family(const MeasureFamily& family, const Alpha& alpha, int N,
                                 int samples_per_n, std::uint64_t seed,
                                 const FamilyCertifyOptions& options = {});

}  // namespace hustab
