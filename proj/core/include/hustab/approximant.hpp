#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hustab/domain.hpp"
#include "hustab/equation.hpp"
#include "hustab/function_spec.hpp"

namespace hustab {

/// Exact solution a x^alpha + b (1-x)^alpha - b; c = b - a is the coefficient
/// of g(u) = c (u^alpha - 1).
struct PowerParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  friend bool operator==(const PowerParams&, const PowerParams&) = default;
};

/// Exact solution lambda ln(1-x) + c (alpha = 0, measurable logarithms only).
struct LogParams {
  double lambda = 0.0;
  double c = 0.0;
  friend bool operator==(const LogParams&, const LogParams&) = default;
};

using ApproximantParams = std::variant<PowerParams, LogParams>;

inline constexpr double kStabilityConstantNegative = 15.0;
inline constexpr double kStabilityConstantZero = 63.0;
inline constexpr double kLogRigidityConstant = 127.0;

/// K(alpha) = (8 + 6*2^a + 2^-a) / (2^(1-a) - 1) for alpha < 0 (sup 15 as
/// alpha -> 0-), and 63 for alpha = 0.
double bound_constant(const Alpha& alpha);

/// The rounded constant: 15 for alpha < 0, 63 for alpha = 0.
double theorem_constant(const Alpha& alpha);

/// c = g(2) / (2^a - 1), f0(1/2) = f(1/2) - c (2^-a - 1),
/// a = f0(1/2) / (2^(1-a) - 1), b = a + c.
/// Throws std::invalid_argument for alpha = 0.
PowerParams fit_power_params(const FunctionSpec& spec, const Alpha& alpha);

/// u = 2^(k/4) for k = -12..12, k != 0.
std::vector<double> default_log_u_grid();

/// lambda minimizes max_u |g(u) - lambda ln u| over the grid (u = 1 entries are
/// ignored); c = f(1/2) - lambda ln(1/2). Throws std::invalid_argument when no
/// usable u remains or some u <= 0.
LogParams fit_log_params(const FunctionSpec& spec, std::span<const double> u_grid);

/// max_u |g(u) - lambda ln u| for the fitted lambda.
double log_fit_residual(const FunctionSpec& spec, const LogParams& params,
                        std::span<const double> u_grid);

/// Throws std::domain_error for x outside ]0,1[ and std::invalid_argument when
/// the params variant does not match alpha.
double eval_approximant(const ApproximantParams& params, const Alpha& alpha, double x);

/// delta * max over the grid of (2 + (1-x)^a + (1-y)^a): an upper bound on the
/// residual of (exact solution + noise) with |noise| <= delta.
ResidualEstimate noise_residual_bound(double delta, const Alpha& alpha, const DomainGrid& grid);

/// h1: 0 at x = 0, a - b at x = 1, the power form inside.
struct H1Extension {
  double a = 0.0;
  double b = 0.0;
  friend bool operator==(const H1Extension&, const H1Extension&) = default;
};

/// h2: a_end0 at x = 0, b_end1 at x = 1, c_mid inside.
struct H2Extension {
  double a_end0 = 0.0;
  double b_end1 = 0.0;
  double c_mid = 0.0;
  friend bool operator==(const H2Extension&, const H2Extension&) = default;
};

using BoundaryExtension = std::variant<H1Extension, H2Extension>;

/// h(x) for x in [0,1].
double eval_extension(const BoundaryExtension& ext, const Alpha& alpha, double x);

/// Defect of h on the closed triangle { x, y in [0,1[, x + y <= 1 }.
/// Throws std::domain_error outside it.
double closed_domain_defect(const BoundaryExtension& ext, const Alpha& alpha, double x, double y);

struct BoundaryCheck {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool passed = false;
  friend bool operator==(const BoundaryCheck&, const BoundaryCheck&) = default;
};

struct BoundaryReport {
  BoundaryExtension extension;
  double f0 = 0.0;
  double f1 = 0.0;
  double h0 = 0.0;
  double h1 = 0.0;
  std::vector<BoundaryCheck> checks;

  bool passed() const;
  friend bool operator==(const BoundaryReport&, const BoundaryReport&) = default;
};

/// alpha < 0: h1 with checks |f(0)| <= 15 eps and |f(1) - (a-b)| <= 15 eps.
/// alpha = 0: h2 = (f(0), f(1), c) with the rigidity check
/// |lambda| * max|ln u| <= 127 eps.
/// Throws std::invalid_argument when f(0) or f(1) is missing.
BoundaryReport extend_boundary(const ApproximantParams& params, const Alpha& alpha,
                               std::optional<double> f0_value, std::optional<double> f1_value,
                               double epsilon, double max_abs_log_u);

enum class CertificateStatus { satisfied, unsatisfied, inconclusive };

std::string to_string(CertificateStatus s);
CertificateStatus status_from_string(const std::string& name);

struct StabilityCertificate {
  double alpha = 0.0;
  ResidualEstimate epsilon;
  ApproximantParams params;
  double sup_deviation = 0.0;
  double sup_deviation_x = 0.0;
  double bound_constant = 0.0;     // K(alpha), or 63
  double theorem_constant = 0.0;   // 15, or 63
  double bound_value = 0.0;        // bound_constant * epsilon
  bool satisfied = false;          // sup_deviation <= bound_value
  std::optional<BoundaryReport> boundary;
  std::vector<std::string> notes;

  /// An unmet bound is only a hard failure when epsilon is a guaranteed upper
  /// bound; a grid estimate may undershoot the true supremum.
  CertificateStatus status() const;
  friend bool operator==(const StabilityCertificate&, const StabilityCertificate&) = default;
};

struct ClosedDomainData {
  double f0 = 0.0;
  double f1 = 0.0;
};

struct CertifyOptions {
  std::optional<ClosedDomainData> closed_domain;
  std::vector<double> log_u_grid = default_log_u_grid();
};

/// Fits the alpha-appropriate exact solution and measures max |f - approximant|
/// over the grid axis values and their midpoints.
StabilityCertificate certify(const FunctionSpec& spec, const Alpha& alpha, const DomainGrid& grid,
                             const ResidualEstimate& epsilon, const CertifyOptions& options = {});

/// Points where certify measures the deviation: axis values and midpoints.
std::vector<double> deviation_sample_points(const DomainGrid& grid);

}  // namespace hustab
