#pragma once

#include <optional>
#include <string>

#include "hustab/domain.hpp"
#include "hustab/function_spec.hpp"
#include "hustab/wide.hpp"

namespace hustab {

enum class Provenance { estimated_on_grid, supplied, derived_from_noise_bound };

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& name);

struct GridRef {
  double margin = 0.0;
  int resolution = 0;
  friend bool operator==(const GridRef&, const GridRef&) = default;
};

struct ArgPoint {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const ArgPoint&, const ArgPoint&) = default;
};

/// The epsilon of the stability inequality together with where it came from.
struct ResidualEstimate {
  double value = 0.0;
  Provenance provenance = Provenance::supplied;
  std::optional<GridRef> grid;
  std::optional<ArgPoint> argmax;

  static ResidualEstimate supplied(double value);
  friend bool operator==(const ResidualEstimate&, const ResidualEstimate&) = default;
};

/// f(x) for x in ]0,1[. Throws std::domain_error outside ]0,1[ or outside a
/// tabulated range.
double eval_f(const FunctionSpec& spec, const Alpha& alpha, double x);

/// f(x) + (1-x)^a f(y/(1-x)) - f(y) - (1-y)^a f(x/(1-y)) on the open triangle.
/// Exactly antisymmetric in (x, y); exactly 0 on the diagonal.
/// Throws std::domain_error unless x > 0, y > 0, x + y < 1.
double defect(const FunctionSpec& spec, const Alpha& alpha, double x, double y);

/// Maximum of |defect| over the grid. Evaluation failures are rethrown as
/// std::domain_error naming the offending point.
ResidualEstimate residual_sup(const FunctionSpec& spec, const Alpha& alpha, const DomainGrid& grid);

/// F(u, v) = (u+v)^a f(v/(u+v)), homogeneous of degree alpha.
double transform_F(const FunctionSpec& spec, const Alpha& alpha, double u, double v);
/// g(u) = F(u, 1) - F(1, u).
double transform_g(const FunctionSpec& spec, const Alpha& alpha, double u);
/// G(u, v) = F(u, v) + g(v).
double transform_G(const FunctionSpec& spec, const Alpha& alpha, double u, double v);
/// F(u+v, w) + F(u, v) - F(u+w, v) - F(u, w); zero for exact solutions.
double cocycle_defect(const FunctionSpec& spec, const Alpha& alpha, double u, double v, double w);

namespace detail {

/// Extended-precision evaluation used by every operation above. Only tabulated
/// range violations are checked here.
Wide eval_wide(const FunctionSpec& spec, double alpha, const Wide& x);
/// Same, with 1 - x supplied by the caller when it can be formed without
/// cancellation.
Wide eval_wide(const FunctionSpec& spec, double alpha, const Wide& x, const Wide& one_minus_x);
Wide defect_wide(const FunctionSpec& spec, double alpha, const Wide& x, const Wide& y);
Wide transform_F_wide(const FunctionSpec& spec, double alpha, const Wide& u, const Wide& v);
Wide transform_g_wide(const FunctionSpec& spec, double alpha, const Wide& u);

}  // namespace detail
}  // namespace hustab
