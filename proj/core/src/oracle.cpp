// Brute-force defect in __float128, written independently of equation.cpp so
// that the two can cross-check each other.
#include <quadmath.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include "hustab/generators.hpp"

namespace hustab {
namespace {

using quad = __float128;

quad f_quad(const FunctionSpec& spec, double alpha, quad x);

quad interpolate(const Tabulated& t, quad x) {
  const std::size_t n = t.xs.size();
  if (x < t.xs.front() || x > t.xs.back()) {
    std::ostringstream os;
    os.precision(17);
    os << "x = " << static_cast<double>(x) << " outside tabulated range [" << t.xs.front() << ", "
       << t.xs.back() << "]";
    throw std::domain_error(os.str());
  }
  std::size_t lo = 0;
  std::size_t hi = n - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (x < t.xs[mid]) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const quad x0 = t.xs[lo];
  const quad x1 = t.xs[hi];
  const quad v0 = t.values[lo];
  const quad v1 = t.values[hi];
  return v0 + (x - x0) / (x1 - x0) * (v1 - v0);
}

quad f_quad(const FunctionSpec& spec, double alpha, quad x) {
  return std::visit(
      [&](const auto& form) -> quad {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, PowerForm>) {
          const quad a = form.a;
          const quad b = form.b;
          return a * powq(x, alpha) + b * powq(1 - x, alpha) - b;
        } else if constexpr (std::is_same_v<T, LogForm>) {
          return static_cast<quad>(form.lambda) * logq(1 - x) + form.c;
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Tabulated>>) {
          return interpolate(*form, x);
        } else if constexpr (std::is_same_v<T, Perturbed>) {
          return f_quad(*form.base, alpha, x) + form.plan.noise(static_cast<double>(x));
        } else {
          return form.fn(static_cast<double>(x));
        }
      },
      spec.form());
}

quad defect_quad(const FunctionSpec& spec, double alpha, quad x, quad y) {
  const quad lhs = f_quad(spec, alpha, x) + powq(1 - x, alpha) * f_quad(spec, alpha, y / (1 - x));
  const quad rhs = f_quad(spec, alpha, y) + powq(1 - y, alpha) * f_quad(spec, alpha, x / (1 - y));
  return lhs - rhs;
}

}  // namespace

double oracle_defect(const FunctionSpec& spec, const Alpha& alpha, double x, double y) {
  const quad qx = x;
  const quad qy = y;
  if (!(qx > 0 && qy > 0 && qx + qy < 1)) throw std::domain_error("oracle point outside the open triangle");
  return static_cast<double>(defect_quad(spec, alpha.value(), qx, qy));
}

DefectField oracle_defect_scan(const FunctionSpec& spec, const Alpha& alpha, const DomainGrid& grid) {
  if (grid.size() == 0) throw std::invalid_argument("grid is empty");
  DefectField field{grid.margin(), grid.resolution(), {}};
  field.values.reserve(grid.size());
  for (const GridPoint& p : grid.points()) field.values.push_back(oracle_defect(spec, alpha, p.x, p.y));
  return field;
}

}  // namespace hustab
