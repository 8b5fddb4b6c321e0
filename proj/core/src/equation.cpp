#include "hustab/equation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "hash.hpp"

namespace hustab {
namespace {

std::string fmt_point(double x, double y) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << x << ", " << y << ")";
  return os.str();
}

Wide eval_tabulated(const Tabulated& t, const Wide& x) {
  if (x < Wide(t.xs.front()) || x > Wide(t.xs.back())) {
    std::ostringstream os;
    os.precision(17);
    os << "x = " << x.to_double() << " outside tabulated range [" << t.xs.front() << ", "
       << t.xs.back() << "]";
    throw std::domain_error(os.str());
  }
  auto it = std::upper_bound(t.xs.begin(), t.xs.end(), x.to_double());
  auto k = static_cast<std::size_t>(std::distance(t.xs.begin(), it));
  k = std::clamp<std::size_t>(k == 0 ? 0 : k - 1, 0, t.xs.size() - 2);
  const Wide x0 = t.xs[k];
  const Wide width = Wide(t.xs[k + 1]) - x0;
  const Wide rise = Wide(t.values[k + 1]) - t.values[k];
  return Wide(t.values[k]) + ((x - x0) / width) * rise;
}

// lhs - rhs with lhs = fx + wx * f(y/(1-x)), rhs = fy + wy * f(x/(1-y)).
// Swapping the roles of x and y yields the exact negation.
Wide combine(const Wide& fx, const Wide& wx, const Wide& f_comp_x, const Wide& fy, const Wide& wy,
             const Wide& f_comp_y) {
  const Wide lhs = fx + wx * f_comp_x;
  const Wide rhs = fy + wy * f_comp_y;
  return lhs - rhs;
}

void require_open_triangle(double x, double y) {
  if (!(x > 0.0 && y > 0.0 && x + y < 1.0)) {
    throw std::domain_error("point " + fmt_point(x, y) + " is outside the open triangle");
  }
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::domain_error(std::string(name) + " must be a positive finite number");
  }
}

}  // namespace

double PerturbationPlan::noise(double x) const {
  if (bound == 0.0) return 0.0;
  if (kind == NoiseKind::comb) {
    const auto tooth = static_cast<std::int64_t>(std::floor(x * kCombTeeth));
    const bool odd = ((tooth + static_cast<std::int64_t>(seed & 1U)) & 1) != 0;
    return odd ? -bound : bound;
  }
  const std::uint64_t h =
      detail::splitmix64(seed ^ detail::splitmix64(std::bit_cast<std::uint64_t>(x)));
  return bound * (2.0 * detail::unit_interval(h) - 1.0);
}

std::string to_string(NoiseKind kind) { return kind == NoiseKind::comb ? "comb" : "uniform"; }

NoiseKind noise_kind_from_string(const std::string& name) {
  if (name == "uniform") return NoiseKind::uniform;
  if (name == "comb") return NoiseKind::comb;
  throw std::invalid_argument("unknown noise kind '" + name + "' (expected uniform|comb)");
}

FunctionSpec FunctionSpec::power(double a, double b) { return FunctionSpec(PowerForm{a, b}); }

FunctionSpec FunctionSpec::log_form(double lambda, double c) {
  return FunctionSpec(LogForm{lambda, c});
}

FunctionSpec FunctionSpec::tabulated(std::vector<double> xs, std::vector<double> values,
                                     std::optional<double> f0, std::optional<double> f1) {
  if (xs.size() != values.size()) {
    throw std::invalid_argument("tabulated xs and values differ in length");
  }
  if (xs.size() < 2) throw std::invalid_argument("tabulated function needs at least two samples");
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (!(xs[k] > 0.0 && xs[k] < 1.0)) {
      throw std::invalid_argument("tabulated x must lie in ]0,1[ (sample " + std::to_string(k) + ")");
    }
    if (k > 0 && !(xs[k] > xs[k - 1])) {
      throw std::invalid_argument("tabulated xs must be strictly increasing (sample " +
                                  std::to_string(k) + ")");
    }
    if (!std::isfinite(values[k])) {
      throw std::invalid_argument("tabulated value is not finite (sample " + std::to_string(k) + ")");
    }
  }
  auto t = std::make_shared<Tabulated>();
  t->xs = std::move(xs);
  t->values = std::move(values);
  t->f0 = f0;
  t->f1 = f1;
  return FunctionSpec(std::shared_ptr<const Tabulated>(std::move(t)));
}

FunctionSpec FunctionSpec::perturbed(FunctionSpec base, PerturbationPlan plan) {
  if (!(plan.bound >= 0.0) || !std::isfinite(plan.bound)) {
    throw std::invalid_argument("perturbation bound must be finite and >= 0");
  }
  return FunctionSpec(Perturbed{std::make_shared<const FunctionSpec>(std::move(base)), plan});
}

FunctionSpec FunctionSpec::callable(std::function<double(double)> fn, std::string label) {
  return FunctionSpec(Callable{std::move(fn), std::move(label)});
}

std::string FunctionSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PowerForm>) {
          os << "power(a=" << f.a << ", b=" << f.b << ")";
        } else if constexpr (std::is_same_v<T, LogForm>) {
          os << "log(lambda=" << f.lambda << ", c=" << f.c << ")";
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Tabulated>>) {
          os << "tabulated(" << f->xs.size() << " samples)";
        } else if constexpr (std::is_same_v<T, Perturbed>) {
          os << "perturbed(" << f.base->describe() << ", delta=" << f.plan.bound
             << ", seed=" << f.plan.seed << ", kind=" << to_string(f.plan.kind) << ")";
        } else {
          os << "callable(" << f.label << ")";
        }
      },
      form_);
  return os.str();
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::estimated_on_grid:
      return "estimated-on-grid";
    case Provenance::supplied:
      return "supplied";
    case Provenance::derived_from_noise_bound:
      return "derived-from-noise-bound";
  }
  return "supplied";
}

Provenance provenance_from_string(const std::string& name) {
  if (name == "estimated-on-grid") return Provenance::estimated_on_grid;
  if (name == "supplied") return Provenance::supplied;
  if (name == "derived-from-noise-bound") return Provenance::derived_from_noise_bound;
  throw std::invalid_argument("unknown epsilon provenance '" + name + "'");
}

ResidualEstimate ResidualEstimate::supplied(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument("epsilon must be finite and >= 0");
  }
  return {value, Provenance::supplied, std::nullopt, std::nullopt};
}

namespace detail {

Wide eval_wide(const FunctionSpec& spec, double alpha, const Wide& x) {
  return eval_wide(spec, alpha, x, 1.0 - x);
}

Wide eval_wide(const FunctionSpec& spec, double alpha, const Wide& x, const Wide& one_minus_x) {
  return std::visit(
      [&](const auto& f) -> Wide {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PowerForm>) {
          return (f.a * pow(x, alpha) + f.b * pow(one_minus_x, alpha)) - f.b;
        } else if constexpr (std::is_same_v<T, LogForm>) {
          return f.lambda * log(one_minus_x) + f.c;
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Tabulated>>) {
          return eval_tabulated(*f, x);
        } else if constexpr (std::is_same_v<T, Perturbed>) {
          return eval_wide(*f.base, alpha, x, one_minus_x) + f.plan.noise(x.to_double());
        } else {
          return Wide(f.fn(x.to_double()));
        }
      },
      spec.form());
}

Wide defect_wide(const FunctionSpec& spec, double alpha, const Wide& x, const Wide& y) {
  const Wide ox = 1.0 - x;
  const Wide oy = 1.0 - y;
  // 1 - y/(1-x) as (1-x-y)/(1-x): subtracting the rounded quotient from 1
  // cancels badly when x + y is close to 1.
  const Wide rest = 1.0 - (x + y);
  return combine(eval_wide(spec, alpha, x, ox), pow(ox, alpha), eval_wide(spec, alpha, y / ox, rest / ox),
                 eval_wide(spec, alpha, y, oy), pow(oy, alpha), eval_wide(spec, alpha, x / oy, rest / oy));
}

Wide transform_F_wide(const FunctionSpec& spec, double alpha, const Wide& u, const Wide& v) {
  const Wide s = u + v;
  return pow(s, alpha) * eval_wide(spec, alpha, v / s, u / s);
}

Wide transform_g_wide(const FunctionSpec& spec, double alpha, const Wide& u) {
  const Wide s = 1.0 + u;
  return pow(s, alpha) * (eval_wide(spec, alpha, 1.0 / s, u / s) - eval_wide(spec, alpha, u / s, 1.0 / s));
}

}  // namespace detail

double eval_f(const FunctionSpec& spec, const Alpha& alpha, double x) {
  if (!(x > 0.0 && x < 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "x must lie in ]0,1[, got " << x;
    throw std::domain_error(os.str());
  }
  return detail::eval_wide(spec, alpha.value(), Wide(x)).to_double();
}

double defect(const FunctionSpec& spec, const Alpha& alpha, double x, double y) {
  require_open_triangle(x, y);
  return detail::defect_wide(spec, alpha.value(), Wide(x), Wide(y)).to_double();
}

ResidualEstimate residual_sup(const FunctionSpec& spec, const Alpha& alpha, const DomainGrid& grid) {
  if (grid.size() == 0) throw std::invalid_argument("grid is empty");
  const double a = alpha.value();
  const auto axis = grid.axis();

  auto eval_at = [&](const Wide& z, const Wide& one_minus_z, double px, double py) -> Wide {
    try {
      return detail::eval_wide(spec, a, z, one_minus_z);
    } catch (const std::exception& e) {
      throw std::domain_error("evaluation failed at grid point " + fmt_point(px, py) + ": " +
                              e.what());
    }
  };

  // f and the weights at the axis values are shared by many points.
  std::vector<Wide> one_minus(axis.size());
  std::vector<Wide> f_axis(axis.size());
  std::vector<Wide> weight(axis.size());
  for (std::size_t k = 0; k < axis.size(); ++k) {
    one_minus[k] = 1.0 - Wide(axis[k]);
    f_axis[k] = eval_at(Wide(axis[k]), one_minus[k], axis[k], axis[k]);
    weight[k] = pow(one_minus[k], a);
  }

  // The defect is exactly antisymmetric and the grid is closed under
  // (x, y) -> (y, x), so |defect| over i < j covers every point; the
  // diagonal is exactly zero.
  double best = 0.0;
  ArgPoint where{grid.points().front().x, grid.points().front().y};
  for (const GridPoint& p : grid.points()) {
    if (p.i >= p.j) continue;
    const Wide x = p.x;
    const Wide y = p.y;
    const Wide rest = 1.0 - (x + y);
    const Wide d = combine(f_axis[p.i], weight[p.i],
                           eval_at(y / one_minus[p.i], rest / one_minus[p.i], p.x, p.y), f_axis[p.j],
                           weight[p.j], eval_at(x / one_minus[p.j], rest / one_minus[p.j], p.x, p.y));
    const double v = std::fabs(d.to_double());
    if (v > best) {
      best = v;
      where = {p.x, p.y};
    }
  }
  return {best, Provenance::estimated_on_grid, GridRef{grid.margin(), grid.resolution()}, where};
}

double transform_F(const FunctionSpec& spec, const Alpha& alpha, double u, double v) {
  require_positive(u, "u");
  require_positive(v, "v");
  return detail::transform_F_wide(spec, alpha.value(), u, v).to_double();
}

double transform_g(const FunctionSpec& spec, const Alpha& alpha, double u) {
  require_positive(u, "u");
  return detail::transform_g_wide(spec, alpha.value(), u).to_double();
}

double transform_G(const FunctionSpec& spec, const Alpha& alpha, double u, double v) {
  require_positive(u, "u");
  require_positive(v, "v");
  const double a = alpha.value();
  return (detail::transform_F_wide(spec, a, u, v) + detail::transform_g_wide(spec, a, v)).to_double();
}

double cocycle_defect(const FunctionSpec& spec, const Alpha& alpha, double u, double v, double w) {
  require_positive(u, "u");
  require_positive(v, "v");
  require_positive(w, "w");
  const double a = alpha.value();
  const Wide U = u, V = v, W = w;
  const Wide lhs = detail::transform_F_wide(spec, a, U + V, W) + detail::transform_F_wide(spec, a, U, V);
  const Wide rhs = detail::transform_F_wide(spec, a, U + W, V) + detail::transform_F_wide(spec, a, U, W);
  return (lhs - rhs).to_double();
}

}  // namespace hustab
