#include "hustab/approximant.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hustab/wide.hpp"

namespace hustab {
namespace {

bool is_tabulated(const FunctionSpec& spec) {
  return std::visit(
      [](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, std::shared_ptr<const Tabulated>>) {
          return true;
        } else if constexpr (std::is_same_v<T, Perturbed>) {
          return is_tabulated(*f.base);
        } else {
          return false;
        }
      },
      spec.form());
}

void require_matching(const ApproximantParams& params, const Alpha& alpha) {
  const bool power = std::holds_alternative<PowerParams>(params);
  if (power != alpha.is_negative()) {
    throw std::invalid_argument(power ? "power-form params require alpha < 0"
                                      : "logarithmic params require alpha = 0");
  }
}

Wide approximant_wide(const ApproximantParams& params, double alpha, const Wide& x) {
  if (const auto* p = std::get_if<PowerParams>(&params)) {
    return (p->a * pow(x, alpha) + p->b * pow(1.0 - x, alpha)) - p->b;
  }
  const auto& l = std::get<LogParams>(params);
  return l.lambda * log(1.0 - x) + l.c;
}

Wide extension_wide(const BoundaryExtension& ext, double alpha, const Wide& x, const Wide& one_minus_x) {
  if (const auto* h = std::get_if<H1Extension>(&ext)) {
    if (x == Wide(0.0)) return 0.0;
    if (x == Wide(1.0)) return Wide(h->a) - h->b;
    return (h->a * pow(x, alpha) + h->b * pow(one_minus_x, alpha)) - h->b;
  }
  const auto& h = std::get<H2Extension>(ext);
  if (x == Wide(0.0)) return h.a_end0;
  if (x == Wide(1.0)) return h.b_end1;
  return h.c_mid;
}

}  // namespace

double bound_constant(const Alpha& alpha) {
  if (alpha.is_zero()) return kStabilityConstantZero;
  const double a = alpha.value();
  return (8.0 + 6.0 * std::exp2(a) + std::exp2(-a)) / (std::exp2(1.0 - a) - 1.0);
}

double theorem_constant(const Alpha& alpha) {
  return alpha.is_zero() ? kStabilityConstantZero : kStabilityConstantNegative;
}

PowerParams fit_power_params(const FunctionSpec& spec, const Alpha& alpha) {
  if (!alpha.is_negative()) {
    throw std::invalid_argument("fit_power_params needs alpha < 0; use fit_log_params for alpha = 0");
  }
  const double a = alpha.value();
  const Wide two = 2.0;
  const Wide c = detail::transform_g_wide(spec, a, two) / (pow(two, a) - 1.0);
  const Wide f0_half = detail::eval_wide(spec, a, Wide(0.5)) - c * (pow(two, -a) - 1.0);
  const Wide coef_a = f0_half / (2.0 * pow(two, -a) - 1.0);  // 1 - a would round
  const Wide coef_b = coef_a + c;
  return {coef_a.to_double(), coef_b.to_double(), c.to_double()};
}

std::vector<double> default_log_u_grid() {
  std::vector<double> u;
  for (int k = -12; k <= 12; ++k) {
    if (k != 0) u.push_back(std::exp2(static_cast<double>(k) / 4.0));
  }
  return u;
}

namespace {

struct LogSamples {
  std::vector<Wide> g;
  std::vector<Wide> ln_u;
};

LogSamples sample_g(const FunctionSpec& spec, std::span<const double> u_grid) {
  LogSamples s;
  for (double u : u_grid) {
    if (!(u > 0.0) || !std::isfinite(u)) {
      throw std::invalid_argument("u grid entries must be positive and finite");
    }
    if (u == 1.0) continue;
    s.g.push_back(detail::transform_g_wide(spec, 0.0, u));
    s.ln_u.push_back(log(Wide(u)));
  }
  if (s.g.empty()) throw std::invalid_argument("u grid has no entry other than u = 1");
  return s;
}

Wide max_residual(const LogSamples& s, const Wide& lambda) {
  Wide worst = 0.0;
  for (std::size_t i = 0; i < s.g.size(); ++i) worst = std::max(worst, abs(s.g[i] - lambda * s.ln_u[i]));
  return worst;
}

}  // namespace

LogParams fit_log_params(const FunctionSpec& spec, std::span<const double> u_grid) {
  const LogSamples s = sample_g(spec, u_grid);

  // max_i |g_i - lambda l_i| is convex and piecewise linear in lambda; its
  // minimum sits at a zero of one term or where two terms (or a term and a
  // negated term) cross. Enumerating those breakpoints is exact. Working in
  // double-double lets an exact logarithmic f return its lambda bit-exactly.
  std::vector<Wide> candidates;
  const std::size_t m = s.g.size();
  for (std::size_t i = 0; i < m; ++i) {
    candidates.push_back(s.g[i] / s.ln_u[i]);
    for (std::size_t j = i + 1; j < m; ++j) {
      const Wide dl = s.ln_u[i] - s.ln_u[j];
      if (dl != Wide(0.0)) candidates.push_back((s.g[i] - s.g[j]) / dl);
      const Wide sl = s.ln_u[i] + s.ln_u[j];
      if (sl != Wide(0.0)) candidates.push_back((s.g[i] + s.g[j]) / sl);
    }
  }
  std::sort(candidates.begin(), candidates.end());

  Wide best_lambda = candidates.front();
  Wide best = max_residual(s, best_lambda);
  for (const Wide& lambda : candidates) {
    const Wide r = max_residual(s, lambda);
    if (r < best || (r == best && abs(lambda) < abs(best_lambda))) {
      best = r;
      best_lambda = lambda;
    }
  }

  const double lambda = best_lambda.to_double();
  const Wide c = detail::eval_wide(spec, 0.0, Wide(0.5)) - lambda * log(Wide(0.5));
  return {lambda, c.to_double()};
}

double log_fit_residual(const FunctionSpec& spec, const LogParams& params,
                        std::span<const double> u_grid) {
  return max_residual(sample_g(spec, u_grid), params.lambda).to_double();
}

double eval_approximant(const ApproximantParams& params, const Alpha& alpha, double x) {
  if (!(x > 0.0 && x < 1.0)) {
    throw std::domain_error("approximant is defined on ]0,1[; use the boundary extension at 0 and 1");
  }
  require_matching(params, alpha);
  return approximant_wide(params, alpha.value(), x).to_double();
}

ResidualEstimate noise_residual_bound(double delta, const Alpha& alpha, const DomainGrid& grid) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("noise bound must be finite and >= 0");
  }
  if (grid.size() == 0) throw std::invalid_argument("grid is empty");
  const double a = alpha.value();
  double worst = -1.0;
  ArgPoint where{};
  for (const GridPoint& p : grid.points()) {
    const double coeff = 2.0 + std::pow(1.0 - p.x, a) + std::pow(1.0 - p.y, a);
    if (coeff > worst) {
      worst = coeff;
      where = {p.x, p.y};
    }
  }
  return {delta * worst, Provenance::derived_from_noise_bound,
          GridRef{grid.margin(), grid.resolution()}, where};
}

double eval_extension(const BoundaryExtension& ext, const Alpha& alpha, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("extension is defined on [0,1]");
  return extension_wide(ext, alpha.value(), x, 1.0 - Wide(x)).to_double();
}

double closed_domain_defect(const BoundaryExtension& ext, const Alpha& alpha, double x, double y) {
  const Wide X = x;
  const Wide Y = y;
  if (!(x >= 0.0 && y >= 0.0 && x < 1.0 && y < 1.0) || X + Y > Wide(1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "point (" << x << ", " << y << ") is outside the closed triangle";
    throw std::domain_error(os.str());
  }
  const double a = alpha.value();
  const Wide ox = 1.0 - X;
  const Wide oy = 1.0 - Y;
  const Wide rest = 1.0 - (X + Y);
  const Wide lhs = extension_wide(ext, a, X, ox) + pow(ox, a) * extension_wide(ext, a, Y / ox, rest / ox);
  const Wide rhs = extension_wide(ext, a, Y, oy) + pow(oy, a) * extension_wide(ext, a, X / oy, rest / oy);
  return (lhs - rhs).to_double();
}

bool BoundaryReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundaryCheck& c) { return c.passed; });
}

BoundaryReport extend_boundary(const ApproximantParams& params, const Alpha& alpha,
                               std::optional<double> f0_value, std::optional<double> f1_value,
                               double epsilon, double max_abs_log_u) {
  if (!f0_value || !f1_value) {
    throw std::invalid_argument("closed-domain mode requires both f(0) and f(1)");
  }
  require_matching(params, alpha);
  BoundaryReport report;
  report.f0 = *f0_value;
  report.f1 = *f1_value;

  if (const auto* p = std::get_if<PowerParams>(&params)) {
    report.extension = H1Extension{p->a, p->b};
    report.h0 = 0.0;
    report.h1 = (Wide(p->a) - p->b).to_double();
    const double limit = kStabilityConstantNegative * epsilon;
    const double dev0 = std::fabs(report.f0);
    const double dev1 = std::fabs((Wide(report.f1) - report.h1).to_double());
    report.checks.push_back({"f(0) = h1(0) = 0", dev0, limit, dev0 <= limit});
    report.checks.push_back({"f(1) = h1(1) = a - b", dev1, limit, dev1 <= limit});
    return report;
  }

  const auto& l = std::get<LogParams>(params);
  report.extension = H2Extension{report.f0, report.f1, l.c};
  report.h0 = report.f0;
  report.h1 = report.f1;
  // A bounded logarithm vanishes: |lambda ln u| <= 127 eps over the u grid.
  const double spread = std::fabs(l.lambda) * max_abs_log_u;
  const double limit = kLogRigidityConstant * epsilon;
  report.checks.push_back({"bounded logarithm |lambda|*max|ln u|", spread, limit, spread <= limit});
  return report;
}

std::string to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::satisfied:
      return "satisfied";
    case CertificateStatus::unsatisfied:
      return "unsatisfied";
    case CertificateStatus::inconclusive:
      return "inconclusive";
  }
  return "unsatisfied";
}

CertificateStatus status_from_string(const std::string& name) {
  if (name == "satisfied") return CertificateStatus::satisfied;
  if (name == "unsatisfied") return CertificateStatus::unsatisfied;
  if (name == "inconclusive") return CertificateStatus::inconclusive;
  throw std::invalid_argument("unknown certificate status '" + name + "'");
}

CertificateStatus StabilityCertificate::status() const {
  const bool ok = satisfied && (!boundary || boundary->passed());
  if (ok) return CertificateStatus::satisfied;
  return epsilon.provenance == Provenance::estimated_on_grid ? CertificateStatus::inconclusive
                                                              : CertificateStatus::unsatisfied;
}

std::vector<double> deviation_sample_points(const DomainGrid& grid) {
  const auto axis = grid.axis();
  std::vector<double> xs;
  xs.reserve(2 * axis.size());
  for (std::size_t k = 0; k < axis.size(); ++k) {
    xs.push_back(axis[k]);
    if (k + 1 < axis.size()) xs.push_back(0.5 * (axis[k] + axis[k + 1]));
  }
  return xs;
}

StabilityCertificate certify(const FunctionSpec& spec, const Alpha& alpha, const DomainGrid& grid,
                             const ResidualEstimate& epsilon, const CertifyOptions& options) {
  if (grid.size() == 0) throw std::invalid_argument("grid is empty");
  const double a = alpha.value();

  StabilityCertificate cert;
  cert.alpha = a;
  cert.epsilon = epsilon;
  if (alpha.is_negative()) {
    cert.params = fit_power_params(spec, alpha);
  } else {
    cert.params = fit_log_params(spec, options.log_u_grid);
    cert.notes.push_back("logarithmic part restricted to the measurable family lambda*ln");
  }

  double worst = 0.0;
  double worst_x = grid.axis().front();
  for (double x : deviation_sample_points(grid)) {
    const Wide dev = detail::eval_wide(spec, a, x) - approximant_wide(cert.params, a, x);
    const double v = std::fabs(dev.to_double());
    if (v > worst) {
      worst = v;
      worst_x = x;
    }
  }
  cert.sup_deviation = worst;
  cert.sup_deviation_x = worst_x;
  cert.bound_constant = bound_constant(alpha);
  cert.theorem_constant = theorem_constant(alpha);
  cert.bound_value = cert.bound_constant * epsilon.value;
  cert.satisfied = cert.sup_deviation <= cert.bound_value;

  if (options.closed_domain) {
    double max_abs_log_u = 0.0;
    for (double u : options.log_u_grid) max_abs_log_u = std::max(max_abs_log_u, std::fabs(std::log(u)));
    cert.boundary = extend_boundary(cert.params, alpha, options.closed_domain->f0,
                                    options.closed_domain->f1, epsilon.value, max_abs_log_u);
    if (alpha.is_zero()) {
      // h2 is constant inside: |f - c| <= 63 eps.
      const double c = std::get<LogParams>(cert.params).c;
      double dev = 0.0;
      for (double x : deviation_sample_points(grid)) {
        dev = std::max(dev, std::fabs((detail::eval_wide(spec, a, x) - c).to_double()));
      }
      const double limit = kStabilityConstantZero * epsilon.value;
      cert.boundary->checks.push_back({"interior |f - h2| <= 63 eps", dev, limit, dev <= limit});
    }
  }

  if (epsilon.provenance == Provenance::estimated_on_grid) {
    cert.notes.push_back("epsilon estimated on a finite grid is a lower bound of the true supremum");
  }
  if (is_tabulated(spec)) {
    cert.notes.push_back("f is linearly interpolated between samples; interpolation error enters epsilon");
  }
  return cert;
}

}  // namespace hustab
