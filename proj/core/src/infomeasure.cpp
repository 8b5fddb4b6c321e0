#include "hustab/infomeasure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace hustab {
namespace {

std::string fmt_vector(std::span<const double> p) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ')';
  return os.str();
}

void require_matching(const FamilyParams& params, const Alpha& alpha) {
  const bool power = std::holds_alternative<PowerFamily>(params);
  if (power != alpha.is_negative()) {
    throw std::invalid_argument(power ? "PowerFamily requires alpha < 0" : "LogFamily requires alpha = 0");
  }
}

// Linear interpolation over n = 2 entries keyed by p2.
struct PairCurve {
  std::vector<double> p2;
  std::vector<double> values;

  double operator()(double x) const {
    if (p2.size() < 2 || x < p2.front() || x > p2.back()) {
      std::ostringstream os;
      os.precision(17);
      os << "p2 = " << x << " is outside the tabulated n = 2 range";
      throw std::domain_error(os.str());
    }
    const auto it = std::upper_bound(p2.begin(), p2.end(), x);
    if (it == p2.end()) return values.back();
    const std::size_t k = static_cast<std::size_t>(it - p2.begin());
    const double t = (x - p2[k - 1]) / (p2[k] - p2[k - 1]);
    return values[k - 1] + t * (values[k] - values[k - 1]);
  }
};

}  // namespace

double entropy_degree_alpha(const ProbabilityVector& p, const Alpha& alpha) {
  const double a = alpha.value();
  double sum = 0.0;
  for (double pi : p.values()) sum += std::pow(pi, a);
  return (sum - 1.0) / (std::exp2(1.0 - a) - 1.0);
}

double canonical_family_eval(const FamilyParams& params, const Alpha& alpha, const ProbabilityVector& p) {
  require_matching(params, alpha);
  const double h = entropy_degree_alpha(p, alpha);
  if (const auto* pf = std::get_if<PowerFamily>(&params)) {
    return pf->c * h + pf->d * (std::pow(p[0], alpha.value()) - 1.0);
  }
  const auto& lf = std::get<LogFamily>(params);
  return lf.c * h + lf.lambda * std::log(p[0]);
}

FamilyParams family_params_from(const ApproximantParams& params, const Alpha& alpha) {
  if (const auto* pp = std::get_if<PowerParams>(&params)) {
    if (!alpha.is_negative()) throw std::invalid_argument("power-form params require alpha < 0");
    return PowerFamily{(std::exp2(1.0 - alpha.value()) - 1.0) * pp->a, pp->b - pp->a};
  }
  if (!alpha.is_zero()) throw std::invalid_argument("logarithmic params require alpha = 0");
  const auto& lp = std::get<LogParams>(params);
  return LogFamily{lp.c, lp.lambda};
}

MeasureFamily::MeasureFamily(int max_n, Evaluator evaluator, std::string description)
    : max_n_(max_n), evaluator_(std::move(evaluator)), description_(std::move(description)) {
  if (max_n_ < 2) throw std::invalid_argument("a measure family needs max_n >= 2");
  if (!evaluator_) throw std::invalid_argument("a measure family needs an evaluator");
}

double MeasureFamily::operator()(const ProbabilityVector& p) const {
  const int n = static_cast<int>(p.size());
  if (!supports(n)) {
    throw std::invalid_argument("family defines I_2..I_" + std::to_string(max_n_) + ", not I_" +
                                std::to_string(n));
  }
  return evaluator_(p);
}

MeasureFamily MeasureFamily::from_table(const FamilyTable& table) {
  static_cast<void>(Alpha(table.alpha));  // rejects alpha > 0
  auto exact = std::make_shared<std::map<std::vector<double>, double>>();
  std::vector<std::pair<double, double>> pairs;
  int max_n = 0;
  for (const FamilyEntry& e : table.entries) {
    if (e.n != static_cast<int>(e.p.size())) {
      throw std::invalid_argument("family entry with n = " + std::to_string(e.n) + " has " +
                                  std::to_string(e.p.size()) + " components");
    }
    validate_prob_vector(e.p);
    if (!std::isfinite(e.value)) throw std::invalid_argument("family entry value is not finite");
    exact->emplace(e.p, e.value);
    if (e.n == 2) pairs.emplace_back(e.p[1], e.value);
    max_n = std::max(max_n, e.n);
  }
  for (int n = 2; n <= max_n; ++n) {
    const bool present = std::any_of(table.entries.begin(), table.entries.end(),
                                     [n](const FamilyEntry& e) { return e.n == n; });
    if (!present) throw std::invalid_argument("family table has no entries for n = " + std::to_string(n));
  }
  if (pairs.size() < 2) throw std::invalid_argument("family table needs at least two n = 2 entries");

  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& l, const auto& r) { return l.first < r.first; });
  auto curve = std::make_shared<PairCurve>();
  for (const auto& [x, v] : pairs) {
    if (!curve->p2.empty() && curve->p2.back() == x) continue;
    curve->p2.push_back(x);
    curve->values.push_back(v);
  }
  if (curve->p2.size() < 2) throw std::invalid_argument("family table needs two distinct n = 2 points");

  auto eval = [exact, curve](const ProbabilityVector& p) {
    const std::vector<double> key(p.values().begin(), p.values().end());
    if (const auto it = exact->find(key); it != exact->end()) return it->second;
    if (p.size() == 2) return (*curve)(p[1]);
    throw std::domain_error("no tabulated value for I_" + std::to_string(p.size()) + fmt_vector(key));
  };
  return MeasureFamily(max_n, eval, "tabulated family (" + std::to_string(table.entries.size()) + " entries)");
}

double recursivity_residual(const MeasureFamily& family, const Alpha& alpha, int n,
                            std::span<const ProbabilityVector> samples) {
  if (n < 3) throw std::invalid_argument("recursivity needs n >= 3");
  if (!family.supports(n) || !family.supports(n - 1)) {
    throw std::invalid_argument("family does not define I_" + std::to_string(n));
  }
  double worst = 0.0;
  for (const ProbabilityVector& p : samples) {
    if (static_cast<int>(p.size()) != n) {
      throw std::invalid_argument("recursivity sample of length " + std::to_string(p.size()) +
                                  " for n = " + std::to_string(n));
    }
    const double s = p[0] + p[1];
    std::vector<double> merged{s};
    merged.insert(merged.end(), p.values().begin() + 2, p.values().end());
    const std::vector<double> split{p[0] / s, p[1] / s};
    const double r = family(p) - family(validate_prob_vector(merged)) -
                     std::pow(s, alpha.value()) * family(validate_prob_vector(split));
    worst = std::max(worst, std::fabs(r));
  }
  return worst;
}

double semisymmetry_residual(const MeasureFamily& family, std::span<const ProbabilityVector> samples) {
  if (!family.supports(3)) throw std::invalid_argument("family does not define I_3");
  double worst = 0.0;
  for (const ProbabilityVector& p : samples) {
    if (p.size() != 3) throw std::invalid_argument("semisymmetry samples must have length 3");
    const std::vector<double> swapped{p[0], p[2], p[1]};
    worst = std::max(worst, std::fabs(family(p) - family(validate_prob_vector(swapped))));
  }
  return worst;
}

double family_bound(const Alpha& alpha, int n, const ProbabilityVector& p, std::span<const double> eps) {
  if (n < 2 || static_cast<int>(p.size()) != n) {
    throw std::invalid_argument("family_bound: p must have length n >= 2");
  }
  const std::size_t needed = static_cast<std::size_t>(std::max(2, n - 1));
  if (eps.size() < needed) {
    throw std::invalid_argument("family_bound at n = " + std::to_string(n) + " needs " +
                                std::to_string(needed) + " epsilons, got " + std::to_string(eps.size()));
  }
  for (std::size_t k = 0; k < needed; ++k) {
    if (!(eps[k] >= 0.0) || !std::isfinite(eps[k])) {
      throw std::invalid_argument("family_bound: epsilons must be finite and >= 0");
    }
  }
  const double base = 2.0 * eps[1] + eps[0];
  double tail = 0.0;
  for (int k = 2; k <= n - 1; ++k) tail += eps[static_cast<std::size_t>(k - 1)];

  if (alpha.is_zero()) return tail + kStabilityConstantZero * (n - 1) * base;
  double weights = 1.0;
  double partial = p[0];
  for (int k = 2; k <= n - 1; ++k) {
    partial += p[static_cast<std::size_t>(k - 1)];
    weights += std::pow(partial, alpha.value());
  }
  return tail + kStabilityConstantNegative * base * weights;
}

FunctionSpec family_bridge(const MeasureFamily& family) {
  return FunctionSpec::callable(
      [family](double x) {
        const std::vector<double> p{1.0 - x, x};
        return family(validate_prob_vector(p));
      },
      "x -> I_2(1-x, x) of " + family.description());
}

FamilyParams fit_family_params(const MeasureFamily& family, const Alpha& alpha,
                               std::span<const double> log_u_grid) {
  const FunctionSpec f = family_bridge(family);
  if (alpha.is_negative()) return family_params_from(fit_power_params(f, alpha), alpha);
  return family_params_from(fit_log_params(f, log_u_grid), alpha);
}

std::vector<ProbabilityVector> family_samples(int n, int count, std::uint64_t seed, double margin) {
  std::vector<ProbabilityVector> out = simplex_sample(n, count, seed + static_cast<std::uint64_t>(n), margin);
  out.push_back(validate_prob_vector(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n)));
  for (int k = 0; k < n; ++k) {
    std::vector<double> corner(static_cast<std::size_t>(n), margin);
    corner[static_cast<std::size_t>(k)] = 1.0 - (n - 1) * margin;
    out.push_back(validate_prob_vector(corner));
  }
  return out;
}

CertificateStatus FamilyCertificate::status() const {
  if (satisfied) return CertificateStatus::satisfied;
  return epsilon_provenance == Provenance::estimated_on_grid ? CertificateStatus::inconclusive
                                                              : CertificateStatus::unsatisfied;
}

FamilyCertificate certify_family(const MeasureFamily& family, const Alpha& alpha, int N,
                                 int samples_per_n, std::uint64_t seed,
                                 const FamilyCertifyOptions& options) {
  if (N < 3) throw std::invalid_argument("certify_family needs N >= 3");
  if (!family.supports(N)) {
    throw std::invalid_argument("family defines I_2..I_" + std::to_string(family.max_n()) +
                                ", cannot certify up to N = " + std::to_string(N));
  }
  if (samples_per_n < 0) throw std::invalid_argument("samples per n must be >= 0");

  FamilyCertificate cert;
  cert.alpha = alpha.value();
  cert.max_n = N;
  cert.samples_per_n = samples_per_n;
  cert.seed = seed;
  cert.margin = options.margin;

  std::vector<std::vector<ProbabilityVector>> samples(static_cast<std::size_t>(N + 1));
  for (int n = 2; n <= N; ++n) {
    samples[static_cast<std::size_t>(n)] = family_samples(n, samples_per_n, seed, options.margin);
  }

  cert.semisymmetry_residual = semisymmetry_residual(family, samples[3]);
  for (int n = 3; n <= N; ++n) {
    cert.recursivity_residuals.push_back(
        recursivity_residual(family, alpha, n, samples[static_cast<std::size_t>(n)]));
  }

  if (options.epsilon_bounds) {
    if (options.epsilon_bounds->size() < static_cast<std::size_t>(N - 1)) {
      throw std::invalid_argument("epsilon bounds must list eps_1..eps_" + std::to_string(N - 1));
    }
    cert.epsilons.assign(options.epsilon_bounds->begin(), options.epsilon_bounds->begin() + (N - 1));
    cert.epsilon_provenance = options.bounds_provenance;
  } else {
    cert.epsilons.push_back(cert.semisymmetry_residual);
    cert.epsilons.insert(cert.epsilons.end(), cert.recursivity_residuals.begin(),
                         cert.recursivity_residuals.end());
    cert.epsilon_provenance = Provenance::estimated_on_grid;
    cert.notes.push_back("epsilons are maxima over sampled vectors and may underestimate the suprema");
  }

  // The n = 2 solution fitted to f(x) = I_2(1-x, x) with eps = 2 eps_2 + eps_1.
  ResidualEstimate base_eps;
  base_eps.value = 2.0 * cert.epsilons[1] + cert.epsilons[0];
  base_eps.provenance = cert.epsilon_provenance;
  CertifyOptions base_options;
  base_options.log_u_grid = options.log_u_grid;
  cert.base = certify(family_bridge(family), alpha,
                      make_interior_grid(options.base_margin, options.base_resolution), base_eps,
                      base_options);
  cert.params = family_params_from(cert.base.params, alpha);

  cert.satisfied = true;
  for (int n = 2; n <= N; ++n) {
    PerNReport report;
    report.n = n;
    if (n >= 3) report.recursivity_residual = cert.epsilons[static_cast<std::size_t>(n - 2)];
    report.passed = true;
    for (const ProbabilityVector& p : samples[static_cast<std::size_t>(n)]) {
      SampleCheck check;
      check.p.assign(p.values().begin(), p.values().end());
      check.value = family(p);
      check.canonical = canonical_family_eval(cert.params, alpha, p);
      check.deviation = std::fabs(check.value - check.canonical);
      check.bound = family_bound(alpha, n, p, cert.epsilons);
      check.passed = check.deviation <= check.bound;
      report.max_deviation = std::max(report.max_deviation, check.deviation);
      report.passed = report.passed && check.passed;
      report.checks.push_back(std::move(check));
    }
    cert.satisfied = cert.satisfied && report.passed;
    cert.per_n.push_back(std::move(report));
  }

  if (alpha.is_negative()) {
    cert.notes.push_back("bound inner sum uses partial sums (p_1 + ... + p_k)^alpha");
  } else {
    cert.notes.push_back("alpha = 0 bound 63 (n-1)(2 eps_2 + eps_1) read as an upper bound");
  }
  return cert;
}

}  // namespace hustab
