#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "hustab/approximant.hpp"
#include "hustab/equation.hpp"
#include "hustab/generators.hpp"
#include "hustab/infomeasure.hpp"
#include "hustab/io.hpp"
#include "json.hpp"

namespace hustab::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Alpha checked_alpha(double value) {
  if (!std::isfinite(value)) throw UsageError("alpha must be finite");
  if (value > 0.0) throw UsageError("alpha must be ≤ 0 (alpha > 0 is out of scope)");
  return Alpha(value);
}

void deliver(const std::string& content, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

void write_sidecar(const std::string& output, const nlohmann::ordered_json& meta) {
  if (output.empty()) return;
  write_file_atomic(output + ".meta.json", meta.dump(2) + "\n");
}

int exit_for(CertificateStatus status) {
  return status == CertificateStatus::satisfied ? kExitOk : kExitNotSatisfied;
}

struct AnalyzeConfig {
  std::string input;
  double alpha = 0.0;
  double margin = 1e-3;
  int resolution = 200;
  std::optional<double> epsilon;
  std::optional<double> noise_bound;
  bool closed_domain = false;
  std::string output;
  std::string plot;
};

int cmd_analyze(const AnalyzeConfig& cfg, std::ostream& out, std::ostream& err) {
  const Alpha alpha = checked_alpha(cfg.alpha);
  const TabulatedData data = read_tabulated_csv(std::filesystem::path(cfg.input), cfg.closed_domain);
  const DomainGrid grid = make_interior_grid(cfg.margin, cfg.resolution);

  // Defect arguments and their compositions stay inside [margin, 1 - margin].
  if (data.xs.front() > cfg.margin || data.xs.back() < 1.0 - cfg.margin) {
    std::ostringstream os;
    os.precision(17);
    os << "infeasible grid: tabulated range [" << data.xs.front() << ", " << data.xs.back()
       << "] does not cover [" << cfg.margin << ", " << 1.0 - cfg.margin << "]";
    throw UsageError(os.str());
  }

  const FunctionSpec spec = FunctionSpec::tabulated(data.xs, data.values, data.f0, data.f1);
  ResidualEstimate eps;
  if (cfg.epsilon) {
    if (!(*cfg.epsilon >= 0.0)) throw UsageError("--epsilon must be >= 0");
    eps = ResidualEstimate::supplied(*cfg.epsilon);
  } else if (cfg.noise_bound) {
    eps = noise_residual_bound(*cfg.noise_bound, alpha, grid);
  } else {
    eps = residual_sup(spec, alpha, grid);
  }

  CertifyOptions options;
  if (cfg.closed_domain) options.closed_domain = ClosedDomainData{*data.f0, *data.f1};
  const StabilityCertificate cert = certify(spec, alpha, grid, eps, options);

  deliver(certificate_to_json(cert), cfg.output, out);
  if (!cfg.plot.empty()) write_file_atomic(cfg.plot, plot_csv(spec, cert, grid));
  if (cert.status() == CertificateStatus::inconclusive) {
    err << "inconclusive: bound not met, but epsilon was estimated on a grid and may be too small\n";
  }
  return exit_for(cert.status());
}

struct GenConfig {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double lambda = 0.0;
  std::optional<double> alpha;
  int points = 512;
  double margin = 1e-3;
  double noise_bound = 0.0;
  std::string noise_kind = "uniform";
  std::uint64_t seed = 0;
  bool closed_domain = false;
  std::string output;
  int max_n = 6;
  int samples = 50;
  double family_margin = 0.01;  // must match family-certify's default
};

std::vector<double> sample_xs(int points, double margin) {
  if (points < 2) throw UsageError("--points must be >= 2");
  if (!(margin > 0.0 && margin < 0.5)) throw UsageError("--margin must lie in ]0, 1/2[");
  std::vector<double> xs;
  for (int i = 0; i < points; ++i) xs.push_back(margin + (1.0 - 2.0 * margin) * i / (points - 1));
  xs.back() = 1.0 - margin;  // the upper end must cover 1 - margin exactly
  return xs;
}

int write_function_table(const FunctionSpec& exact, const Alpha& alpha, const GenConfig& cfg,
                         std::optional<double> f0, std::optional<double> f1,
                         nlohmann::ordered_json meta, std::ostream& out) {
  const PerturbationPlan plan{cfg.noise_bound, cfg.seed, noise_kind_from_string(cfg.noise_kind)};
  const FunctionSpec spec = cfg.noise_bound > 0.0 ? perturb(exact, plan) : exact;
  TabulatedData data;
  data.xs = sample_xs(cfg.points, cfg.margin);
  for (double x : data.xs) data.values.push_back(eval_f(spec, alpha, x));
  if (cfg.closed_domain) {
    data.f0 = *f0 + plan.noise(0.0);
    data.f1 = *f1 + plan.noise(1.0);
  }
  meta["points"] = cfg.points;
  meta["margin"] = cfg.margin;
  meta["noise_bound"] = cfg.noise_bound;
  meta["noise_kind"] = cfg.noise_kind;
  meta["seed"] = cfg.seed;
  meta["closed_domain"] = cfg.closed_domain;
  deliver(write_tabulated_csv(data), cfg.output, out);
  write_sidecar(cfg.output, meta);
  return kExitOk;
}

int cmd_gen_power(const GenConfig& cfg, std::ostream& out) {
  if (!cfg.alpha) throw UsageError("--alpha is required");
  const Alpha alpha = checked_alpha(*cfg.alpha);
  if (alpha.is_zero()) throw UsageError("alpha = 0 has no power-form solution; use the log form (gen log)");
  nlohmann::ordered_json meta{{"command", "gen power"}, {"a", cfg.a}, {"b", cfg.b}, {"alpha", alpha.value()}};
  return write_function_table(make_exact_power(cfg.a, cfg.b, alpha), alpha, cfg, 0.0, cfg.a - cfg.b, meta, out);
}

int cmd_gen_log(const GenConfig& cfg, std::ostream& out) {
  if (cfg.alpha && *cfg.alpha != 0.0) throw UsageError("the log form belongs to alpha = 0");
  const Alpha alpha(0.0);
  nlohmann::ordered_json meta{{"command", "gen log"}, {"lambda", cfg.lambda}, {"c", cfg.c}, {"alpha", 0.0}};
  // ln(1-x) has no finite value at x = 1; both endpoints take the constant c.
  return write_function_table(make_exact_log(cfg.lambda, cfg.c), alpha, cfg, cfg.c, cfg.c, meta, out);
}

struct FamilyFlags {
  double c = 1.0;
  std::optional<double> d;
  std::optional<double> lambda;
};

MeasureFamily generated_family(const FamilyFlags& flags, const Alpha& alpha, int max_n,
                               std::optional<double> noise, std::uint64_t seed) {
  FamilyParams params;
  if (alpha.is_negative()) {
    if (flags.lambda) throw UsageError("--lambda applies to alpha = 0; use --d for alpha < 0");
    params = PowerFamily{flags.c, flags.d.value_or(0.0)};
  } else {
    if (flags.d) throw UsageError("--d applies to alpha < 0; use --lambda for alpha = 0");
    params = LogFamily{flags.c, flags.lambda.value_or(0.0)};
  }
  MeasureFamily family = make_canonical_family(params, alpha, max_n);
  if (noise && *noise > 0.0) {
    const std::vector<double> deltas(static_cast<std::size_t>(max_n - 1), *noise);
    family = perturb_family(family, deltas, seed);
  }
  return family;
}

int cmd_gen_family(const GenConfig& cfg, const FamilyFlags& flags, std::ostream& out) {
  if (!cfg.alpha) throw UsageError("--alpha is required");
  const Alpha alpha = checked_alpha(*cfg.alpha);
  if (cfg.max_n < 3) throw UsageError("--max-n must be >= 3");
  const MeasureFamily source = generated_family(flags, alpha, cfg.max_n, cfg.noise_bound, cfg.seed);

  // Record every value a certification run with the same flags will request.
  auto entries = std::make_shared<std::vector<FamilyEntry>>();
  auto seen = std::make_shared<std::map<std::vector<double>, std::size_t>>();
  const MeasureFamily recorder(
      cfg.max_n,
      [source, entries, seen](const ProbabilityVector& p) {
        std::vector<double> key(p.values().begin(), p.values().end());
        if (const auto it = seen->find(key); it != seen->end()) return (*entries)[it->second].value;
        const double v = source(p);
        seen->emplace(key, entries->size());
        entries->push_back({static_cast<int>(key.size()), std::move(key), v});
        return v;
      },
      source.description());
  FamilyCertifyOptions options;
  options.margin = cfg.family_margin;
  certify_family(recorder, alpha, cfg.max_n, cfg.samples, cfg.seed, options);

  FamilyTable table{alpha.value(), *entries};
  nlohmann::ordered_json meta{{"command", "gen family"}, {"alpha", alpha.value()}, {"c", flags.c}};
  if (alpha.is_negative()) {
    meta["d"] = flags.d.value_or(0.0);
  } else {
    meta["lambda"] = flags.lambda.value_or(0.0);
  }
  meta["max_n"] = cfg.max_n;
  meta["samples"] = cfg.samples;
  meta["seed"] = cfg.seed;
  meta["margin"] = cfg.family_margin;
  meta["noise_bound"] = cfg.noise_bound;
  meta["entries"] = table.entries.size();
  deliver(family_table_to_json(table), cfg.output, out);
  write_sidecar(cfg.output, meta);
  return kExitOk;
}

struct FamilyCertifyConfig {
  std::string input;
  std::optional<double> alpha;
  std::optional<int> max_n;
  int samples = 50;
  std::uint64_t seed = 0;
  double margin = 0.01;
  std::optional<double> epsilon;
  std::optional<double> noise_bound;
  std::string output;
};

int cmd_family_certify(const FamilyCertifyConfig& cfg, const FamilyFlags& flags, std::ostream& out) {
  std::optional<MeasureFamily> family;
  std::optional<Alpha> alpha;
  if (!cfg.input.empty()) {
    const FamilyTable table = family_table_from_json(read_file(cfg.input));
    alpha = checked_alpha(table.alpha);
    if (cfg.alpha && *cfg.alpha != table.alpha) throw UsageError("--alpha disagrees with the family file");
    family = MeasureFamily::from_table(table);
  } else {
    if (!cfg.alpha) throw UsageError("--alpha is required without --input");
    alpha = checked_alpha(*cfg.alpha);
    family = generated_family(flags, *alpha, cfg.max_n.value_or(6), cfg.noise_bound, cfg.seed);
  }
  const int max_n = cfg.max_n.value_or(family->max_n());
  if (max_n < 3) throw UsageError("--max-n must be >= 3");

  FamilyCertifyOptions options;
  options.margin = cfg.margin;
  if (cfg.epsilon) {
    options.epsilon_bounds = std::vector<double>(static_cast<std::size_t>(max_n - 1), *cfg.epsilon);
    options.bounds_provenance = Provenance::supplied;
  } else if (cfg.noise_bound) {
    const std::vector<double> deltas(static_cast<std::size_t>(max_n - 1), *cfg.noise_bound);
    options.epsilon_bounds = perturbed_family_epsilons(*alpha, deltas, max_n, cfg.margin);
    options.bounds_provenance = Provenance::derived_from_noise_bound;
  }
  const FamilyCertificate cert = certify_family(*family, *alpha, max_n, cfg.samples, cfg.seed, options);
  deliver(family_certificate_to_json(cert), cfg.output, out);
  return exit_for(cert.status());
}

int cmd_constants(const std::vector<double>& alphas, std::ostream& out) {
  std::string table = "alpha,K\n";
  for (double a : alphas) {
    if (!(a < 0.0)) throw UsageError("constants needs alpha < 0 (got " + format_shortest(a) + ")");
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, bound_constant(Alpha(a)), std::chars_format::general, 17);
    table += format_shortest(a) + "," + std::string(buf, res.ptr) + "\n";
  }
  table += "limit α→0⁻: 15\n";
  out << table;
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical Hyers-Ulam stability certificates for the parametric fundamental equation of information"};
  app.require_subcommand(1);

  AnalyzeConfig analyze;
  auto* an = app.add_subcommand("analyze", "certify a tabulated f read from CSV");
  an->add_option("--input", analyze.input, "CSV with header x,value")->required();
  an->add_option("--alpha", analyze.alpha, "exponent, <= 0")->required();
  an->add_option("--margin", analyze.margin, "grid margin")->capture_default_str();
  an->add_option("--resolution", analyze.resolution, "grid resolution")->capture_default_str();
  auto* an_eps = an->add_option("--epsilon", analyze.epsilon, "supply epsilon instead of estimating it");
  auto* an_noise = an->add_option("--noise-bound", analyze.noise_bound, "derive epsilon from a noise bound");
  an_eps->excludes(an_noise);
  an->add_flag("--closed-domain", analyze.closed_domain, "read f(0), f(1) rows and check the closed domain");
  an->add_option("--output", analyze.output, "certificate path (default stdout)");
  an->add_option("--plot", analyze.plot, "write x,f,approximant,deviation CSV");

  GenConfig gen;
  FamilyFlags family_flags;
  auto* gn = app.add_subcommand("gen", "generate test data");
  gn->require_subcommand(1);
  auto add_common = [&](CLI::App* sub, double& margin) {
    sub->add_option("--margin", margin)->capture_default_str();
    sub->add_option("--noise-bound", gen.noise_bound, "bounded noise added to the values")->capture_default_str();
    sub->add_option("--seed", gen.seed)->capture_default_str();
    sub->add_option("--output", gen.output, "output path (default stdout); writes <output>.meta.json");
  };
  auto* g_power = gn->add_subcommand("power", "a x^alpha + b (1-x)^alpha - b");
  g_power->add_option("--a", gen.a)->capture_default_str();
  g_power->add_option("--b", gen.b)->capture_default_str();
  g_power->add_option("--alpha", gen.alpha)->required();
  g_power->add_option("--points", gen.points)->capture_default_str();
  g_power->add_option("--noise-kind", gen.noise_kind)->check(CLI::IsMember({"uniform", "comb"}));
  g_power->add_flag("--closed-domain", gen.closed_domain, "add rows at x = 0 and x = 1");
  add_common(g_power, gen.margin);
  auto* g_log = gn->add_subcommand("log", "lambda ln(1-x) + c, alpha = 0");
  g_log->add_option("--lambda", gen.lambda)->capture_default_str();
  g_log->add_option("--c", gen.c)->capture_default_str();
  g_log->add_option("--alpha", gen.alpha);
  g_log->add_option("--points", gen.points)->capture_default_str();
  g_log->add_option("--noise-kind", gen.noise_kind)->check(CLI::IsMember({"uniform", "comb"}));
  g_log->add_flag("--closed-domain", gen.closed_domain, "add rows at x = 0 and x = 1");
  add_common(g_log, gen.margin);
  auto* g_family = gn->add_subcommand("family", "tabulate a measure family as JSON");
  g_family->add_option("--c", family_flags.c)->capture_default_str();
  g_family->add_option("--d", family_flags.d);
  g_family->add_option("--lambda", family_flags.lambda);
  g_family->add_option("--alpha", gen.alpha)->required();
  g_family->add_option("--max-n", gen.max_n)->capture_default_str();
  g_family->add_option("--samples", gen.samples)->capture_default_str();
  add_common(g_family, gen.family_margin);

  FamilyCertifyConfig fam;
  auto* fc = app.add_subcommand("family-certify", "certify a measure family");
  fc->add_option("--input", fam.input, "family JSON; otherwise the family is generated from --c/--d/--lambda");
  fc->add_option("--alpha", fam.alpha);
  fc->add_option("--c", family_flags.c)->capture_default_str();
  fc->add_option("--d", family_flags.d);
  fc->add_option("--lambda", family_flags.lambda);
  fc->add_option("--max-n", fam.max_n);
  fc->add_option("--samples", fam.samples)->capture_default_str();
  fc->add_option("--seed", fam.seed)->capture_default_str();
  fc->add_option("--margin", fam.margin)->capture_default_str();
  auto* fc_eps = fc->add_option("--epsilon", fam.epsilon, "use this value for every epsilon");
  auto* fc_noise = fc->add_option("--noise-bound", fam.noise_bound,
                                  "per-n noise bound: perturbs a generated family and derives the epsilons");
  fc_eps->excludes(fc_noise);
  fc->add_option("--output", fam.output, "certificate path (default stdout)");

  std::vector<double> constant_alphas;
  auto* cs = app.add_subcommand("constants", "tabulate the stability constant K(alpha)");
  cs->add_option("--alpha", constant_alphas, "alpha values < 0")->required()->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (an->parsed()) return cmd_analyze(analyze, out, err);
    if (g_power->parsed()) return cmd_gen_power(gen, out);
    if (g_log->parsed()) return cmd_gen_log(gen, out);
    if (g_family->parsed()) return cmd_gen_family(gen, family_flags, out);
    if (fc->parsed()) return cmd_family_certify(fam, family_flags, out);
    if (cs->parsed()) return cmd_constants(constant_alphas, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hustab::cli
