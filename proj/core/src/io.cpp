#include "hustab/io.hpp"

#include <unistd.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace hustab {
namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view field, int line, const char* column) {
  field = trim(field);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || end != field.data() + field.size() || field.empty()) {
    throw ParseError("line " + std::to_string(line) + ": cannot parse " + column + " '" +
                         std::string(field) + "' as a number",
                     line);
  }
  if (!std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line) + ": " + column + " is not finite", line);
  }
  return v;
}

std::string format17(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

// nlohmann's dump prints doubles in shortest form; certificates pin 17
// significant digits, so the tree is written by hand.
void emit(const Json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        emit(value, out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      if (j.empty()) {
        out += "[]";
      } else if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          emit(j[i], out, depth + 1);
        }
        out += "]";
      } else {
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ",\n";
          out += pad;
          emit(j[i], out, depth + 1);
        }
        out += "\n" + close_pad + "]";
      }
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format17(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

std::string dump(const Json& j) {
  std::string out;
  emit(j, out, 0);
  out += '\n';
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'", 0);
  return j.at(key);
}

double num(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!v.is_number()) throw ParseError(std::string("field '") + key + "' is not a number", 0);
  return v.get<double>();
}

template <typename T>
T integer(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' is not an integer", 0);
  return v.get<T>();
}

bool boolean(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_boolean()) throw ParseError(std::string("field '") + key + "' is not a boolean", 0);
  return v.get<bool>();
}

std::string text(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' is not a string", 0);
  return v.get<std::string>();
}

std::vector<double> numbers(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) throw ParseError(std::string("field '") + key + "' is not an array", 0);
  std::vector<double> out;
  for (const Json& e : v) {
    if (!e.is_number()) throw ParseError(std::string("field '") + key + "' holds a non-number", 0);
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<std::string> strings(const Json& j, const char* key) {
  std::vector<std::string> out;
  for (const Json& e : field(j, key)) {
    if (!e.is_string()) throw ParseError(std::string("field '") + key + "' holds a non-string", 0);
    out.push_back(e.get<std::string>());
  }
  return out;
}

template <typename F>
auto wrap(F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(e.what(), 0);
  }
}

Json epsilon_json(const ResidualEstimate& e) {
  Json j;
  j["value"] = e.value;
  j["provenance"] = to_string(e.provenance);
  j["argmax"] = e.argmax ? Json{{"x", e.argmax->x}, {"y", e.argmax->y}} : Json(nullptr);
  if (e.grid) j["grid"] = Json{{"margin", e.grid->margin}, {"resolution", e.grid->resolution}};
  return j;
}

ResidualEstimate epsilon_from(const Json& j) {
  ResidualEstimate e;
  e.value = num(j, "value");
  e.provenance = provenance_from_string(text(j, "provenance"));
  if (const Json& a = field(j, "argmax"); !a.is_null()) e.argmax = ArgPoint{num(a, "x"), num(a, "y")};
  if (j.contains("grid")) {
    const Json& g = j.at("grid");
    e.grid = GridRef{num(g, "margin"), integer<int>(g, "resolution")};
  }
  return e;
}

Json params_json(const ApproximantParams& p) {
  if (const auto* pp = std::get_if<PowerParams>(&p)) {
    return Json{{"kind", "power"}, {"a", pp->a}, {"b", pp->b}, {"c", pp->c}};
  }
  const auto& lp = std::get<LogParams>(p);
  return Json{{"kind", "log"}, {"lambda", lp.lambda}, {"c", lp.c}};
}

ApproximantParams params_from(const Json& j) {
  const std::string kind = text(j, "kind");
  if (kind == "power") return PowerParams{num(j, "a"), num(j, "b"), num(j, "c")};
  if (kind == "log") return LogParams{num(j, "lambda"), num(j, "c")};
  throw ParseError("unknown params kind '" + kind + "'", 0);
}

Json boundary_json(const BoundaryReport& b) {
  Json ext;
  if (const auto* h1 = std::get_if<H1Extension>(&b.extension)) {
    ext = Json{{"kind", "h1"}, {"a", h1->a}, {"b", h1->b}};
  } else {
    const auto& h2 = std::get<H2Extension>(b.extension);
    ext = Json{{"kind", "h2"}, {"a_end0", h2.a_end0}, {"b_end1", h2.b_end1}, {"c_mid", h2.c_mid}};
  }
  Json checks = Json::array();
  for (const BoundaryCheck& c : b.checks) {
    checks.push_back(Json{{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"passed", c.passed}});
  }
  return Json{{"extension", ext}, {"f0", b.f0}, {"f1", b.f1}, {"h0", b.h0},
              {"h1", b.h1},       {"checks", checks}, {"passed", b.passed()}};
}

BoundaryReport boundary_from(const Json& j) {
  BoundaryReport b;
  const Json& ext = field(j, "extension");
  const std::string kind = text(ext, "kind");
  if (kind == "h1") {
    b.extension = H1Extension{num(ext, "a"), num(ext, "b")};
  } else if (kind == "h2") {
    b.extension = H2Extension{num(ext, "a_end0"), num(ext, "b_end1"), num(ext, "c_mid")};
  } else {
    throw ParseError("unknown extension kind '" + kind + "'", 0);
  }
  b.f0 = num(j, "f0");
  b.f1 = num(j, "f1");
  b.h0 = num(j, "h0");
  b.h1 = num(j, "h1");
  for (const Json& c : field(j, "checks")) {
    b.checks.push_back({text(c, "name"), num(c, "value"), num(c, "limit"), boolean(c, "passed")});
  }
  return b;
}

Json certificate_tree(const StabilityCertificate& c) {
  Json j;
  j["alpha"] = c.alpha;
  j["status"] = to_string(c.status());
  j["epsilon"] = epsilon_json(c.epsilon);
  j["params"] = params_json(c.params);
  j["sup_deviation"] = c.sup_deviation;
  j["sup_deviation_x"] = c.sup_deviation_x;
  j["bound_constant"] = c.bound_constant;
  j["theorem_constant"] = c.theorem_constant;
  j["bound_value"] = c.bound_value;
  j["satisfied"] = c.satisfied;
  if (c.boundary) j["boundary"] = boundary_json(*c.boundary);
  j["notes"] = c.notes;
  return j;
}

StabilityCertificate certificate_from(const Json& j) {
  StabilityCertificate c;
  c.alpha = num(j, "alpha");
  c.epsilon = epsilon_from(field(j, "epsilon"));
  c.params = params_from(field(j, "params"));
  c.sup_deviation = num(j, "sup_deviation");
  c.sup_deviation_x = num(j, "sup_deviation_x");
  c.bound_constant = num(j, "bound_constant");
  c.theorem_constant = num(j, "theorem_constant");
  c.bound_value = num(j, "bound_value");
  c.satisfied = boolean(j, "satisfied");
  if (j.contains("boundary")) c.boundary = boundary_from(j.at("boundary"));
  c.notes = strings(j, "notes");
  return c;
}

}  // namespace

ParseError::ParseError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}

TabulatedData read_tabulated_csv(std::istream& in, bool closed_domain) {
  TabulatedData data;
  std::string raw;
  int line = 0;
  bool header = false;
  double last_x = -1.0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view row = trim(raw);
    if (row.empty()) continue;
    if (!header) {
      if (row != "x,value") {
        throw ParseError("line " + std::to_string(line) + ": expected header 'x,value'", line);
      }
      header = true;
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError("line " + std::to_string(line) + ": expected two comma-separated fields", line);
    }
    const double x = parse_number(row.substr(0, comma), line, "x");
    const double v = parse_number(row.substr(comma + 1), line, "value");
    if (x <= last_x) {
      throw ParseError("line " + std::to_string(line) + ": x values must be strictly increasing", line);
    }
    last_x = x;
    if (x < 0.0 || x > 1.0) {
      throw ParseError("line " + std::to_string(line) + ": x must lie in [0, 1]", line);
    }
    if (x == 0.0 || x == 1.0) {
      if (!closed_domain) {
        throw ParseError("line " + std::to_string(line) +
                             ": rows at x = 0 or x = 1 are only accepted with --closed-domain",
                         line);
      }
      (x == 0.0 ? data.f0 : data.f1) = v;
      continue;
    }
    data.xs.push_back(x);
    data.values.push_back(v);
  }
  if (!header) throw ParseError("empty input: expected header 'x,value'", line);
  if (data.xs.size() < 2) throw ParseError("need at least two interior samples", line);
  if (closed_domain && (!data.f0 || !data.f1)) {
    throw ParseError("--closed-domain needs rows at x = 0 and x = 1", line);
  }
  return data;
}

TabulatedData read_tabulated_csv(const std::filesystem::path& path, bool closed_domain) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_tabulated_csv(in, closed_domain);
}

std::string format_shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string write_tabulated_csv(const TabulatedData& data) {
  std::string out = "x,value\n";
  auto row = [&out](double x, double v) { out += format_shortest(x) + "," + format_shortest(v) + "\n"; };
  if (data.f0) row(0.0, *data.f0);
  for (std::size_t i = 0; i < data.xs.size(); ++i) row(data.xs[i], data.values[i]);
  if (data.f1) row(1.0, *data.f1);
  return out;
}

std::string certificate_to_json(const StabilityCertificate& cert) { return dump(certificate_tree(cert)); }

StabilityCertificate certificate_from_json(std::string_view text) {
  return wrap([&] { return certificate_from(parse_json(text)); });
}

std::string family_certificate_to_json(const FamilyCertificate& c) {
  Json j;
  j["alpha"] = c.alpha;
  j["status"] = to_string(c.status());
  j["max_n"] = c.max_n;
  j["samples_per_n"] = c.samples_per_n;
  j["seed"] = c.seed;
  j["margin"] = c.margin;
  j["semisymmetry_residual"] = c.semisymmetry_residual;
  j["recursivity_residuals"] = c.recursivity_residuals;
  j["epsilons"] = c.epsilons;
  j["epsilon_provenance"] = to_string(c.epsilon_provenance);
  if (const auto* pf = std::get_if<PowerFamily>(&c.params)) {
    j["params"] = Json{{"kind", "power"}, {"c", pf->c}, {"d", pf->d}};
  } else {
    const auto& lf = std::get<LogFamily>(c.params);
    j["params"] = Json{{"kind", "log"}, {"c", lf.c}, {"lambda", lf.lambda}};
  }
  j["satisfied"] = c.satisfied;
  Json per_n = Json::array();
  for (const PerNReport& r : c.per_n) {
    Json e;
    e["n"] = r.n;
    e["recursivity_residual"] = r.recursivity_residual ? Json(*r.recursivity_residual) : Json(nullptr);
    e["max_deviation"] = r.max_deviation;
    e["passed"] = r.passed;
    Json checks = Json::array();
    for (const SampleCheck& s : r.checks) {
      checks.push_back(Json{{"p", s.p},
                            {"value", s.value},
                            {"canonical", s.canonical},
                            {"deviation", s.deviation},
                            {"bound", s.bound},
                            {"passed", s.passed}});
    }
    e["checks"] = checks;
    per_n.push_back(e);
  }
  j["per_n"] = per_n;
  j["base"] = certificate_tree(c.base);
  j["notes"] = c.notes;
  return dump(j);
}

FamilyCertificate family_certificate_from_json(std::string_view body) {
  return wrap([&] {
    const Json j = parse_json(body);
    FamilyCertificate c;
    c.alpha = num(j, "alpha");
    c.max_n = integer<int>(j, "max_n");
    c.samples_per_n = integer<int>(j, "samples_per_n");
    c.seed = integer<std::uint64_t>(j, "seed");
    c.margin = num(j, "margin");
    c.semisymmetry_residual = num(j, "semisymmetry_residual");
    c.recursivity_residuals = numbers(j, "recursivity_residuals");
    c.epsilons = numbers(j, "epsilons");
    c.epsilon_provenance = provenance_from_string(text(j, "epsilon_provenance"));
    const Json& p = field(j, "params");
    const std::string kind = text(p, "kind");
    if (kind == "power") {
      c.params = PowerFamily{num(p, "c"), num(p, "d")};
    } else if (kind == "log") {
      c.params = LogFamily{num(p, "c"), num(p, "lambda")};
    } else {
      throw ParseError("unknown family params kind '" + kind + "'", 0);
    }
    c.satisfied = boolean(j, "satisfied");
    for (const Json& e : field(j, "per_n")) {
      PerNReport r;
      r.n = integer<int>(e, "n");
      if (const Json& rr = field(e, "recursivity_residual"); !rr.is_null()) r.recursivity_residual = rr.get<double>();
      r.max_deviation = num(e, "max_deviation");
      r.passed = boolean(e, "passed");
      for (const Json& s : field(e, "checks")) {
        r.checks.push_back({numbers(s, "p"), num(s, "value"), num(s, "canonical"), num(s, "deviation"),
                            num(s, "bound"), boolean(s, "passed")});
      }
      c.per_n.push_back(std::move(r));
    }
    c.base = certificate_from(field(j, "base"));
    c.notes = strings(j, "notes");
    return c;
  });
}

std::string family_table_to_json(const FamilyTable& table) {
  Json j;
  j["alpha"] = table.alpha;
  Json entries = Json::array();
  for (const FamilyEntry& e : table.entries) {
    entries.push_back(Json{{"n", e.n}, {"p", e.p}, {"value", e.value}});
  }
  j["entries"] = entries;
  return dump(j);
}

FamilyTable family_table_from_json(std::string_view body) {
  return wrap([&] {
    const Json j = parse_json(body);
    FamilyTable t;
    t.alpha = num(j, "alpha");
    const Json& entries = field(j, "entries");
    if (!entries.is_array()) throw ParseError("field 'entries' is not an array", 0);
    for (const Json& e : entries) {
      t.entries.push_back({integer<int>(e, "n"), numbers(e, "p"), num(e, "value")});
    }
    return t;
  });
}

std::string plot_csv(const FunctionSpec& spec, const StabilityCertificate& cert, const DomainGrid& grid) {
  const Alpha alpha(cert.alpha);
  std::string out = "x,f,approximant,deviation\n";
  for (double x : deviation_sample_points(grid)) {
    const double f = eval_f(spec, alpha, x);
    const double h = eval_approximant(cert.params, alpha, x);
    out += format_shortest(x) + "," + format_shortest(f) + "," + format_shortest(h) + "," +
           format_shortest(f - h) + "\n";
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace hustab
