#include "curvcompat/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "suites.hpp"

namespace curvcompat::cli {
namespace {

using json = nlohmann::json;

using SuiteFn = void (*)(detail::SuiteContext&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"algebra-core", detail::algebra_core},
      {"jordan-closure", detail::jordan_closure},
      {"derdzinski-shen", detail::derdzinski_shen},
      {"lovelock", detail::lovelock},
      {"weyl-identities", detail::weyl_identities},
      {"maps", detail::maps},
      {"catalog-sanity", detail::catalog_sanity},
      {"constant-curvature", detail::constant_curvature},
  };
  return table;
}

SuiteFn find_suite(const std::string& id) {
  for (const auto& [name, fn] : suite_table())
    if (name == id) return fn;
  throw ConfigError("unknown suite id '" + id + "'");
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

double positive_number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  const double d = v.get<double>();
  if (!(d > 0.0)) throw ConfigError(what + " must be positive");
  return d;
}

Vector parse_point(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": a probe must be an array of numbers");
  Vector p;
  for (const auto& c : v) {
    if (!c.is_number()) throw ConfigError(where + ": probe coordinates must be numbers");
    p.push_back(c.get<double>());
  }
  return p;
}

FixtureSpec parse_fixture(const json& v, std::size_t index) {
  const std::string where = "fixtures[" + std::to_string(index) + "]";
  if (!v.is_object()) throw ConfigError(where + " must be an object");
  reject_unknown_keys(v, {"id", "params", "probes"}, where);
  if (!v.contains("id") || !v["id"].is_string()) throw ConfigError(where + ": missing string 'id'");
  FixtureSpec spec;
  spec.id = v["id"].get<std::string>();
  if (v.contains("params")) {
    if (!v["params"].is_object()) throw ConfigError(where + ": 'params' must be an object");
    for (const auto& [key, value] : v["params"].items()) {
      if (value.is_number())
        spec.params[key] = value.get<double>();
      else if (value.is_string())
        spec.params[key] = value.get<std::string>();
      else
        throw ConfigError(where + ": parameter '" + key + "' must be a number or a string");
    }
  }
  if (v.contains("probes")) {
    if (!v["probes"].is_array()) throw ConfigError(where + ": 'probes' must be an array");
    std::vector<Vector> probes;
    for (const auto& p : v["probes"]) probes.push_back(parse_point(p, where));
    spec.probes = std::move(probes);
  }
  return spec;
}

}  // namespace

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suite_table()) out.push_back(name);
    return out;
  }();
  return names;
}

RunConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown_keys(doc, {"fixtures", "suites", "seed", "trials", "tolerances"}, "config");

  RunConfig cfg;
  if (!doc.contains("suites") || !doc["suites"].is_array())
    throw ConfigError("config: 'suites' must be an array of suite ids");
  for (const auto& s : doc["suites"]) {
    if (!s.is_string()) throw ConfigError("config: suite ids must be strings");
    const auto id = s.get<std::string>();
    find_suite(id);
    cfg.suites.push_back(id);
  }

  if (doc.contains("fixtures")) {
    if (!doc["fixtures"].is_array()) throw ConfigError("config: 'fixtures' must be an array");
    for (std::size_t i = 0; i < doc["fixtures"].size(); ++i)
      cfg.fixtures.push_back(parse_fixture(doc["fixtures"][i], i));
  }

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned())
      throw ConfigError("config: 'seed' must be a non-negative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }

  if (doc.contains("trials")) {
    if (!doc["trials"].is_number_integer() || doc["trials"].get<long long>() < 1)
      throw ConfigError("config: 'trials' must be an integer >= 1");
    cfg.trials = doc["trials"].get<int>();
  }

  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    if (!t.is_object()) throw ConfigError("config: 'tolerances' must be an object");
    reject_unknown_keys(t, {"rel_algebra", "rel_geometry", "floor", "strict_algebra"},
                        "tolerances");
    if (t.contains("rel_algebra"))
      cfg.tol.base.rel_algebra = positive_number(t["rel_algebra"], "tolerances.rel_algebra");
    if (t.contains("rel_geometry"))
      cfg.tol.base.rel_geometry = positive_number(t["rel_geometry"], "tolerances.rel_geometry");
    if (t.contains("floor")) cfg.tol.base.floor = positive_number(t["floor"], "tolerances.floor");
    if (t.contains("strict_algebra"))
      cfg.tol.strict_algebra = positive_number(t["strict_algebra"], "tolerances.strict_algebra");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const RunConfig& config,
                           const char* env_value) {
  if (flag) return *flag;
  if (config.seed) return *config.seed;
  if (env_value && *env_value) {
    const std::string s(env_value);
    if (s.find_first_not_of("0123456789") != std::string::npos)
      throw ConfigError("CURVCOMPAT_SEED must be a non-negative integer");
    try {
      return std::stoull(s);
    } catch (const std::out_of_range&) {
      throw ConfigError("CURVCOMPAT_SEED is out of range");
    }
  }
  return 42;
}

RunResult run(const RunConfig& config, std::uint64_t seed, std::optional<std::string> only_suite) {
  std::vector<SuiteFn> suites;
  if (only_suite) {
    find_suite(*only_suite);
    if (std::find(config.suites.begin(), config.suites.end(), *only_suite) != config.suites.end())
      suites.push_back(find_suite(*only_suite));
  } else {
    for (const auto& id : config.suites) suites.push_back(find_suite(id));
  }

  std::vector<Fixture> fixtures;
  for (const auto& spec : config.fixtures) {
    Fixture f = get_fixture(spec.id, spec.params);
    if (spec.probes) set_probes(f, *spec.probes);
    fixtures.push_back(std::move(f));
  }

  RunResult result;
  detail::SuiteContext ctx(config, seed, fixtures, result.reports);
  for (SuiteFn fn : suites) fn(ctx);
  result.exit_code = std::all_of(result.reports.begin(), result.reports.end(),
                                 [](const CheckReport& r) { return r.ok(); })
                         ? 0
                         : 1;
  return result;
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_json_line(const CheckReport& r, bool include_elapsed) {
  std::string out = "{\"check_id\":" + json(r.check_id).dump();
  out += ",\"paper_anchor\":" + json(r.paper_anchor).dump();
  out += ",\"fixture_id\":" + json(r.fixture_id).dump();
  out += ",\"point\":";
  if (r.point) {
    out += '[';
    for (std::size_t i = 0; i < r.point->size(); ++i) {
      if (i) out += ',';
      out += format_number((*r.point)[i]);
    }
    out += ']';
  } else {
    out += "null";
  }
  out += ",\"residual\":" + format_number(r.residual);
  out += ",\"tolerance\":" + format_number(r.tolerance);
  out += std::string(",\"pass\":") + (r.pass ? "true" : "false");
  if (include_elapsed) out += ",\"elapsed_ms\":" + format_number(r.elapsed_ms);
  out += std::string(",\"expected_fail\":") + (r.expected_fail ? "true" : "false");
  out += '}';
  return out;
}

}  // namespace curvcompat::cli
