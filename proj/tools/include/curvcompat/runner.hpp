#pragma once

// Batch runner: named check suites over fixtures and seeded random ensembles,
// reported as JSON Lines.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "curvcompat/catalog.hpp"
#include "curvcompat/tensor.hpp"

namespace curvcompat::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FixtureSpec {
  std::string id;
  FixtureParams params;
  std::optional<std::vector<Vector>> probes;
};

struct RunTolerances {
  Tolerance base;                // rel_algebra, rel_geometry, floor
  double strict_algebra = 1e-12; // exact constructions on random tensors
};

struct RunConfig {
  std::vector<FixtureSpec> fixtures;
  std::vector<std::string> suites;
  std::optional<std::uint64_t> seed;
  int trials = 100;
  RunTolerances tol;
};

struct CheckReport {
  std::string check_id;
  std::string paper_anchor;
  std::string fixture_id;
  std::optional<Vector> point;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double elapsed_ms = 0.0;
  bool expected_fail = false;

  /// A check is satisfied when it passes, or when it was expected to fail and
  /// does. A non-finite residual is never satisfied.
  bool ok() const { return std::isfinite(residual) && pass != expected_fail; }
};

struct RunResult {
  std::vector<CheckReport> reports;
  int exit_code = 0;  // 0 all ok, 1 some check not ok
};

const std::vector<std::string>& known_suites();

/// Throws ConfigError on malformed JSON, unknown keys or unknown suite ids.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

/// --seed, then the config, then $CURVCOMPAT_SEED, then 42.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const RunConfig& config,
                           const char* env_value);

/// Builds every fixture first (FixtureError propagates), then runs the suites
/// sequentially in config order. `only_suite` restricts the run to one suite.
RunResult run(const RunConfig& config, std::uint64_t seed,
              std::optional<std::string> only_suite = std::nullopt);

/// %.17g, or "null" for non-finite values.
std::string format_number(double v);
/// One JSON object without trailing newline.
std::string to_json_line(const CheckReport& r, bool include_elapsed = true);

}  // namespace curvcompat::cli
