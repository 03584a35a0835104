#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "curvcompat/catalog.hpp"
#include "curvcompat/local_geometry.hpp"
#include "curvcompat/random.hpp"
#include "curvcompat/runner.hpp"

namespace curvcompat::cli::detail {

class SuiteContext {
 public:
  SuiteContext(const RunConfig& config, std::uint64_t seed, const std::vector<Fixture>& fixtures,
               std::vector<CheckReport>& reports)
      : config_(config), seed_(seed), fixtures_(fixtures), reports_(reports) {}

  const RunConfig& config() const { return config_; }
  const Tolerance& tol() const { return config_.tol.base; }
  double strict() const { return config_.tol.strict_algebra; }
  int trials() const { return config_.trials; }
  const std::vector<Fixture>& fixtures() const { return fixtures_; }

  /// Seed stream for one trial of one named check.
  RandomSpec spec(std::string_view salt, int trial) const;

  /// Order-4 geometry at probe `p` of fixture `f`, built on first use.
  const LocalGeometry& geometry(std::size_t f, std::size_t p);

  /// Runs `residual` and appends a report. Exceptions yield a NaN residual and
  /// a message on stderr.
  void check(std::string check_id, std::string anchor, std::string fixture_id,
             std::optional<Vector> point, double tolerance,
             const std::function<double()>& residual, bool expected_fail = false);

  /// Like check(), for a residual that also picks the reported point.
  void check_at(std::string check_id, std::string anchor, std::string fixture_id,
                double tolerance,
                const std::function<std::pair<double, std::optional<Vector>>()>& residual,
                bool expected_fail = false);

 private:
  const RunConfig& config_;
  std::uint64_t seed_;
  const std::vector<Fixture>& fixtures_;
  std::vector<CheckReport>& reports_;
  std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<LocalGeometry>> geometries_;
};

void algebra_core(SuiteContext& ctx);
void jordan_closure(SuiteContext& ctx);
void derdzinski_shen(SuiteContext& ctx);
void lovelock(SuiteContext& ctx);
void weyl_identities(SuiteContext& ctx);
void maps(SuiteContext& ctx);
void catalog_sanity(SuiteContext& ctx);
void constant_curvature(SuiteContext& ctx);

}  // namespace curvcompat::cli::detail
