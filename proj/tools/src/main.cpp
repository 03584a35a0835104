#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "curvcompat/errors.hpp"
#include "curvcompat/runner.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitFixture = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace curvcompat;

  CLI::App app{"Curvature compatibility checks over metric fixtures and random ensembles"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> filter;

  auto* run_cmd = app.add_subcommand("run", "Run the suites of a config and write a JSONL report");
  run_cmd->add_option("--config", config_path, "Config JSON document")->required();
  run_cmd->add_option("--out", out_path, "Report path (JSON Lines)")->required();
  run_cmd->add_option("--seed", seed, "Seed, overriding the config and CURVCOMPAT_SEED");
  run_cmd->add_option("--filter", filter, "Run only this suite id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const cli::RunConfig config = cli::load_config(config_path);
    const std::uint64_t s = cli::resolve_seed(seed, config, std::getenv("CURVCOMPAT_SEED"));
    const cli::RunResult result = cli::run(config, s, filter);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "curvcompat: cannot write '" << out_path << "'\n";
      return kExitConfig;
    }
    std::size_t failed = 0;
    for (const auto& r : result.reports) {
      out << cli::to_json_line(r) << '\n';
      if (!r.ok()) {
        ++failed;
        std::cerr << "FAIL " << r.check_id << " [" << r.fixture_id
                  << "] residual=" << cli::format_number(r.residual)
                  << " tolerance=" << cli::format_number(r.tolerance) << '\n';
      }
    }
    std::cout << result.reports.size() << " checks, " << failed << " failed, seed " << s << '\n';
    return result.exit_code;
  } catch (const cli::ConfigError& e) {
    std::cerr << "curvcompat: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const FixtureError& e) {
    std::cerr << "curvcompat: fixture error: " << e.what() << '\n';
    return kExitFixture;
  }
}
