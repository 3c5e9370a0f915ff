// Copyright 2026 The cvq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// cvq: run, sweep, drift, counts and validate scenario files.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "cvq/errors.h"
#include "cvq/report.h"
#include "cvq/scenario.h"
#include "cvq/scenario_config.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "cvq_out";
  std::string format = "csv";
  unsigned threads = 0;
  std::optional<std::string> grid;
};

void add_common(CLI::App *cmd, Common &c, bool with_grid) {
  cmd->add_option("--config", c.config, "Scenario file (JSON or key tree)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "Override the configured seed");
  cmd->add_option("--out", c.out, "Output directory");
  cmd->add_option("--format", c.format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
  cmd->add_option("--threads", c.threads, "Worker threads (default: $CVQ_THREADS or all cores)");
  if (with_grid) cmd->add_option("--grid", c.grid, "Sweep grid as param=start:stop:step");
}

cvq::RunOptions options_of(const Common &c) {
  cvq::RunOptions o;
  o.seed = c.seed;
  o.threads = c.threads;
  return o;
}

int finish(const cvq::RunReport &report, const Common &c) {
  const auto files = cvq::emit(report, c.out, cvq::parse_output_format(c.format));
  for (const auto &w : report.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto &f : files) std::cout << f.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Continuous-variable interferometry scenarios"};
  app.set_version_flag("--version", cvq::version_string());
  app.require_subcommand(1);

  Common run_opts, sweep_opts, drift_opts, counts_opts;
  std::string validate_path;
  auto *run_cmd = app.add_subcommand("run", "Evaluate a scenario at its configured phase");
  add_common(run_cmd, run_opts, false);
  auto *sweep_cmd = app.add_subcommand("sweep", "Evaluate a scenario over a parameter grid");
  add_common(sweep_cmd, sweep_opts, true);
  auto *drift_cmd = app.add_subcommand("drift", "Monte Carlo phase drift around each optimum");
  add_common(drift_cmd, drift_opts, false);
  auto *counts_cmd = app.add_subcommand("counts", "Simulate post-selected photon counts");
  add_common(counts_cmd, counts_opts, true);
  auto *validate_cmd = app.add_subcommand("validate", "Check a scenario file and print the resolved config");
  validate_cmd->add_option("--config", validate_path, "Scenario file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*validate_cmd) {
      const cvq::ScenarioConfig config = cvq::load_config(validate_path);
      cvq::validate(config);
      std::cout << cvq::to_json(config).dump(2) << '\n';
      return 0;
    }
    if (*run_cmd) return finish(cvq::run(cvq::load_config(run_opts.config), options_of(run_opts)), run_opts);
    if (*sweep_cmd) {
      const cvq::ScenarioConfig config = cvq::load_config(sweep_opts.config);
      std::optional<cvq::GridSpec> grid = config.grid;
      if (sweep_opts.grid) grid = cvq::GridSpec::parse(*sweep_opts.grid);
      if (!grid) throw cvq::ConfigError("sweep", "no grid: pass --grid or add a sweep section");
      return finish(cvq::sweep(config, *grid, options_of(sweep_opts)), sweep_opts);
    }
    if (*drift_cmd) {
      return finish(cvq::phase_drift_study(cvq::load_config(drift_opts.config), options_of(drift_opts)),
                    drift_opts);
    }
    if (*counts_cmd) {
      std::optional<cvq::GridSpec> grid;
      if (counts_opts.grid) grid = cvq::GridSpec::parse(*counts_opts.grid);
      return finish(cvq::simulate_counts(cvq::load_config(counts_opts.config), grid, options_of(counts_opts)),
                    counts_opts);
    }
  } catch (const cvq::ConfigError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const cvq::DomainError &e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const cvq::NumericalError &e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
