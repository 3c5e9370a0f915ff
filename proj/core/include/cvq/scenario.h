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

#ifndef CVQ_SCENARIO_H_
#define CVQ_SCENARIO_H_

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cvq/estimation.h"
#include "cvq/scenario_config.h"

namespace cvq {

// Builds the optical chain of a scenario: inputs, input-stage modifications (cached, they do not
// depend on phi), interferometer, internal loss and thermal injection, output-stage modifications,
// detector efficiency.
class Pipeline {
 public:
  explicit Pipeline(const ScenarioConfig &config);

  struct Branch {
    double probability = 0.0;
    std::optional<WignerExpr> state;  // empty when the branch is improbable
    bool success = true;              // every herald on the path succeeded
  };

  bool gaussian() const { return gaussian_; }
  const ScenarioConfig &config() const { return config_; }

  GaussianState gaussian_at(double phi) const;
  // All herald outcome combinations, success chain first. Without failures only that chain is built.
  std::vector<Branch> branches_at(double phi, bool with_failures) const;
  // The post-selected state; throws ImprobableBranch.
  WignerExpr success_at(double phi) const;
  double success_probability(double phi) const;
  MeasurementMoments measure_at(double phi, const DetectionScheme &scheme) const;
  double input_mean_photons() const;

 private:
  std::vector<Branch> output_stage(const Branch &in, double phi, bool with_failures) const;

  ScenarioConfig config_;
  bool gaussian_ = true;
  std::optional<GaussianState> gaussian_input_;
  std::vector<Branch> input_success_;
  std::vector<Branch> input_all_;
};

struct PointResult {
  std::size_t index = 0;
  std::optional<double> value;  // sweep parameter value
  EstimationReport report;
  double herald_probability = 1.0;
  std::vector<std::pair<int, PhotonNumberDistribution>> distributions;
  bool ok = true;
};

struct DriftTrace {
  std::string scheme;
  double phi_opt = 0.0;
  double variance_at_opt = 0.0;
  double sigma = 0.0;
  std::vector<double> running_mean;
  int skipped = 0;
};

struct CountsRow {
  std::size_t index = 0;
  std::optional<double> value;
  double p_success = 0.0;
  double expected_kept = 0.0;
  std::int64_t kept = 0;
  std::optional<double> sample_mean;
  std::optional<double> sample_snr;
  std::optional<double> theory_mean;
  std::optional<double> theory_snr;
  bool flagged = false;
  std::string note;
};

enum class RunKind { kRun, kSweep, kDrift, kCounts };

struct RunReport {
  RunKind kind = RunKind::kRun;
  std::string version;
  std::uint64_t seed = 0;
  nlohmann::json config;
  std::optional<std::string> parameter;
  std::vector<PointResult> points;
  std::vector<DriftTrace> drift;
  std::vector<CountsRow> counts;
  std::vector<std::string> warnings;
};

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the config seed
  unsigned threads = 0;               // 0: CVQ_THREADS or hardware concurrency
};

inline constexpr const char *kThreadsEnv = "CVQ_THREADS";

unsigned resolve_threads(unsigned requested);
std::string scheme_key(const DetectionScheme &scheme);
std::string version_string();

PointResult evaluate_point(const ScenarioConfig &config);
// Minimises the error-propagation phase variance of one scheme over phi in (0, 2 pi).
Minimum optimal_phase(const Pipeline &pipeline, const DetectionScheme &scheme);

RunReport run(const ScenarioConfig &config, const RunOptions &options);
RunReport sweep(const ScenarioConfig &config, const GridSpec &grid, const RunOptions &options);
RunReport phase_drift_study(const ScenarioConfig &config, const RunOptions &options);
RunReport simulate_counts(const ScenarioConfig &config, const std::optional<GridSpec> &grid,
                          const RunOptions &options);

}  // namespace cvq

#endif  // CVQ_SCENARIO_H_
