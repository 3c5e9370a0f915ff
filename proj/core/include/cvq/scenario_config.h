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

#ifndef CVQ_SCENARIO_CONFIG_H_
#define CVQ_SCENARIO_CONFIG_H_

#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cvq/conditional.h"
#include "cvq/gaussian.h"
#include "cvq/measurements.h"

namespace cvq {

inline constexpr int kConfigSchemaVersion = 1;

enum class InputKind { kVacuum, kCoherent, kThermal, kFock };

struct InputSpec {
  InputKind kind = InputKind::kVacuum;
  double alpha = 0.0;  // |alpha|
  double theta = 0.0;
  double n_bar = 0.0;
  int photons = 1;  // Fock inputs
};

enum class ModKind { kSqueeze, kDisplace, kAdd, kSubtract };
enum class Stage { kInput, kOutput };

struct ModificationSpec {
  ModKind kind = ModKind::kSqueeze;
  Stage stage = Stage::kInput;
  int mode = 1;
  double r = 0.0;
  double theta = 0.0;
  double alpha = 0.0;
  AddSubSpec herald;  // add / subtract only
};

struct ThermalInjection {
  int mode = 1;
  double n_env = 0.0;
  double transmissivity = 1.0;
};

enum class DriftMode { kGaussian, kUniform };

struct DriftSpec {
  std::map<std::string, double> sigma;  // per scheme name
  double default_sigma = 0.15;
  double uniform_fraction = 0.2;
  int trials = 1000;
  DriftMode mode = DriftMode::kGaussian;

  double sigma_for(const std::string &scheme) const;
};

struct CountsSpec {
  int trials = 3600;
  int mode = 1;
};

struct GridSpec {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  // Inclusive of stop up to rounding. Throws ConfigError for an empty grid.
  std::vector<double> values() const;
  static GridSpec parse(const std::string &text);  // "param=start:stop:step"
};

enum class Engine { kAuto, kGaussian, kWigner };

struct ScenarioConfig {
  std::string name = "scenario";
  std::vector<InputSpec> inputs;
  std::vector<ModificationSpec> modifications;
  bool interferometer = true;
  double phi = 0.0;
  LossSpec loss;
  std::vector<ThermalInjection> thermal;
  DriftSpec drift;
  CountsSpec counts;
  std::vector<DetectionScheme> detection;
  std::vector<std::string> metrics;
  bool optimize = false;
  std::optional<GridSpec> grid;
  Engine engine = Engine::kAuto;
  int photon_cutoff = 40;
  std::uint64_t seed = 0;

  bool wants(const std::string &metric) const;
  int modes() const { return static_cast<int>(inputs.size()); }
  bool gaussian_only() const;
  int photons_added() const;
};

inline const std::vector<std::string> &sweep_parameters() {
  static const std::vector<std::string> kParams = {"phi", "alpha2", "r", "T", "L", "D", "n_bar", "n_env", "m"};
  return kParams;
}

// Strict parsing: unknown keys and invalid combinations raise ConfigError with a field path.
ScenarioConfig parse_config(const nlohmann::json &j);
// Reads JSON, or a key tree of `a.b.0.c = value` lines with optional [section] headers.
ScenarioConfig load_config(const std::string &path);
nlohmann::json parse_key_tree(const std::string &text);
nlohmann::json to_json(const ScenarioConfig &config);

void validate(const ScenarioConfig &config);
// Applies one sweep parameter value and revalidates.
ScenarioConfig with_parameter(const ScenarioConfig &config, const std::string &parameter, double value);

}  // namespace cvq

#endif  // CVQ_SCENARIO_CONFIG_H_
