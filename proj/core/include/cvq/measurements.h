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

#ifndef CVQ_MEASUREMENTS_H_
#define CVQ_MEASUREMENTS_H_

#include <optional>
#include <string>

#include "cvq/gaussian.h"
#include "cvq/wigner.h"

namespace cvq {

struct MeasurementMoments {
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;

  // Clamps variance residue in [-1e-10, 0) to zero; more negative values throw.
  static MeasurementMoments from_moments(double mean, double second_moment);
};

enum class DetectionKind { kIntensity, kHomodyne, kParity, kIntensityDifference, kClick };

struct DetectionScheme {
  DetectionKind kind = DetectionKind::kIntensity;
  ModeIndex mode{1};
  std::optional<ModeIndex> second_mode;  // intensity difference only
  double angle = 0.0;                    // homodyne only

  static DetectionScheme intensity(int mode = 1);
  static DetectionScheme homodyne(int mode = 1, double angle = 0.0);
  static DetectionScheme parity(int mode = 1);
  static DetectionScheme intensity_difference(int mode_a = 1, int mode_b = 2);
  static DetectionScheme click(int mode = 1);

  void validate(int modes) const;
  std::string name() const;
};

MeasurementMoments intensity(const GaussianState &state, ModeIndex mode);
MeasurementMoments intensity(const WignerExpr &expr, ModeIndex mode);

MeasurementMoments homodyne(const GaussianState &state, ModeIndex mode, double theta);
MeasurementMoments homodyne(const WignerExpr &expr, ModeIndex mode, double theta);

MeasurementMoments parity(const GaussianState &state, ModeIndex mode);
MeasurementMoments parity(const WignerExpr &expr, ModeIndex mode);

MeasurementMoments intensity_difference(const GaussianState &state, ModeIndex mode_a, ModeIndex mode_b);
MeasurementMoments intensity_difference(const WignerExpr &expr, ModeIndex mode_a, ModeIndex mode_b);

double click_probability(const GaussianState &state, ModeIndex mode);
double click_probability(const WignerExpr &expr, ModeIndex mode);

// Dispatch by scheme. Click returns the Bernoulli moments of the click indicator.
MeasurementMoments measure(const GaussianState &state, const DetectionScheme &scheme);
MeasurementMoments measure(const WignerExpr &expr, const DetectionScheme &scheme);

}  // namespace cvq

#endif  // CVQ_MEASUREMENTS_H_
