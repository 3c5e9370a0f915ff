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

#ifndef CVQ_ESTIMATION_H_
#define CVQ_ESTIMATION_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cvq/conditional.h"
#include "cvq/gaussian.h"
#include "cvq/measurements.h"
#include "cvq/numerics.h"
#include "cvq/wigner.h"

namespace cvq {

using PhiScalar = std::function<double(double)>;
using PhiMoments = std::function<MeasurementMoments(double)>;
using GaussianFamily = std::function<GaussianState(double)>;
using WignerFamily = std::function<WignerExpr(double)>;
using HeraldedFamily = std::function<HeraldedState(double)>;

double snl(double n_total);
double hl(double n_total);

// variance / slope^2 with a five-point slope. At a stationary point where the variance also
// vanishes, the ratio is replaced by its limit V''/(2 m''^2); otherwise SignalStationary is thrown.
double phase_variance_error_prop(const PhiScalar &mean, const PhiScalar &variance, double phi,
                                 double h = kDefaultStep);
double phase_variance_error_prop(const PhiMoments &moments, double phi, double h = kDefaultStep);

PhiMoments scheme_moments(const GaussianFamily &family, const DetectionScheme &scheme);
PhiMoments scheme_moments(const WignerFamily &family, const DetectionScheme &scheme);

struct BranchSet {
  std::vector<PhiScalar> probabilities;
  bool complete = true;
};

// Two-outcome set {P, 1 - P}.
BranchSet binary_branches(PhiScalar p);

double cfi(const BranchSet &branches, double phi, double h = kDefaultStep);
double probabilistic_cfi(const PhiScalar &success_probability, const BranchSet &success,
                         const BranchSet &failure, bool include_herald, double phi, double h = kDefaultStep);

double qfi_pure_wigner(const WignerFamily &family, double phi);
double qfi_pure_gaussian(const GaussianFamily &family, double phi, double h = kDefaultStep);
// Complex-basis solution; falls back to the pure form for pure states.
double qfi_mixed_gaussian(const GaussianFamily &family, double phi, double h = kDefaultStep);
// The same equation solved directly in the real quadrature basis.
double qfi_mixed_gaussian_real(const GaussianFamily &family, double phi, double h = kDefaultStep);

double snr(const MeasurementMoments &moments, int subtract_injected = 0);

// Sum over branches of P_b * (d<Pi>_b/dphi)^2 / (1 - <Pi>_b^2), parity read on `mode`.
double total_parity_information(const HeraldedFamily &success, const HeraldedFamily &failure, ModeIndex mode,
                                double phi, double h = kDefaultStep);
double parity_information(const WignerFamily &family, ModeIndex mode, double phi, double h = kDefaultStep);

// Click detection on both outputs after a click-heralded subtraction applied to `family`,
// plus the information carried by the herald itself.
double total_click_cfi(const WignerFamily &family, const AddSubSpec &spec, double phi, double h = kDefaultStep);

struct SchemeEstimate {
  std::string scheme;
  std::optional<double> mean;                 // observable expectation at phi
  std::optional<double> observable_variance;  // observable variance at phi
  std::optional<double> variance;  // empty when the signal is stationary at phi
  std::optional<double> optimal_phi;
  std::optional<double> optimal_variance;
  std::optional<double> snr;
  std::string note;
};

struct EstimationReport {
  double phi = 0.0;
  double mean_photons = 0.0;
  std::vector<SchemeEstimate> schemes;
  std::optional<double> cfi;
  std::optional<double> qfi;
  std::optional<double> qcrb;
  std::optional<double> snl;
  std::optional<double> hl;
  std::vector<std::string> warnings;
};

}  // namespace cvq

#endif  // CVQ_ESTIMATION_H_
