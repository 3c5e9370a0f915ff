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

#ifndef CVQ_GAUSSIAN_H_
#define CVQ_GAUSSIAN_H_

#include <span>
#include <vector>

#include "cvq/phase_space.h"

namespace cvq {

class GaussianState {
 public:
  GaussianState(QuadratureVector mean, CovarianceMatrix cov);
  GaussianState(const Vector &mean, const Matrix &cov);

  int modes() const { return mean_.modes(); }
  const Vector &mean() const { return mean_.values(); }
  const Matrix &cov() const { return cov_.values(); }

  // Reduced state on the listed modes, in listed order.
  GaussianState reduce(std::span<const ModeIndex> keep) const;
  GaussianState reduce(ModeIndex keep) const;
  // 1/sqrt(det sigma).
  double purity() const;

 private:
  QuadratureVector mean_;
  CovarianceMatrix cov_;
};

// Combined efficiency D(1-L); loss is applied uniformly to every mode.
struct LossSpec {
  double internal_loss = 0.0;
  double detector_efficiency = 1.0;

  void validate() const;
  double total_loss() const { return 1.0 - detector_efficiency * (1.0 - internal_loss); }
};

GaussianState vacuum_state(int modes);
GaussianState coherent_state(double abs_alpha, double theta);
// n_bar is the true mean photon number: cov = (2 n_bar + 1) I.
GaussianState thermal_state(double n_bar);
GaussianState squeezed_vacuum(double r, double theta);

GaussianState tensor(std::span<const GaussianState> states);
GaussianState tensor(std::initializer_list<GaussianState> states);

GaussianState propagate(const GaussianState &state, const SymplecticTransform &f);

GaussianState apply_loss(const GaussianState &state, const LossSpec &spec);
GaussianState apply_loss_explicit(const GaussianState &state, ModeIndex mode, double transmissivity);
GaussianState inject_thermal(const GaussianState &state, ModeIndex mode, double n_env,
                             double transmissivity);

double mean_photon(const GaussianState &state, ModeIndex mode);
double total_mean_photon(const GaussianState &state);

}  // namespace cvq

#endif  // CVQ_GAUSSIAN_H_
