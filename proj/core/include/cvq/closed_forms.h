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

#ifndef CVQ_CLOSED_FORMS_H_
#define CVQ_CLOSED_FORMS_H_

#include <string>

namespace cvq {

// Thermal inputs are parameterised by the true mean photon number n_bar.
// Heralded addition acts on a coherent state with |alpha|^2 = a2.

double spacs_mean_n(double a2, int m, double transmissivity);
double spacs_second_moment(double a2, int m, double transmissivity);
double spacs_prob(double a2, int m, double transmissivity);
double spacs_snr(double a2, int m, double transmissivity);

double spsts_mean_n(double n_bar, int m, double transmissivity);
double spsts_prob(double n_bar, int m, double transmissivity);
double spsts_snr(double n_bar, int m, double transmissivity);
double thermal_snr(double n_bar);

// Thermal state and vacuum through the interferometer, then subtraction on output mode 1.
// The mode-1 thermal mean is n_bar * cos^2(phi/2). m = 0 is the zero-count herald, the plain output at T = 1.
double mzi_sub_prob(double n_bar, int m, double transmissivity, double phi);
double mzi_sub_prob_click(double n_bar, double transmissivity, double phi);
double mzi_sub_mean_n(double n_bar, int m, double transmissivity, double phi);
double mzi_sub_mean_n_click(double n_bar, double transmissivity, double phi);
double mzi_sub_snr(double n_bar, int m, double transmissivity, double phi);

enum class ReferenceKind {
  kSpacsMeanN,
  kSpacsSecondMoment,
  kSpacsProb,
  kSpacsSnr,
  kSpstsMeanN,
  kSpstsProb,
  kSpstsSnr,
  kMziSubProb,
  kMziSubProbClick,
  kMziSubMeanN,
  kMziSubMeanNClick,
  kMziSubSnr,
};

struct ReferenceParams {
  double intensity = 0.0;  // |alpha|^2 or n_bar
  int m = 1;
  double transmissivity = 1.0;
  double phi = 0.0;
};

double reference_stats(ReferenceKind kind, const ReferenceParams &p);
ReferenceKind parse_reference_kind(const std::string &name);

// Coherent state |alpha|^2 = a2 and squeezed vacuum r through the interferometer.
double qcrb_lossless(double a2, double r);
// The lossy expression with A = 1-L, B = sinh r, C = cosh r, transcribed as printed. It evaluates to a
// Fisher information (lossless limit |alpha|^2 e^{2r} + sinh^2 r), not to its inverse.
double qcrb_lossy_printed(double a2, double r, double loss);
double min_variance_parity(double a2, double r);
double min_variance_homodyne(double a2, double r);
double min_variance_intensity_difference(double a2, double r);
double min_variance_intensity(double a2, double r);

double optimal_phase_parity();
double optimal_phase_homodyne();
double optimal_phase_intensity_difference();
double optimal_phase_intensity(double a2, double r);

}  // namespace cvq

#endif  // CVQ_CLOSED_FORMS_H_
