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


#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cvq/closed_forms.h"
#include "cvq/errors.h"
#include "cvq/estimation.h"
#include "cvq/numerics.h"
#include "cvq/rng.h"

namespace cvq {
namespace {

constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

GaussianFamily mzi_family(double a2, double r, double loss = 0.0) {
  return [=](double phi) {
    const GaussianState s =
        propagate(tensor({coherent_state(std::sqrt(a2), 0.0), squeezed_vacuum(r, 0.0)}), make_mzi(phi));
    return loss > 0.0 ? apply_loss(s, LossSpec{loss, 1.0}) : s;
  };
}

TEST(Estimation, Limits) {
  EXPECT_DOUBLE_EQ(snl(50.0), 0.02);
  EXPECT_DOUBLE_EQ(hl(50.0), 0.0004);
  EXPECT_THROW(snl(0.0), DomainError);
  EXPECT_THROW(hl(-1.0), DomainError);
}

TEST(Estimation, ErrorPropagationOnLinearSignal) {
  const double v = phase_variance_error_prop([](double x) { return 3.0 * x; }, [](double) { return 2.0; }, 0.4);
  EXPECT_NEAR(v, 2.0 / 9.0, 1e-12);
}

TEST(Estimation, StationarySignalWithNoiseThrows) {
  const GaussianFamily f = [](double phi) {
    return propagate(tensor({coherent_state(2.0, 0.0), vacuum_state(1)}), make_mzi(phi));
  };
  EXPECT_THROW(phase_variance_error_prop(scheme_moments(f, DetectionScheme::intensity(1)), 0.0), SignalStationary);
}

TEST(Estimation, StationaryNoiselessLimitIsFinite) {
  const double a2 = 1.0, r = 0.5;
  const double v = phase_variance_error_prop(scheme_moments(mzi_family(a2, r), DetectionScheme::parity(1)), kPi);
  EXPECT_LT(rel(v, min_variance_parity(a2, r)), 1e-4);
}

TEST(Estimation, HomodyneReachesItsBound) {
  const double a2 = 9.0, r = 0.7;
  const double v = phase_variance_error_prop(scheme_moments(mzi_family(a2, r), DetectionScheme::homodyne(1, 0.0)),
                                             optimal_phase_homodyne() - 1e-3);
  EXPECT_LT(rel(v, min_variance_homodyne(a2, r)), 1e-4);
}

TEST(Estimation, IntensityOptimumMatchesClosedForm) {
  const double a2 = 4.0, r = 0.8;
  const PhiMoments m = scheme_moments(mzi_family(a2, r), DetectionScheme::intensity(1));
  const Minimum best = minimize_on([&](double phi) { return phase_variance_error_prop(m, phi); }, 0.2, kPi - 0.2);
  EXPECT_NEAR(best.x, optimal_phase_intensity(a2, r), 1e-5);
  EXPECT_LT(rel(best.value, min_variance_intensity(a2, r)), 1e-6);
}

TEST(Estimation, BinaryCfi) {
  const BranchSet b = binary_branches([](double phi) { return std::pow(std::cos(phi / 2), 2); });
  for (double phi : {0.5, 1.5, 2.5}) EXPECT_NEAR(cfi(b, phi), 1.0, 1e-9);
  BranchSet bad;
  bad.probabilities = {[](double) { return 0.6; }};
  EXPECT_THROW(cfi(bad, 0.3), DomainError);
  EXPECT_THROW(cfi(binary_branches([](double) { return 1.0; }), 0.3), DegenerateBranch);
}

TEST(Estimation, HeraldInformationOnlyAdds) {
  const PhiScalar p = [](double phi) { return 0.3 + 0.2 * std::sin(phi); };
  const BranchSet s = binary_branches([](double phi) { return std::pow(std::cos(phi / 2), 2); });
  const BranchSet f = binary_branches([](double phi) { return 0.5 + 0.3 * std::cos(phi); });
  for (double phi : {0.4, 1.1}) {
    const double without = probabilistic_cfi(p, s, f, false, phi);
    const double with = probabilistic_cfi(p, s, f, true, phi);
    const double dp = 0.2 * std::cos(phi);
    EXPECT_NEAR(with - without, dp * dp / (p(phi) * (1 - p(phi))), 1e-9);
  }
}

TEST(Estimation, CoherentQfi) {
  const GaussianFamily f = [](double phi) {
    return propagate(tensor({coherent_state(3.0, 0.0), vacuum_state(1)}), make_mzi(phi));
  };
  EXPECT_NEAR(qfi_pure_gaussian(f, 0.8), 9.0, 1e-8);
  EXPECT_NEAR(qfi_mixed_gaussian(f, 0.8), 9.0, 1e-8);
  EXPECT_NEAR(qfi_pure_wigner([&](double phi) { return from_gaussian(f(phi)); }, 0.8), 9.0, 9e-8);
}

TEST(Estimation, MixedQfiRoutesAgreeAndLossHurts) {
  const double a2 = 4.0, r = 0.6;
  const double pure = qfi_pure_gaussian(mzi_family(a2, r), 1.0);
  EXPECT_LT(rel(pure, 1.0 / qcrb_lossless(a2, r)), 1e-8);
  const double mixed = qfi_mixed_gaussian(mzi_family(a2, r, 0.3), 1.0);
  const double real = qfi_mixed_gaussian_real(mzi_family(a2, r, 0.3), 1.0);
  EXPECT_LT(rel(mixed, real), 1e-6);
  EXPECT_LT(mixed, pure);
  EXPECT_THROW(qfi_pure_gaussian(mzi_family(a2, r, 0.3), 1.0), PurityViolation);
}

TEST(Estimation, Snr) {
  MeasurementMoments m = MeasurementMoments::from_moments(4.0, 20.0);
  EXPECT_DOUBLE_EQ(snr(m), 2.0);
  EXPECT_DOUBLE_EQ(snr(m, 2), 1.0);
  EXPECT_THROW(snr(MeasurementMoments::from_moments(1.0, 1.0)), DomainError);
  EXPECT_NEAR(snr(intensity(coherent_state(2.5, 0.0), ModeIndex(1))), 2.5, 1e-12);
}

TEST(Estimation, TotalParityInformationApproachesUnheraldedLimit) {
  const WignerFamily base = [](double phi) {
    return apply_symplectic(from_gaussian(tensor({thermal_state(1.0), vacuum_state(1)})), make_mzi(phi));
  };
  const double plain = parity_information(base, ModeIndex(1), 0.05);
  double last = 1.0;
  for (double t : {0.99, 0.999, 0.9999}) {
    const HeraldedFamily s = [&](double phi) { return subtract_photons(base(phi), ModeIndex(1), 1, t); };
    const HeraldedFamily f = [&](double phi) { return failure_branch(base(phi), ModeIndex(1), 1, t); };
    const double gap = rel(total_parity_information(s, f, ModeIndex(1), 0.05), plain);
    EXPECT_LT(gap, last);
    last = gap;
  }
  EXPECT_LT(last, 1e-3);
}

TEST(ClosedForms, Limits) {
  for (int m = 1; m <= 3; ++m) EXPECT_NEAR(spacs_mean_n(0.0, m, 0.7), m, 1e-14);
  EXPECT_NEAR(spacs_mean_n(2.0, 0, 0.6), 1.2, 1e-14);
  EXPECT_NEAR(thermal_snr(3.0), std::sqrt(0.75), 1e-14);
  EXPECT_NEAR(spsts_snr(3.0, 2, 0.5), std::sqrt(1.5) * thermal_snr(3.0), 1e-14);
  // m = 0 is the zero-count herald; at T = 1 it is the plain output
  EXPECT_NEAR(mzi_sub_prob(2.0, 0, 1.0, 1.0), 1.0, 1e-14);
  EXPECT_NEAR(mzi_sub_mean_n(2.0, 0, 1.0, 1.0), 2.0 * std::pow(std::cos(0.5), 2), 1e-13);
  EXPECT_LT(mzi_sub_mean_n(2.0, 0, 0.9, 1.0), 0.9 * 2.0 * std::pow(std::cos(0.5), 2));
  // the printed lossy expression is an information, equal to the lossless one at L = 0
  EXPECT_NEAR(qcrb_lossy_printed(5.0, 0.5, 0.0) / (5.0 * std::exp(1.0) + std::pow(std::sinh(0.5), 2)), 1.0, 1e-12);
  EXPECT_THROW(spacs_prob(-1.0, 1, 0.5), DomainError);
  EXPECT_THROW(spsts_mean_n(1.0, 1, 1.5), DomainError);
  EXPECT_THROW(optimal_phase_intensity(1.0, 0.0), DomainError);
}

TEST(ClosedForms, ReferenceDispatch) {
  const ReferenceParams p{1.5, 2, 0.8, 0.9};
  EXPECT_DOUBLE_EQ(reference_stats(parse_reference_kind("spacs_mean_n"), p), spacs_mean_n(1.5, 2, 0.8));
  EXPECT_DOUBLE_EQ(reference_stats(parse_reference_kind("spsts_prob"), p), spsts_prob(1.5, 2, 0.8));
  EXPECT_DOUBLE_EQ(reference_stats(parse_reference_kind("mzi_sub_snr"), p), mzi_sub_snr(1.5, 2, 0.8, 0.9));
  EXPECT_THROW(parse_reference_kind("spacs_mean"), DomainError);
}

TEST(Numerics, Stencils) {
  EXPECT_NEAR(derivative5([](double x) { return std::sin(x); }, 0.7, 1e-3), std::cos(0.7), 1e-12);
  EXPECT_NEAR(second_derivative5([](double x) { return std::sin(x); }, 0.7, 1e-3), -std::sin(0.7), 1e-7);
}

TEST(Numerics, Minimisers) {
  auto f = [](double x) { return std::pow(x - 1.3, 2) + 0.5; };
  const Minimum a = minimize_near(f, 1.0, 0.0, 3.0);
  EXPECT_NEAR(a.x, 1.3, 1e-7);
  EXPECT_NEAR(a.value, 0.5, 1e-12);
  const Minimum b = minimize_on([](double x) { return std::cos(x); }, 0.0, 5.0);
  EXPECT_NEAR(b.x, kPi, 1e-7);
}

TEST(Rng, SubstreamsAreKeyed) {
  auto a = make_substream(7, 3);
  auto b = make_substream(7, 3);
  auto c = make_substream(7, 4);
  auto d = make_substream(8, 3);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
}

}  // namespace
}  // namespace cvq
