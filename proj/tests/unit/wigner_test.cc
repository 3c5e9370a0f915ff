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
#include <sstream>
#include <string>

#include "cvq/errors.h"
#include "cvq/gaussian.h"
#include "cvq/wigner.h"
#include "oracle/fock_oracle.h"

namespace cvq {
namespace {

constexpr double kPi = std::numbers::pi;

void expect_distribution_near(const PhotonNumberDistribution &d, const std::vector<double> &ref, double tol) {
  const std::size_t n = std::min(d.probs.size(), ref.size());
  for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(d.probs[k], ref[k], tol) << "n=" << k;
}

TEST(Wigner, GaussianPeakAndNorm) {
  const GaussianState s = tensor({squeezed_vacuum(0.5, 0.3), coherent_state(1.0, 0.0)});
  const WignerExpr w = from_gaussian(s);
  EXPECT_TRUE(w.is_gaussian());
  EXPECT_NEAR(w.norm(), 1.0, 1e-13);
  const double peak = 1.0 / (kPi * kPi * std::sqrt(s.cov().determinant()));
  EXPECT_NEAR(w.evaluate(s.mean()), peak, 1e-13);
}

TEST(Wigner, FockStatesAtOrigin) {
  const double origin[2] = {0.0, 0.0};
  for (int n = 0; n <= 5; ++n) {
    const WignerExpr w = fock_wigner(n);
    EXPECT_NEAR(w.evaluate(origin), (n % 2 ? -1.0 : 1.0) / kPi, 1e-13);
    EXPECT_NEAR(w.norm(), 1.0, 1e-12);
    EXPECT_NEAR(purity(w), 1.0, 1e-10);
    const PhotonNumberDistribution d = photon_number_distribution(w, ModeIndex(1), 10);
    for (int k = 0; k <= 10; ++k) EXPECT_NEAR(d.probs[k], k == n ? 1.0 : 0.0, 1e-11);
  }
}

TEST(Wigner, ThermalDistributionIsGeometric) {
  const WignerExpr w = from_gaussian(thermal_state(0.8));
  const PhotonNumberDistribution d = photon_number_distribution(w, ModeIndex(1), 20);
  for (int n = 0; n <= 20; ++n) EXPECT_NEAR(d.probs[n], std::pow(0.8, n) / std::pow(1.8, n + 1), 1e-12);
  EXPECT_NEAR(purity(w), 1.0 / 2.6, 1e-12);
}

TEST(Wigner, DisplacedSqueezedMatchesOracle) {
  const double r = 0.5, th = 0.6, a = 1.4, ta = 0.2;
  const WignerExpr w = from_gaussian(propagate(squeezed_vacuum(r, th), make_displacement(a, ta)));
  const oracle::Ket ket = oracle::displacement(a, ta) * oracle::squeezed_vacuum_ket(r, th);
  const auto ref = oracle::Ensemble::pure(ket).distribution(1);
  expect_distribution_near(photon_number_distribution(w, ModeIndex(1), 30), ref, 1e-10);
}

TEST(Wigner, FockThroughInterferometerMatchesOracle) {
  const WignerExpr w = apply_symplectic(tensor({fock_wigner(2), fock_wigner(1)}), make_mzi(0.8));
  oracle::Ensemble e = oracle::Ensemble::pure(oracle::fock_ket(2)).tensor(oracle::Ensemble::pure(oracle::fock_ket(1)));
  e.apply_passive(oracle::mzi(0.8), 1, 2);
  for (int m = 1; m <= 2; ++m) {
    expect_distribution_near(photon_number_distribution(w, ModeIndex(m), 6), e.distribution(m), 1e-11);
  }
}

TEST(Wigner, MarginalOfTwoModeSqueezedIsThermal) {
  const double r = 0.6;
  const WignerExpr w = from_gaussian(propagate(vacuum_state(2), make_two_mode_squeezer(r, 0.0)));
  const WignerExpr one = marginalize(w, ModeIndex(1));
  EXPECT_EQ(one.modes(), 1);
  const double nbar = std::pow(std::sinh(r), 2);
  EXPECT_NEAR(photon_number_distribution(one, ModeIndex(1), 40).mean(), nbar, 1e-9);
  EXPECT_NEAR(purity(one), 1.0 / (2 * nbar + 1), 1e-10);
}

TEST(Wigner, FockProjectionAfterBeamSplitter) {
  const WignerExpr w = apply_symplectic(tensor({fock_wigner(1), fock_wigner(0)}), make_beam_splitter(0.3));
  const Projection none = project_fock(w, ModeIndex(2), 0);
  EXPECT_NEAR(none.probability, 0.3, 1e-12);
  ASSERT_TRUE(none.state.has_value());
  EXPECT_EQ(none.state->modes(), 1);
  EXPECT_NEAR(photon_number_distribution(*none.state, ModeIndex(1), 4).probs[1], 1.0, 1e-11);
  const Projection click = project_click(w, ModeIndex(2));
  EXPECT_NEAR(click.probability, 0.7, 1e-12);
  EXPECT_NEAR(vacuum_probability(w, ModeIndex(2)), 0.3, 1e-12);
}

TEST(Wigner, ImprobableProjection) {
  const WignerExpr vac = fock_wigner(0);
  EXPECT_THROW(project_fock(vac, ModeIndex(1), 3), ImprobableBranch);
  const Projection p = project_fock(vac, ModeIndex(1), 3, true);
  EXPECT_FALSE(p.state.has_value());
  EXPECT_NEAR(p.probability, 0.0, 1e-14);
}

TEST(Wigner, ChannelsAgreeWithGaussianPath) {
  const GaussianState g = propagate(tensor({coherent_state(1.5, 0.0), squeezed_vacuum(0.7, 0.0)}), make_mzi(1.3));
  const GaussianState gl = inject_thermal(apply_loss(g, LossSpec{0.1, 0.9}), ModeIndex(2), 0.5, 0.8);
  const WignerExpr wl = inject_thermal(apply_loss(from_gaussian(g), LossSpec{0.1, 0.9}), ModeIndex(2), 0.5, 0.8);
  const WignerExpr ref = from_gaussian(gl);
  for (int m = 1; m <= 2; ++m) {
    const auto a = photon_number_distribution(wl, ModeIndex(m), 15);
    const auto b = photon_number_distribution(ref, ModeIndex(m), 15);
    for (int n = 0; n <= 15; ++n) EXPECT_NEAR(a.probs[n], b.probs[n], 1e-12);
  }
}

TEST(Wigner, GeneratingFunction) {
  const WignerExpr one = fock_wigner(1);
  for (double l : {-0.5, 0.0, 0.3, 0.9}) EXPECT_NEAR(generating_function(one, ModeIndex(1), l), l, 1e-12);
  // coherent: exp(|alpha|^2 (l - 1))
  const WignerExpr c = from_gaussian(coherent_state(1.2, 0.4));
  const std::complex<double> l(0.2, 0.3);
  const std::complex<double> g = generating_function(c, ModeIndex(1), l);
  const std::complex<double> ref = std::exp(1.44 * (l - 1.0));
  EXPECT_NEAR(std::abs(g - ref), 0.0, 1e-12);
}

TEST(Wigner, MixtureIsLessPure) {
  const WignerExpr mix = add(fock_wigner(0).scaled(0.5), fock_wigner(1).scaled(0.5));
  EXPECT_NEAR(mix.norm(), 1.0, 1e-12);
  EXPECT_NEAR(purity(mix), 0.5, 1e-10);
  EXPECT_NEAR(overlap_integral(fock_wigner(0), fock_wigner(1)), 0.0, 1e-12);
}

TEST(Wigner, GridCsv) {
  std::ostringstream out;
  write_grid_csv(fock_wigner(1), ModeIndex(1), -2, 2, 5, -1, 1, 3, out);
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("x,p,W\n", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 15);
  EXPECT_NE(text.find("0,0,-0.31830988618379"), std::string::npos);
  std::ostringstream bad;
  EXPECT_THROW(write_grid_csv(fock_wigner(1), ModeIndex(1), -2, 2, 1, -1, 1, 3, bad), DomainError);
}

}  // namespace
}  // namespace cvq
