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

#ifndef CVQ_WIGNER_H_
#define CVQ_WIGNER_H_

#include <complex>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "cvq/gaussian.h"
#include "cvq/phase_space.h"
#include "cvq/polynomial.h"

namespace cvq {

inline constexpr int kFockCutoff = 64;
inline constexpr int kDefaultPhotonCutoff = 40;
inline constexpr double kImprobableThreshold = 1e-14;

// weight * poly(X) * exp(-(X - mean)^T quad^{-1} (X - mean))
struct WignerTerm {
  double weight = 1.0;
  Polynomial poly;
  Vector mean;
  Matrix quad;
};

// Weighted sum of polynomial x Gaussian terms over 2N phase-space variables.
class WignerExpr {
 public:
  // Computes the normalisation integral analytically.
  WignerExpr(int modes, std::vector<WignerTerm> terms);
  // Trusts a known normalisation (used where the analytic sum would cancel badly).
  WignerExpr(int modes, std::vector<WignerTerm> terms, double norm);

  int modes() const { return modes_; }
  const std::vector<WignerTerm> &terms() const { return terms_; }
  double norm() const { return norm_; }
  bool is_gaussian() const;

  double evaluate(std::span<const double> x) const;
  double evaluate(const Vector &x) const { return evaluate(std::span<const double>(x.data(), x.size())); }
  WignerExpr normalized() const;
  WignerExpr scaled(double factor) const;

 private:
  int modes_;
  std::vector<WignerTerm> terms_;
  double norm_;
};

WignerExpr from_gaussian(const GaussianState &state);
// (1/pi)(-1)^n L_n(2(x^2+p^2)) e^{-x^2-p^2}
WignerExpr fock_wigner(int n);

WignerExpr tensor(std::span<const WignerExpr> parts);
WignerExpr tensor(std::initializer_list<WignerExpr> parts);
// Sum of expressions over the same modes (weights already applied by the caller).
WignerExpr add(const WignerExpr &a, const WignerExpr &b);

WignerExpr apply_symplectic(const WignerExpr &expr, const SymplecticTransform &f);

// Integral of X^exponents W(X).
// Channels: a thermal (or vacuum) ancilla mixed in on BS(eta), then traced out.
WignerExpr inject_thermal(const WignerExpr &expr, ModeIndex mode, double n_env, double transmissivity);
WignerExpr apply_loss_explicit(const WignerExpr &expr, ModeIndex mode, double transmissivity);
// Uniform loss on every mode with the combined factor D(1-L).
WignerExpr apply_loss(const WignerExpr &expr, const LossSpec &spec);

double moment(const WignerExpr &expr, const Monomial &exponents);
// Integral of observable(X) W(X).
double expectation(const WignerExpr &expr, const Polynomial &observable);

WignerExpr marginalize(const WignerExpr &expr, ModeIndex mode);
// Integrates out every mode not listed; kept modes retain ascending order.
WignerExpr keep_modes(const WignerExpr &expr, std::span<const ModeIndex> keep);
WignerExpr keep_mode(const WignerExpr &expr, ModeIndex keep);

struct Projection {
  std::optional<WignerExpr> state;  // renormalised; empty when the branch is improbable
  double probability = 0.0;
};

// The projectors below throw ImprobableBranch when the probability is below 1e-14,
// unless allow_improbable is set, in which case `state` is left empty.
Projection project_fock(const WignerExpr &expr, ModeIndex mode, int n, bool allow_improbable = false);
Projection project_not_fock(const WignerExpr &expr, ModeIndex mode, int n, bool allow_improbable = false);
Projection project_click(const WignerExpr &expr, ModeIndex mode, bool allow_improbable = false);
Projection project_no_click(const WignerExpr &expr, ModeIndex mode, bool allow_improbable = false);

// Probability of vacuum on the given mode.
double vacuum_probability(const WignerExpr &expr, ModeIndex mode);

// G(l) = 2/(1+l) * Integral exp[(l-1)/(l+1)(x^2+p^2)] W, for -1 < l <= 1.
double generating_function(const WignerExpr &expr, ModeIndex mode, double l);
// Analytic continuation for complex l with |l| < 1.
std::complex<double> generating_function(const WignerExpr &expr, ModeIndex mode, std::complex<double> l);

struct PhotonNumberDistribution {
  std::vector<double> probs;
  int n_max = 0;
  double tail = 0.0;
  double mean() const;
};

PhotonNumberDistribution photon_number_distribution(const WignerExpr &expr, ModeIndex mode,
                                                    int n_max = kDefaultPhotonCutoff);

// (2 pi)^N Integral W^2.
double purity(const WignerExpr &expr);
// Integral a*b over all variables.
double overlap_integral(const WignerExpr &a, const WignerExpr &b);

// Writes x,p,W rows of the single-mode marginal on a rectangular grid.
void write_grid_csv(const WignerExpr &expr, ModeIndex mode, double x_min, double x_max, int nx, double p_min,
                    double p_max, int np, std::ostream &out);

}  // namespace cvq

#endif  // CVQ_WIGNER_H_
