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

#include "cvq/gaussian.h"

#include <cmath>

#include "cvq/errors.h"

namespace cvq {

namespace {

Matrix symmetrized(const Matrix &m) { return 0.5 * (m + m.transpose()); }

void require_unit_interval(double v, const char *name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0,1]");
  }
}

}  // namespace

GaussianState::GaussianState(QuadratureVector mean, CovarianceMatrix cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  if (mean_.modes() != cov_.modes()) {
    throw DomainError("mean and covariance dimensions differ");
  }
}

GaussianState::GaussianState(const Vector &mean, const Matrix &cov)
    : GaussianState(QuadratureVector(mean), CovarianceMatrix(cov)) {}

GaussianState GaussianState::reduce(std::span<const ModeIndex> keep) const {
  std::vector<int> rows;
  for (const auto &k : keep) {
    k.check(modes());
    rows.push_back(k.x_row());
    rows.push_back(k.p_row());
  }
  const int n = static_cast<int>(rows.size());
  Vector d(n);
  Matrix s(n, n);
  for (int i = 0; i < n; ++i) {
    d(i) = mean()(rows[i]);
    for (int j = 0; j < n; ++j) s(i, j) = cov()(rows[i], rows[j]);
  }
  return GaussianState(d, s);
}

GaussianState GaussianState::reduce(ModeIndex keep) const {
  return reduce(std::span<const ModeIndex>(&keep, 1));
}

double GaussianState::purity() const { return 1.0 / std::sqrt(cov().determinant()); }

void LossSpec::validate() const {
  require_unit_interval(internal_loss, "internal loss L");
  require_unit_interval(detector_efficiency, "detector efficiency D");
}

GaussianState vacuum_state(int modes) {
  if (modes < 1) throw DomainError("vacuum_state needs at least one mode");
  return GaussianState(QuadratureVector::zero(modes), CovarianceMatrix::identity(modes));
}

GaussianState coherent_state(double abs_alpha, double theta) {
  return propagate(vacuum_state(1), make_displacement(abs_alpha, theta));
}

GaussianState thermal_state(double n_bar) {
  if (!(n_bar >= 0.0) || !std::isfinite(n_bar)) {
    throw DomainError("thermal mean photon number must be >= 0");
  }
  return GaussianState(Vector::Zero(2), (2.0 * n_bar + 1.0) * Matrix::Identity(2, 2));
}

GaussianState squeezed_vacuum(double r, double theta) {
  return propagate(vacuum_state(1), make_squeezer(r, theta));
}

GaussianState tensor(std::span<const GaussianState> states) {
  if (states.empty()) throw DomainError("tensor needs at least one state");
  int dim = 0;
  for (const auto &s : states) dim += 2 * s.modes();
  Vector d = Vector::Zero(dim);
  Matrix sigma = Matrix::Zero(dim, dim);
  int at = 0;
  for (const auto &s : states) {
    const int n = 2 * s.modes();
    d.segment(at, n) = s.mean();
    sigma.block(at, at, n, n) = s.cov();
    at += n;
  }
  return GaussianState(d, sigma);
}

GaussianState tensor(std::initializer_list<GaussianState> states) {
  return tensor(std::span<const GaussianState>(states.begin(), states.size()));
}

GaussianState propagate(const GaussianState &state, const SymplecticTransform &f) {
  if (f.modes() != state.modes()) {
    throw DomainError("propagate: transform and state dimensions differ");
  }
  const Matrix &m = f.matrix();
  return GaussianState(f.apply(state.mean()), symmetrized(m * state.cov() * m.transpose()));
}

GaussianState apply_loss(const GaussianState &state, const LossSpec &spec) {
  spec.validate();
  const double l = spec.total_loss();
  const int n = 2 * state.modes();
  return GaussianState(std::sqrt(1.0 - l) * state.mean(),
                       (1.0 - l) * state.cov() + l * Matrix::Identity(n, n));
}

GaussianState inject_thermal(const GaussianState &state, ModeIndex mode, double n_env,
                             double transmissivity) {
  mode.check(state.modes());
  require_unit_interval(transmissivity, "transmissivity");
  const int n = state.modes();
  GaussianState joint = tensor({state, thermal_state(n_env)});
  ModeIndex ancilla(n + 1);
  joint = propagate(joint, embed(make_beam_splitter(transmissivity), {mode, ancilla}, n + 1));
  std::vector<ModeIndex> keep;
  for (int k = 1; k <= n; ++k) keep.emplace_back(k);
  return joint.reduce(keep);
}

GaussianState apply_loss_explicit(const GaussianState &state, ModeIndex mode, double transmissivity) {
  return inject_thermal(state, mode, 0.0, transmissivity);
}

double mean_photon(const GaussianState &state, ModeIndex mode) {
  mode.check(state.modes());
  const int x = mode.x_row();
  const int p = mode.p_row();
  const double dx = state.mean()(x);
  const double dp = state.mean()(p);
  return 0.5 * ((state.cov()(x, x) + state.cov()(p, p)) / 2.0 + dx * dx + dp * dp - 1.0);
}

double total_mean_photon(const GaussianState &state) {
  double total = 0.0;
  for (int k = 1; k <= state.modes(); ++k) total += mean_photon(state, ModeIndex(k));
  return total;
}

}  // namespace cvq
