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

#include "cvq/measurements.h"

#include <cmath>
#include <numbers>

#include "cvq/errors.h"

namespace cvq {

namespace {

constexpr double kVarianceClamp = 1e-10;

// Polynomial x_k^2 + p_k^2 over `vars` variables.
Polynomial radius_squared(int vars, int x_row) {
  Polynomial p(vars);
  Monomial mx{};
  mx[x_row] = 2;
  Monomial mp{};
  mp[x_row + 1] = 2;
  p.add(mx, 1.0);
  p.add(mp, 1.0);
  return p;
}

// (1/2)(x^2 + p^2) - 1/2, the symmetric-ordered number operator.
Polynomial number_symbol(int vars, int x_row) {
  Polynomial p = radius_squared(vars, x_row);
  p *= 0.5;
  p.add(Monomial{}, -0.5);
  return p;
}

void check_distinct(ModeIndex a, ModeIndex b) {
  if (a == b) throw DomainError("intensity difference needs two distinct modes");
}

}  // namespace

MeasurementMoments MeasurementMoments::from_moments(double mean, double second_moment) {
  MeasurementMoments m;
  m.mean = mean;
  m.second_moment = second_moment;
  double v = second_moment - mean * mean;
  const double scale = std::max(1.0, std::abs(second_moment));
  if (v < 0.0) {
    if (v < -kVarianceClamp * scale) {
      throw NumericalError("negative variance " + std::to_string(v));
    }
    v = 0.0;
  }
  m.variance = v;
  return m;
}

DetectionScheme DetectionScheme::intensity(int mode) {
  DetectionScheme s;
  s.kind = DetectionKind::kIntensity;
  s.mode = ModeIndex(mode);
  return s;
}

DetectionScheme DetectionScheme::homodyne(int mode, double angle) {
  DetectionScheme s;
  s.kind = DetectionKind::kHomodyne;
  s.mode = ModeIndex(mode);
  s.angle = angle;
  return s;
}

DetectionScheme DetectionScheme::parity(int mode) {
  DetectionScheme s;
  s.kind = DetectionKind::kParity;
  s.mode = ModeIndex(mode);
  return s;
}

DetectionScheme DetectionScheme::intensity_difference(int mode_a, int mode_b) {
  DetectionScheme s;
  s.kind = DetectionKind::kIntensityDifference;
  s.mode = ModeIndex(mode_a);
  s.second_mode = ModeIndex(mode_b);
  return s;
}

DetectionScheme DetectionScheme::click(int mode) {
  DetectionScheme s;
  s.kind = DetectionKind::kClick;
  s.mode = ModeIndex(mode);
  return s;
}

void DetectionScheme::validate(int modes) const {
  mode.check(modes);
  if (kind == DetectionKind::kIntensityDifference) {
    if (!second_mode) throw DomainError("intensity difference needs a second mode");
    second_mode->check(modes);
    check_distinct(mode, *second_mode);
  }
  if (!std::isfinite(angle)) throw DomainError("homodyne angle must be finite");
}

std::string DetectionScheme::name() const {
  switch (kind) {
    case DetectionKind::kIntensity:
      return "intensity";
    case DetectionKind::kHomodyne:
      return "homodyne";
    case DetectionKind::kParity:
      return "parity";
    case DetectionKind::kIntensityDifference:
      return "intensity_difference";
    case DetectionKind::kClick:
      return "click";
  }
  return "unknown";
}

MeasurementMoments intensity(const GaussianState &state, ModeIndex mode) {
  mode.check(state.modes());
  const GaussianState m = state.reduce(mode);
  const Matrix c = m.cov() / 2.0;
  const double mean = mean_photon(state, mode);
  const double variance = 0.5 * (c * c).trace() + m.mean().dot(c * m.mean()) - 0.25;
  return MeasurementMoments::from_moments(mean, variance + mean * mean);
}

MeasurementMoments intensity(const WignerExpr &expr, ModeIndex mode) {
  const WignerExpr m = keep_mode(expr, mode);
  const Polynomial r2 = radius_squared(2, 0);
  const double first = expectation(m, r2) / m.norm();
  const double second = expectation(m, r2 * r2) / m.norm();
  const double mean = 0.5 * first - 0.5;
  return MeasurementMoments::from_moments(mean, 0.25 * second - mean - 0.5);
}

MeasurementMoments homodyne(const GaussianState &state, ModeIndex mode, double theta) {
  mode.check(state.modes());
  const GaussianState m = state.reduce(mode);
  Vector u(2);
  u << std::cos(theta), std::sin(theta);
  const double mean = u.dot(m.mean());
  const double variance = 0.5 * u.dot(m.cov() * u);
  return MeasurementMoments::from_moments(mean, variance + mean * mean);
}

MeasurementMoments homodyne(const WignerExpr &expr, ModeIndex mode, double theta) {
  const WignerExpr m = keep_mode(expr, mode);
  Polynomial r(2);
  Monomial mx{};
  mx[0] = 1;
  Monomial mp{};
  mp[1] = 1;
  r.add(mx, std::cos(theta));
  r.add(mp, std::sin(theta));
  const double mean = expectation(m, r) / m.norm();
  return MeasurementMoments::from_moments(mean, expectation(m, r * r) / m.norm());
}

MeasurementMoments parity(const GaussianState &state, ModeIndex mode) {
  mode.check(state.modes());
  const GaussianState m = state.reduce(mode);
  Eigen::LLT<Matrix> llt(m.cov());
  const double quad = m.mean().dot(llt.solve(m.mean()));
  const double mean = std::exp(-quad) / std::sqrt(m.cov().determinant());
  return MeasurementMoments::from_moments(mean, 1.0);
}

MeasurementMoments parity(const WignerExpr &expr, ModeIndex mode) {
  const WignerExpr m = keep_mode(expr, mode);
  const double origin[2] = {0.0, 0.0};
  const double mean = std::numbers::pi * m.evaluate(origin) / m.norm();
  if (mean < -1.0 - 1e-9 || mean > 1.0 + 1e-9) throw NumericalError("parity outside [-1,1]");
  return MeasurementMoments::from_moments(std::clamp(mean, -1.0, 1.0), 1.0);
}

MeasurementMoments intensity_difference(const GaussianState &state, ModeIndex mode_a, ModeIndex mode_b) {
  check_distinct(mode_a, mode_b);
  mode_a.check(state.modes());
  mode_b.check(state.modes());
  const MeasurementMoments a = intensity(state, mode_a);
  const MeasurementMoments b = intensity(state, mode_b);
  const Matrix cab = state.cov().block(mode_a.x_row(), mode_b.x_row(), 2, 2) / 2.0;
  const Vector da = state.mean().segment(mode_a.x_row(), 2);
  const Vector db = state.mean().segment(mode_b.x_row(), 2);
  const double cov = 0.5 * cab.cwiseProduct(cab).sum() + da.dot(cab * db);
  const double mean = a.mean - b.mean;
  const double variance = a.variance + b.variance - 2.0 * cov;
  return MeasurementMoments::from_moments(mean, variance + mean * mean);
}

MeasurementMoments intensity_difference(const WignerExpr &expr, ModeIndex mode_a, ModeIndex mode_b) {
  check_distinct(mode_a, mode_b);
  const ModeIndex lo = mode_a.value() < mode_b.value() ? mode_a : mode_b;
  const ModeIndex hi = mode_a.value() < mode_b.value() ? mode_b : mode_a;
  const ModeIndex pair[2] = {lo, hi};
  const WignerExpr m = keep_modes(expr, pair);
  const int xa = mode_a == lo ? 0 : 2;
  const int xb = mode_a == lo ? 2 : 0;
  const double norm = m.norm();
  const Polynomial ra = radius_squared(4, xa);
  const Polynomial rb = radius_squared(4, xb);
  const Polynomial na = number_symbol(4, xa);
  const Polynomial nb = number_symbol(4, xb);
  const double mean_a = expectation(m, na) / norm;
  const double mean_b = expectation(m, nb) / norm;
  const double sq_a = 0.25 * expectation(m, ra * ra) / norm - mean_a - 0.5;
  const double sq_b = 0.25 * expectation(m, rb * rb) / norm - mean_b - 0.5;
  const double cross = expectation(m, na * nb) / norm;
  const double mean = mean_a - mean_b;
  return MeasurementMoments::from_moments(mean, sq_a + sq_b - 2.0 * cross);
}

double click_probability(const GaussianState &state, ModeIndex mode) {
  mode.check(state.modes());
  const GaussianState m = state.reduce(mode);
  const Matrix s = m.cov() + Matrix::Identity(2, 2);
  Eigen::LLT<Matrix> llt(s);
  const double p0 = 2.0 / std::sqrt(s.determinant()) * std::exp(-m.mean().dot(llt.solve(m.mean())));
  return std::clamp(1.0 - p0, 0.0, 1.0);
}

double click_probability(const WignerExpr &expr, ModeIndex mode) {
  return std::clamp(1.0 - vacuum_probability(expr, mode), 0.0, 1.0);
}

namespace {

template <typename State>
MeasurementMoments dispatch(const State &s, const DetectionScheme &scheme) {
  scheme.validate(s.modes());
  switch (scheme.kind) {
    case DetectionKind::kIntensity:
      return intensity(s, scheme.mode);
    case DetectionKind::kHomodyne:
      return homodyne(s, scheme.mode, scheme.angle);
    case DetectionKind::kParity:
      return parity(s, scheme.mode);
    case DetectionKind::kIntensityDifference:
      return intensity_difference(s, scheme.mode, *scheme.second_mode);
    case DetectionKind::kClick: {
      const double p = click_probability(s, scheme.mode);
      return MeasurementMoments::from_moments(p, p);
    }
  }
  throw DomainError("unknown detection scheme");
}

}  // namespace

MeasurementMoments measure(const GaussianState &state, const DetectionScheme &scheme) {
  return dispatch(state, scheme);
}

MeasurementMoments measure(const WignerExpr &expr, const DetectionScheme &scheme) {
  return dispatch(expr, scheme);
}

}  // namespace cvq
