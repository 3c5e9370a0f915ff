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

#include "cvq/phase_space.h"

#include <cmath>
#include <string>

#include "cvq/errors.h"

namespace cvq {

namespace {

void require_finite(double v, const char *name) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be finite");
  }
}

}  // namespace

ModeIndex::ModeIndex(int one_based) : index_(one_based) {
  if (one_based < 1) {
    throw DomainError("mode index must be >= 1, got " + std::to_string(one_based));
  }
}

void ModeIndex::check(int modes) const {
  if (index_ > modes) {
    throw DomainError("mode " + std::to_string(index_) + " out of range for " +
                      std::to_string(modes) + "-mode system");
  }
}

QuadratureVector::QuadratureVector(Vector entries) : entries_(std::move(entries)) {
  if (entries_.size() == 0 || entries_.size() % 2 != 0) {
    throw DomainError("quadrature vector length must be even and positive");
  }
  if (!entries_.allFinite()) {
    throw DomainError("quadrature vector has non-finite entries");
  }
}

QuadratureVector QuadratureVector::zero(int modes) {
  return QuadratureVector(Vector::Zero(2 * modes));
}

CovarianceMatrix::CovarianceMatrix(Matrix entries) : entries_(std::move(entries)) {
  const auto n = entries_.rows();
  if (n == 0 || n % 2 != 0 || entries_.cols() != n) {
    throw DomainError("covariance must be square with even positive dimension");
  }
  if (!entries_.allFinite()) {
    throw DomainError("covariance has non-finite entries");
  }
  double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
  double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  if (asym > kSymmetryTolerance * scale) {
    throw DomainError("covariance is not symmetric (defect " + std::to_string(asym) + ")");
  }
  entries_ = 0.5 * (entries_ + entries_.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(entries_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    throw DomainError("covariance is not positive definite");
  }
  if (bona_fide_margin(entries_) < -kBonaFideTolerance * scale) {
    throw DomainError("covariance violates sigma + i*Omega >= 0");
  }
}

CovarianceMatrix CovarianceMatrix::identity(int modes) {
  return CovarianceMatrix(Matrix::Identity(2 * modes, 2 * modes));
}

double CovarianceMatrix::bona_fide_margin(const Matrix &sigma) {
  const int modes = static_cast<int>(sigma.rows() / 2);
  Eigen::MatrixXcd h = sigma.cast<std::complex<double>>();
  h += std::complex<double>(0.0, 1.0) * symplectic_form(modes).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

Matrix symplectic_form(int modes) {
  Matrix omega = Matrix::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

double symplectic_defect(const Matrix &f) {
  const int modes = static_cast<int>(f.rows() / 2);
  Matrix omega = symplectic_form(modes);
  return (f * omega * f.transpose() - omega).cwiseAbs().maxCoeff();
}

SymplecticTransform::SymplecticTransform(Matrix matrix, Vector shift)
    : matrix_(std::move(matrix)), shift_(std::move(shift)) {
  const auto n = matrix_.rows();
  if (n == 0 || n % 2 != 0 || matrix_.cols() != n) {
    throw DomainError("symplectic matrix must be square with even positive dimension");
  }
  if (shift_.size() != n) {
    throw DomainError("shift length does not match transform dimension");
  }
  if (!matrix_.allFinite() || !shift_.allFinite()) {
    throw DomainError("transform has non-finite entries");
  }
  double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  if (symplectic_defect(matrix_) > kSymplecticTolerance * scale * scale) {
    throw DomainError("matrix is not symplectic");
  }
}

SymplecticTransform::SymplecticTransform(Matrix matrix)
    : SymplecticTransform(matrix, Vector::Zero(matrix.rows())) {}

SymplecticTransform SymplecticTransform::identity(int modes) {
  return SymplecticTransform(Matrix::Identity(2 * modes, 2 * modes));
}

SymplecticTransform SymplecticTransform::inverse() const {
  // F^-1 = Omega^T F^T Omega for symplectic F; exact up to rounding.
  Matrix omega = symplectic_form(modes());
  Matrix inv = omega.transpose() * matrix_.transpose() * omega;
  return SymplecticTransform(inv, -(inv * shift_));
}

SymplecticTransform make_beam_splitter(double transmissivity) {
  require_finite(transmissivity, "transmissivity");
  if (transmissivity < 0.0 || transmissivity > 1.0) {
    throw DomainError("beam splitter transmissivity must lie in [0,1]");
  }
  const double t = std::sqrt(transmissivity);
  const double s = std::sqrt(1.0 - transmissivity);
  Matrix m(4, 4);
  m << t, 0, s, 0,
       0, t, 0, s,
       s, 0, -t, 0,
       0, s, 0, -t;
  return SymplecticTransform(m);
}

SymplecticTransform make_phase_shifter(double phi) {
  require_finite(phi, "phase");
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  Matrix m(2, 2);
  m << c, -s,
       s, c;
  return SymplecticTransform(m);
}

SymplecticTransform make_symmetric_phase_shifter(double phi) {
  require_finite(phi, "phase");
  const double c = std::cos(phi / 2);
  const double s = std::sin(phi / 2);
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = c;
  m(0, 1) = -s;
  m(1, 0) = s;
  m(1, 1) = c;
  m(2, 2) = c;
  m(2, 3) = s;
  m(3, 2) = -s;
  m(3, 3) = c;
  return SymplecticTransform(m);
}

SymplecticTransform make_squeezer(double r, double theta) {
  require_finite(r, "squeezing");
  require_finite(theta, "squeezing angle");
  if (r < 0.0) {
    throw DomainError("squeezing parameter must be >= 0");
  }
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix m(2, 2);
  m << ch + c * sh, s * sh,
       s * sh, ch - c * sh;
  return SymplecticTransform(m);
}

SymplecticTransform make_squeezer_from_gain(double gain) {
  require_finite(gain, "gain");
  if (gain < 1.0) {
    throw DomainError("squeezer gain must be >= 1");
  }
  const double a = std::sqrt(gain);
  const double b = std::sqrt(gain - 1.0);
  Matrix m(2, 2);
  m << a + b, 0,
       0, a - b;
  return SymplecticTransform(m);
}

SymplecticTransform make_two_mode_squeezer(double r, double theta) {
  require_finite(r, "squeezing");
  require_finite(theta, "squeezing angle");
  if (r < 0.0) {
    throw DomainError("squeezing parameter must be >= 0");
  }
  const double ch = std::cosh(r);
  const double g = std::sinh(r) * std::cos(theta);
  const double d = std::sinh(r) * std::sin(theta);
  Matrix m(4, 4);
  m << ch, 0, g, d,
       0, ch, d, -g,
       g, d, ch, 0,
       d, -g, 0, ch;
  return SymplecticTransform(m);
}

SymplecticTransform make_displacement(double abs_alpha, double theta) {
  require_finite(abs_alpha, "displacement");
  require_finite(theta, "displacement angle");
  if (abs_alpha < 0.0) {
    throw DomainError("displacement magnitude must be >= 0");
  }
  Vector shift(2);
  shift << std::sqrt(2.0) * abs_alpha * std::cos(theta), std::sqrt(2.0) * abs_alpha * std::sin(theta);
  return SymplecticTransform(Matrix::Identity(2, 2), shift);
}

SymplecticTransform direct_sum(std::span<const SymplecticTransform> parts) {
  if (parts.empty()) {
    throw DomainError("direct_sum needs at least one part");
  }
  int dim = 0;
  for (const auto &p : parts) dim += static_cast<int>(p.matrix().rows());
  Matrix m = Matrix::Zero(dim, dim);
  Vector shift = Vector::Zero(dim);
  int at = 0;
  for (const auto &p : parts) {
    const int n = static_cast<int>(p.matrix().rows());
    m.block(at, at, n, n) = p.matrix();
    shift.segment(at, n) = p.shift();
    at += n;
  }
  return SymplecticTransform(m, shift);
}

SymplecticTransform direct_sum(std::initializer_list<SymplecticTransform> parts) {
  return direct_sum(std::span<const SymplecticTransform>(parts.begin(), parts.size()));
}

SymplecticTransform compose(const SymplecticTransform &outer, const SymplecticTransform &inner) {
  if (outer.matrix().rows() != inner.matrix().rows()) {
    throw DomainError("compose: dimension mismatch");
  }
  return SymplecticTransform(outer.matrix() * inner.matrix(), outer.matrix() * inner.shift() + outer.shift());
}

SymplecticTransform embed(const SymplecticTransform &element, std::span<const ModeIndex> targets,
                          int total_modes) {
  if (static_cast<int>(targets.size()) != element.modes()) {
    throw DomainError("embed: target count does not match element modes");
  }
  std::vector<int> rows;
  for (const auto &t : targets) {
    t.check(total_modes);
    for (int r : rows) {
      if (r == t.x_row()) throw DomainError("embed: repeated target mode");
    }
    rows.push_back(t.x_row());
    rows.push_back(t.p_row());
  }
  Matrix m = Matrix::Identity(2 * total_modes, 2 * total_modes);
  Vector shift = Vector::Zero(2 * total_modes);
  const int n = static_cast<int>(rows.size());
  for (int i = 0; i < n; ++i) {
    shift(rows[i]) = element.shift()(i);
    for (int j = 0; j < n; ++j) {
      m(rows[i], rows[j]) = element.matrix()(i, j);
    }
  }
  return SymplecticTransform(m, shift);
}

SymplecticTransform embed(const SymplecticTransform &element, std::initializer_list<ModeIndex> targets,
                          int total_modes) {
  return embed(element, std::span<const ModeIndex>(targets.begin(), targets.size()), total_modes);
}

SymplecticTransform make_mzi(double phi) {
  const auto bs = make_beam_splitter(0.5);
  return compose(bs, compose(make_symmetric_phase_shifter(phi), bs));
}

}  // namespace cvq
