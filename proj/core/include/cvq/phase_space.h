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

#ifndef CVQ_PHASE_SPACE_H_
#define CVQ_PHASE_SPACE_H_

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace cvq {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kSymplecticTolerance = 1e-10;
inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kBonaFideTolerance = 1e-9;

// One-based spatial mode label. Mode k occupies rows 2k-2 and 2k-1 (zero based).
class ModeIndex {
 public:
  explicit ModeIndex(int one_based);
  int value() const { return index_; }
  int x_row() const { return 2 * (index_ - 1); }
  int p_row() const { return 2 * (index_ - 1) + 1; }
  // Throws DomainError when the index exceeds `modes`.
  void check(int modes) const;
  bool operator==(const ModeIndex &other) const = default;

 private:
  int index_;
};

// Interleaved (x1, p1, x2, p2, ...) phase-space vector.
class QuadratureVector {
 public:
  explicit QuadratureVector(Vector entries);
  static QuadratureVector zero(int modes);
  const Vector &values() const { return entries_; }
  int modes() const { return static_cast<int>(entries_.size() / 2); }

 private:
  Vector entries_;
};

// Symmetrized second moments; the vacuum is the identity.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Matrix entries);
  static CovarianceMatrix identity(int modes);
  const Matrix &values() const { return entries_; }
  int modes() const { return static_cast<int>(entries_.rows() / 2); }

  // Returns the smallest eigenvalue of the Hermitian form sigma + i*Omega.
  static double bona_fide_margin(const Matrix &sigma);

 private:
  Matrix entries_;
};

Matrix symplectic_form(int modes);

// Linear optical element with an optional affine displacement: X -> F X + shift.
class SymplecticTransform {
 public:
  SymplecticTransform(Matrix matrix, Vector shift);
  explicit SymplecticTransform(Matrix matrix);
  static SymplecticTransform identity(int modes);

  const Matrix &matrix() const { return matrix_; }
  const Vector &shift() const { return shift_; }
  bool has_shift() const { return shift_.cwiseAbs().maxCoeff() > 0.0; }
  int modes() const { return static_cast<int>(matrix_.rows() / 2); }

  Vector apply(const Vector &x) const { return matrix_ * x + shift_; }
  // The inverse map X -> F^-1 (X - shift).
  SymplecticTransform inverse() const;

 private:
  Matrix matrix_;
  Vector shift_;
};

// max |F Omega F^T - Omega|.
double symplectic_defect(const Matrix &f);

SymplecticTransform make_beam_splitter(double transmissivity);
SymplecticTransform make_phase_shifter(double phi);
SymplecticTransform make_symmetric_phase_shifter(double phi);
SymplecticTransform make_squeezer(double r, double theta);
SymplecticTransform make_squeezer_from_gain(double gain);
SymplecticTransform make_two_mode_squeezer(double r, double theta);
SymplecticTransform make_displacement(double abs_alpha, double theta);

SymplecticTransform direct_sum(std::span<const SymplecticTransform> parts);
SymplecticTransform direct_sum(std::initializer_list<SymplecticTransform> parts);
// outer after inner.
SymplecticTransform compose(const SymplecticTransform &outer, const SymplecticTransform &inner);

// Places a k-mode element on the listed modes of an N-mode system, in listed order.
SymplecticTransform embed(const SymplecticTransform &element, std::span<const ModeIndex> targets,
                          int total_modes);
SymplecticTransform embed(const SymplecticTransform &element, std::initializer_list<ModeIndex> targets,
                          int total_modes);

// BS(1/2) . PS2(phi) . BS(1/2).
SymplecticTransform make_mzi(double phi);

}  // namespace cvq

#endif  // CVQ_PHASE_SPACE_H_
