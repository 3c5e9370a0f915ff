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

#ifndef CVQ_POLYNOMIAL_H_
#define CVQ_POLYNOMIAL_H_

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>

namespace cvq {

inline constexpr int kMaxVariables = 16;

// Exponent tuple; entries beyond the owning polynomial's variable count stay zero.
using Monomial = std::array<std::uint8_t, kMaxVariables>;

int total_degree(const Monomial &m);

// Sparse multivariate polynomial with coefficients in Scalar (double or complex<double>).
template <typename Scalar>
class BasicPolynomial {
 public:
  using VectorS = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using MatrixS = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  explicit BasicPolynomial(int vars = 0);
  static BasicPolynomial constant(int vars, Scalar c);
  static BasicPolynomial variable(int vars, int index);

  int vars() const { return vars_; }
  const std::map<Monomial, Scalar> &terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int degree() const;
  bool is_constant() const;
  Scalar constant_term() const;

  void add(const Monomial &m, Scalar c);

  BasicPolynomial &operator+=(const BasicPolynomial &other);
  BasicPolynomial &operator*=(Scalar c);
  BasicPolynomial operator*(const BasicPolynomial &other) const;
  BasicPolynomial operator+(const BasicPolynomial &other) const;

  template <typename Point>
  Scalar evaluate(const Point &x) const {
    Scalar total(0);
    for (const auto &[m, c] : terms_) {
      Scalar v = c;
      for (int i = 0; i < vars_; ++i) {
        for (int k = 0; k < m[i]; ++k) v *= x[i];
      }
      total += v;
    }
    return total;
  }

  // P(B y + b) as a polynomial in y (B.cols() variables).
  BasicPolynomial substitute_affine(const MatrixS &b_matrix, const VectorS &b_shift) const;
  // Renames variable i to target[i] in a polynomial over new_vars variables.
  BasicPolynomial relabel(int new_vars, std::span<const int> target) const;
  // Keeps only the listed variables, assuming all others have exponent zero.
  BasicPolynomial drop_variables(std::span<const int> keep) const;

  BasicPolynomial<std::complex<double>> to_complex() const;

 private:
  int vars_;
  std::map<Monomial, Scalar> terms_;
};

using Polynomial = BasicPolynomial<double>;
using ComplexPolynomial = BasicPolynomial<std::complex<double>>;

// Memoised raw moments E[z^k] of a zero-mean Gaussian with (possibly complex symmetric) covariance.
template <typename Scalar>
class GaussianMoments {
 public:
  using MatrixS = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  explicit GaussianMoments(MatrixS cov);
  Scalar operator()(const Monomial &k);

 private:
  MatrixS cov_;
  std::map<Monomial, Scalar> memo_;
};

// E[P(z)] for z ~ N(mean, cov).
template <typename Scalar>
Scalar gaussian_expectation(const BasicPolynomial<Scalar> &p,
                            const typename BasicPolynomial<Scalar>::VectorS &mean,
                            const typename BasicPolynomial<Scalar>::MatrixS &cov);

// Polynomial over (u, z) with u the first `keep` variables; returns E_z[P(u, z)] for z ~ N(0, cov).
template <typename Scalar>
BasicPolynomial<Scalar> expect_trailing(const BasicPolynomial<Scalar> &p, int keep,
                                        const typename BasicPolynomial<Scalar>::MatrixS &cov);

// Sum of |coefficient * E|z^k|| style magnitudes; a cancellation gauge for expectations.
double expectation_magnitude(const Polynomial &p, const Eigen::VectorXd &mean, const Eigen::MatrixXd &cov);

// L_n(t) coefficients c_k of t^k.
std::vector<double> laguerre_coefficients(int n);
double laguerre(int n, double t);

// (-1)^n L_n(2 (x^2 + p^2)) in the two variables (x_index, p_index) of a `vars`-variable polynomial.
Polynomial signed_laguerre_radial(int n, int vars, int x_index, int p_index);

}  // namespace cvq

#endif  // CVQ_POLYNOMIAL_H_
