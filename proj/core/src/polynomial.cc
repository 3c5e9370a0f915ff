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

#include "cvq/polynomial.h"

#include <cmath>
#include <vector>

#include "cvq/errors.h"

namespace cvq {

int total_degree(const Monomial &m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

namespace {

template <typename Scalar>
bool is_zero(Scalar c) {
  return c == Scalar(0);
}

Monomial add_monomials(const Monomial &a, const Monomial &b) {
  Monomial r{};
  for (int i = 0; i < kMaxVariables; ++i) {
    const int s = a[i] + b[i];
    if (s > 255) throw NumericalError("polynomial exponent overflow");
    r[i] = static_cast<std::uint8_t>(s);
  }
  return r;
}

}  // namespace

template <typename Scalar>
BasicPolynomial<Scalar>::BasicPolynomial(int vars) : vars_(vars) {
  if (vars < 0 || vars > kMaxVariables) {
    throw DomainError("polynomial variable count out of range");
  }
}

template <typename Scalar>
BasicPolynomial<Scalar> BasicPolynomial<Scalar>::constant(int vars, Scalar c) {
  BasicPolynomial p(vars);
  p.add(Monomial{}, c);
  return p;
}

template <typename Scalar>
BasicPolynomial<Scalar> BasicPolynomial<Scalar>::variable(int vars, int index) {
  BasicPolynomial p(vars);
  Monomial m{};
  m[index] = 1;
  p.add(m, Scalar(1));
  return p;
}

template <typename Scalar>
int BasicPolynomial<Scalar>::degree() const {
  int d = 0;
  for (const auto &[m, c] : terms_) d = std::max(d, total_degree(m));
  return d;
}

template <typename Scalar>
bool BasicPolynomial<Scalar>::is_constant() const {
  for (const auto &[m, c] : terms_) {
    if (total_degree(m) != 0) return false;
  }
  return true;
}

template <typename Scalar>
Scalar BasicPolynomial<Scalar>::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Scalar(0) : it->second;
}

template <typename Scalar>
void BasicPolynomial<Scalar>::add(const Monomial &m, Scalar c) {
  if (is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (is_zero(it->second)) terms_.erase(it);
  }
}

template <typename Scalar>
BasicPolynomial<Scalar> &BasicPolynomial<Scalar>::operator+=(const BasicPolynomial &other) {
  for (const auto &[m, c] : other.terms_) add(m, c);
  return *this;
}

template <typename Scalar>
BasicPolynomial<Scalar> &BasicPolynomial<Scalar>::operator*=(Scalar c) {
  if (is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto &[m, v] : terms_) v *= c;
  return *this;
}

template <typename Scalar>
BasicPolynomial<Scalar> BasicPolynomial<Scalar>::operator*(const BasicPolynomial &other) const {
  BasicPolynomial r(std::max(vars_, other.vars_));
  for (const auto &[ma, ca] : terms_) {
    for (const auto &[mb, cb] : other.terms_) r.add(add_monomials(ma, mb), ca * cb);
  }
  return r;
}

template <typename Scalar>
BasicPolynomial<Scalar> BasicPolynomial<Scalar>::operator+(const BasicPolynomial &other) const {
  BasicPolynomial r = *this;
  r.vars_ = std::max(vars_, other.vars_);
  r += other;
  return r;
}

template <typename Scalar>
BasicPolynomial<Scalar> BasicPolynomial<Scalar>::substitute_affine(const MatrixS &b_matrix,
                                                                   const VectorS &b_shift) const {
  if (b_matrix.rows() != vars_ || b_shift.size() != vars_) {
    throw DomainError("substitute_affine: dimension mismatch");
  }
  const int out_vars = static_cast<int>(b_matrix.cols());
  std::vector<int> max_power(vars_, 0);
  for (const auto &[m, c] : terms_) {
    for (int i = 0; i < vars_; ++i) max_power[i] = std::max<int>(max_power[i], m[i]);
  }
  // powers[i][k] = (row_i . y + shift_i)^k
  std::vector<std::vector<BasicPolynomial>> powers(vars_);
  for (int i = 0; i < vars_; ++i) {
    BasicPolynomial linear(out_vars);
    linear.add(Monomial{}, b_shift(i));
    for (int j = 0; j < out_vars; ++j) {
      Monomial m{};
      m[j] = 1;
      linear.add(m, b_matrix(i, j));
    }
    powers[i].push_back(constant(out_vars, Scalar(1)));
    for (int k = 1; k <= max_power[i]; ++k) powers[i].push_back(powers[i].back() * linear);
  }
  BasicPolynomial result(out_vars);
  for (const auto &[m, c] : terms_) {
    BasicPolynomial acc = constant(out_vars, c);
    for (int i = 0; i < vars_; ++i) {
      if (m[i] > 0) acc = acc * powers[i][m[i]];
    }
    result += acc;
  }
  return result;
}

template <typename Scalar>
BasicPolynomial<Scalar> BasicPolynomial<Scalar>::relabel(int new_vars, std::span<const int> target) const {
  if (static_cast<int>(target.size()) != vars_) throw DomainError("relabel: map size mismatch");
  BasicPolynomial r(new_vars);
  for (const auto &[m, c] : terms_) {
    Monomial n{};
    for (int i = 0; i < vars_; ++i) {
      if (m[i] == 0) continue;
      if (target[i] < 0 || target[i] >= new_vars) throw DomainError("relabel: target out of range");
      n[target[i]] = m[i];
    }
    r.add(n, c);
  }
  return r;
}

template <typename Scalar>
BasicPolynomial<Scalar> BasicPolynomial<Scalar>::drop_variables(std::span<const int> keep) const {
  BasicPolynomial r(static_cast<int>(keep.size()));
  for (const auto &[m, c] : terms_) {
    Monomial n{};
    int kept_degree = 0;
    for (size_t i = 0; i < keep.size(); ++i) {
      n[i] = m[keep[i]];
      kept_degree += m[keep[i]];
    }
    if (kept_degree != total_degree(m)) throw DomainError("drop_variables: dropped variable has a power");
    r.add(n, c);
  }
  return r;
}

template <typename Scalar>
BasicPolynomial<std::complex<double>> BasicPolynomial<Scalar>::to_complex() const {
  BasicPolynomial<std::complex<double>> r(vars_);
  for (const auto &[m, c] : terms_) r.add(m, std::complex<double>(c));
  return r;
}

template <typename Scalar>
GaussianMoments<Scalar>::GaussianMoments(MatrixS cov) : cov_(std::move(cov)) {}

template <typename Scalar>
Scalar GaussianMoments<Scalar>::operator()(const Monomial &k) {
  const int degree = total_degree(k);
  if (degree == 0) return Scalar(1);
  if (degree % 2 == 1) return Scalar(0);
  auto it = memo_.find(k);
  if (it != memo_.end()) return it->second;
  int first = 0;
  while (k[first] == 0) ++first;
  Monomial rest = k;
  rest[first] -= 1;
  Scalar total(0);
  const int n = static_cast<int>(cov_.rows());
  for (int j = 0; j < n; ++j) {
    if (rest[j] == 0 || cov_(first, j) == Scalar(0)) continue;
    Monomial next = rest;
    next[j] -= 1;
    total += cov_(first, j) * Scalar(static_cast<double>(rest[j])) * (*this)(next);
  }
  memo_.emplace(k, total);
  return total;
}

template <typename Scalar>
Scalar gaussian_expectation(const BasicPolynomial<Scalar> &p,
                            const typename BasicPolynomial<Scalar>::VectorS &mean,
                            const typename BasicPolynomial<Scalar>::MatrixS &cov) {
  using MatrixS = typename BasicPolynomial<Scalar>::MatrixS;
  if (p.is_constant()) return p.constant_term();
  const int n = p.vars();
  BasicPolynomial<Scalar> shifted = p.substitute_affine(MatrixS::Identity(n, n), mean);
  GaussianMoments<Scalar> moments(cov);
  Scalar total(0);
  for (const auto &[m, c] : shifted.terms()) total += c * moments(m);
  return total;
}

template <typename Scalar>
BasicPolynomial<Scalar> expect_trailing(const BasicPolynomial<Scalar> &p, int keep,
                                        const typename BasicPolynomial<Scalar>::MatrixS &cov) {
  const int z_vars = static_cast<int>(cov.rows());
  if (keep + z_vars != p.vars()) throw DomainError("expect_trailing: dimension mismatch");
  GaussianMoments<Scalar> moments(cov);
  BasicPolynomial<Scalar> r(keep);
  for (const auto &[m, c] : p.terms()) {
    Monomial u{};
    Monomial z{};
    for (int i = 0; i < keep; ++i) u[i] = m[i];
    for (int i = 0; i < z_vars; ++i) z[i] = m[keep + i];
    Scalar e = moments(z);
    if (e != Scalar(0)) r.add(u, c * e);
  }
  return r;
}

double expectation_magnitude(const Polynomial &p, const Eigen::VectorXd &mean, const Eigen::MatrixXd &cov) {
  if (p.is_constant()) return std::abs(p.constant_term());
  const int n = p.vars();
  Polynomial shifted = p.substitute_affine(Eigen::MatrixXd::Identity(n, n), mean);
  GaussianMoments<double> moments(cov);
  double total = 0.0;
  for (const auto &[m, c] : shifted.terms()) total += std::abs(c * moments(m));
  return total;
}

std::vector<double> laguerre_coefficients(int n) {
  if (n < 0) throw DomainError("Laguerre order must be >= 0");
  std::vector<double> c(n + 1);
  double v = 1.0;  // (-1)^k C(n,k) / k!
  for (int k = 0; k <= n; ++k) {
    c[k] = v;
    v *= -static_cast<double>(n - k) / static_cast<double>((k + 1) * (k + 1));
  }
  return c;
}

double laguerre(int n, double t) {
  if (n < 0) throw DomainError("Laguerre order must be >= 0");
  if (n == 0) return 1.0;
  double l0 = 1.0;
  double l1 = 1.0 - t;
  for (int k = 1; k < n; ++k) {
    double l2 = ((2.0 * k + 1.0 - t) * l1 - k * l0) / (k + 1.0);
    l0 = l1;
    l1 = l2;
  }
  return l1;
}

Polynomial signed_laguerre_radial(int n, int vars, int x_index, int p_index) {
  const auto c = laguerre_coefficients(n);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  Polynomial r(vars);
  for (int k = 0; k <= n; ++k) {
    // (2 (x^2 + p^2))^k = 2^k sum_i C(k,i) x^{2i} p^{2(k-i)}
    double scale = sign * c[k] * std::ldexp(1.0, k);
    double binom = 1.0;
    for (int i = 0; i <= k; ++i) {
      Monomial m{};
      m[x_index] = static_cast<std::uint8_t>(2 * i);
      m[p_index] = static_cast<std::uint8_t>(2 * (k - i));
      r.add(m, scale * binom);
      binom = binom * (k - i) / (i + 1);
    }
  }
  return r;
}

template class BasicPolynomial<double>;
template class BasicPolynomial<std::complex<double>>;
template class GaussianMoments<double>;
template class GaussianMoments<std::complex<double>>;
template double gaussian_expectation<double>(const Polynomial &, const Eigen::VectorXd &,
                                             const Eigen::MatrixXd &);
template std::complex<double> gaussian_expectation<std::complex<double>>(const ComplexPolynomial &,
                                                                         const Eigen::VectorXcd &,
                                                                         const Eigen::MatrixXcd &);
template Polynomial expect_trailing<double>(const Polynomial &, int, const Eigen::MatrixXd &);
template ComplexPolynomial expect_trailing<std::complex<double>>(const ComplexPolynomial &, int,
                                                                 const Eigen::MatrixXcd &);

}  // namespace cvq
