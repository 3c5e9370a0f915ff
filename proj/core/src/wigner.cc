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

#include "cvq/wigner.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "cvq/errors.h"

namespace cvq {

namespace {

constexpr double kPi = std::numbers::pi;
// Absolute rounding budget for projected probabilities before we refuse the result.
constexpr double kProjectionRoundingBudget = 1e-10;

struct Integral {
  double value = 0.0;
  double magnitude = 0.0;
};

double checked_determinant(const Matrix &m, const char *what) {
  if (m.rows() == 0) return 1.0;
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) {
    throw NumericalError(std::string(what) + " is not positive definite");
  }
  double det = 1.0;
  for (int i = 0; i < m.rows(); ++i) det *= llt.matrixL()(i, i);
  return det * det;
}

Matrix sym(const Matrix &m) { return 0.5 * (m + m.transpose()); }

Polynomial unit_poly(int vars) { return Polynomial::constant(vars, 1.0); }

// Integral of a term over all of its variables, plus a cancellation gauge.
Integral integrate_term(const WignerTerm &t) {
  const int d = static_cast<int>(t.mean.size());
  const double gauss = std::pow(kPi, d / 2.0) * std::sqrt(checked_determinant(t.quad, "Gaussian factor"));
  const double scale = t.weight * gauss;
  if (t.poly.is_constant()) {
    const double v = scale * t.poly.constant_term();
    return {v, std::abs(v)};
  }
  Polynomial shifted = t.poly.substitute_affine(Matrix::Identity(d, d), t.mean);
  GaussianMoments<double> moments(t.quad / 2.0);
  Integral r;
  for (const auto &[m, c] : shifted.terms()) {
    const double v = c * moments(m);
    r.value += v;
    r.magnitude += std::abs(v);
  }
  r.value *= scale;
  r.magnitude *= std::abs(scale);
  return r;
}

Integral integrate_all(const std::vector<WignerTerm> &terms) {
  Integral total;
  for (const auto &t : terms) {
    Integral i = integrate_term(t);
    total.value += i.value;
    total.magnitude += i.magnitude;
  }
  return total;
}

Matrix select(const Matrix &m, const std::vector<int> &rows, const std::vector<int> &cols) {
  Matrix r(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < cols.size(); ++j) r(i, j) = m(rows[i], cols[j]);
  }
  return r;
}

Vector select(const Vector &v, const std::vector<int> &rows) {
  Vector r(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) r(i) = v(rows[i]);
  return r;
}

// Integrates the `drop` variables out of a term; the result lives on the `keep` variables.
WignerTerm integrate_out(const WignerTerm &t, const std::vector<int> &keep, const std::vector<int> &drop) {
  const int du = static_cast<int>(keep.size());
  const int dv = static_cast<int>(drop.size());
  WignerTerm r;
  if (du == 0) {
    r.weight = integrate_term(t).value;
    r.poly = unit_poly(0);
    r.mean = Vector(0);
    r.quad = Matrix(0, 0);
    return r;
  }
  const Matrix c = t.quad / 2.0;
  const Matrix cuu = select(c, keep, keep);
  const Matrix cuv = select(c, keep, drop);
  const Matrix cvv = select(c, drop, drop);
  Eigen::LLT<Matrix> llt(cuu);
  if (llt.info() != Eigen::Success) throw NumericalError("marginal covariance not positive definite");
  const Matrix k = llt.solve(cuv).transpose();  // C_vu C_uu^{-1}
  const Matrix s = sym(cvv - k * cuv);
  const double factor = std::pow(2.0 * kPi, dv / 2.0) * std::sqrt(checked_determinant(s, "conditional covariance"));
  const Vector mu_u = select(t.mean, keep);
  const Vector mu_v = select(t.mean, drop);
  r.weight = t.weight * factor;
  r.mean = mu_u;
  r.quad = sym(select(t.quad, keep, keep));

  bool depends_on_dropped = false;
  for (const auto &[m, coef] : t.poly.terms()) {
    for (int v : drop) depends_on_dropped |= (m[v] != 0);
  }
  if (!depends_on_dropped) {
    r.poly = t.poly.drop_variables(keep);
    return r;
  }
  const int d = du + dv;
  std::vector<int> target(d);
  for (int i = 0; i < du; ++i) target[keep[i]] = i;
  for (int j = 0; j < dv; ++j) target[drop[j]] = du + j;
  Polynomial ordered = t.poly.relabel(d, target);
  Matrix b = Matrix::Zero(d, d);
  b.topLeftCorner(du, du).setIdentity();
  b.bottomLeftCorner(dv, du) = k;
  b.bottomRightCorner(dv, dv).setIdentity();
  Vector shift = Vector::Zero(d);
  shift.tail(dv) = mu_v - k * mu_u;
  r.poly = expect_trailing(ordered.substitute_affine(b, shift), du, s);
  return r;
}

// Multiplies the Gaussian factor by exp(-c (x_k^2 + p_k^2)); the polynomial is untouched.
WignerTerm multiply_radial(const WignerTerm &t, int x_row, double c) {
  const int d = static_cast<int>(t.mean.size());
  Matrix qk(d, 2);
  qk.col(0) = t.quad.col(x_row);
  qk.col(1) = t.quad.col(x_row + 1);
  Matrix m = qk.middleRows(x_row, 2) + Matrix::Identity(2, 2) / c;
  const Matrix minv = m.inverse();
  const Vector mu_k = t.mean.segment(x_row, 2);
  WignerTerm r;
  r.weight = t.weight * std::exp(-mu_k.dot(minv * mu_k));
  r.quad = sym(t.quad - qk * minv * qk.transpose());
  r.mean = t.mean - qk * (minv * mu_k);
  r.poly = t.poly;
  return r;
}

// Integral of the product of two terms over all variables.
double product_integral(const WignerTerm &a, const WignerTerm &b) {
  const int d = static_cast<int>(a.mean.size());
  if (d == 0) return a.weight * a.poly.constant_term() * b.weight * b.poly.constant_term();
  const Matrix s = a.quad + b.quad;
  Eigen::LLT<Matrix> llt(s);
  if (llt.info() != Eigen::Success) throw NumericalError("product covariance not positive definite");
  const Vector delta = b.mean - a.mean;
  const double constant = std::exp(-delta.dot(llt.solve(delta)));
  const double det = checked_determinant(a.quad, "term") * checked_determinant(b.quad, "term") /
                     checked_determinant(s, "product");
  double e = a.poly.constant_term() * b.poly.constant_term();
  if (!a.poly.is_constant() || !b.poly.is_constant()) {
    const Matrix q = sym(a.quad * llt.solve(b.quad));
    const Vector mean = a.mean + a.quad * llt.solve(delta);
    e = gaussian_expectation(a.poly * b.poly, mean, Matrix(q / 2.0));
  }
  return a.weight * b.weight * constant * std::pow(kPi, d / 2.0) * std::sqrt(det) * e;
}

std::vector<int> mode_rows(int modes, const std::vector<bool> &keep_mode) {
  std::vector<int> rows;
  for (int k = 0; k < modes; ++k) {
    if (keep_mode[k]) {
      rows.push_back(2 * k);
      rows.push_back(2 * k + 1);
    }
  }
  return rows;
}

std::vector<WignerTerm> integrate_modes(const WignerExpr &expr, const std::vector<bool> &keep_mode) {
  std::vector<bool> drop_mode(keep_mode.size());
  for (size_t i = 0; i < keep_mode.size(); ++i) drop_mode[i] = !keep_mode[i];
  const auto keep = mode_rows(expr.modes(), keep_mode);
  const auto drop = mode_rows(expr.modes(), drop_mode);
  std::vector<WignerTerm> out;
  out.reserve(expr.terms().size());
  for (const auto &t : expr.terms()) out.push_back(integrate_out(t, keep, drop));
  return out;
}

// Unnormalised 2 pi F_n projection with the projected mode integrated out.
std::vector<WignerTerm> fock_projected_terms(const WignerExpr &expr, ModeIndex mode, int n, Integral *mass) {
  const int d = 2 * expr.modes();
  const int x = mode.x_row();
  Polynomial herald = signed_laguerre_radial(n, d, x, x + 1);
  herald *= 2.0;
  std::vector<bool> keep_mode(expr.modes(), true);
  keep_mode[mode.value() - 1] = false;
  const auto keep = mode_rows(expr.modes(), keep_mode);
  const std::vector<int> drop = {x, x + 1};
  std::vector<WignerTerm> out;
  *mass = Integral{};
  for (const auto &t : expr.terms()) {
    WignerTerm w = multiply_radial(t, x, 1.0);
    w.poly = w.poly * herald;
    Integral i = integrate_term(w);
    mass->value += i.value;
    mass->magnitude += i.magnitude;
    out.push_back(integrate_out(w, keep, drop));
  }
  return out;
}

void check_fock_order(int n) {
  if (n < 0 || n > kFockCutoff) {
    throw DomainError("Fock number must lie in [0, " + std::to_string(kFockCutoff) + "]");
  }
}

Projection finish(int modes, std::vector<WignerTerm> terms, double probability, double reference_norm,
                  bool allow_improbable, const std::string &label) {
  Projection p;
  p.probability = probability / reference_norm;
  if (p.probability < -1e-9 || p.probability > 1.0 + 1e-9) {
    throw NumericalError(label + ": probability " + std::to_string(p.probability) + " outside [0,1]");
  }
  p.probability = std::clamp(p.probability, 0.0, 1.0);
  if (p.probability < kImprobableThreshold) {
    if (allow_improbable) return p;
    throw ImprobableBranch(label + ": herald probability below threshold", p.probability);
  }
  WignerExpr reduced(modes, std::move(terms), probability);
  p.state = reduced.normalized();
  return p;
}

}  // namespace

WignerExpr::WignerExpr(int modes, std::vector<WignerTerm> terms) : modes_(modes), terms_(std::move(terms)) {
  if (modes < 0 || 2 * modes > kMaxVariables) throw DomainError("WignerExpr mode count out of range");
  for (const auto &t : terms_) {
    if (t.mean.size() != 2 * modes || t.quad.rows() != 2 * modes || t.poly.vars() != 2 * modes) {
      throw DomainError("WignerExpr term dimension mismatch");
    }
  }
  norm_ = integrate_all(terms_).value;
}

WignerExpr::WignerExpr(int modes, std::vector<WignerTerm> terms, double norm)
    : modes_(modes), terms_(std::move(terms)), norm_(norm) {
  if (modes < 0 || 2 * modes > kMaxVariables) throw DomainError("WignerExpr mode count out of range");
}

bool WignerExpr::is_gaussian() const { return terms_.size() == 1 && terms_[0].poly.is_constant(); }

double WignerExpr::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != 2 * modes_) throw DomainError("evaluate: point dimension mismatch");
  Eigen::Map<const Vector> point(x.data(), x.size());
  double total = 0.0;
  for (const auto &t : terms_) {
    if (modes_ == 0) {
      total += t.weight * t.poly.constant_term();
      continue;
    }
    const Vector delta = point - t.mean;
    const double exponent = delta.dot(t.quad.llt().solve(delta));
    total += t.weight * t.poly.evaluate(x) * std::exp(-exponent);
  }
  return total;
}

WignerExpr WignerExpr::normalized() const {
  if (!(norm_ > 0.0)) throw NumericalError("cannot normalise an expression with non-positive mass");
  return scaled(1.0 / norm_);
}

WignerExpr WignerExpr::scaled(double factor) const {
  std::vector<WignerTerm> t = terms_;
  for (auto &term : t) term.weight *= factor;
  return WignerExpr(modes_, std::move(t), norm_ * factor);
}

WignerExpr from_gaussian(const GaussianState &state) {
  const int n = state.modes();
  WignerTerm t;
  t.weight = 1.0 / (std::pow(kPi, n) * std::sqrt(checked_determinant(state.cov(), "covariance")));
  t.poly = unit_poly(2 * n);
  t.mean = state.mean();
  t.quad = state.cov();
  return WignerExpr(n, {t});
}

WignerExpr fock_wigner(int n) {
  check_fock_order(n);
  WignerTerm t;
  t.weight = 1.0 / kPi;
  t.poly = signed_laguerre_radial(n, 2, 0, 1);
  t.mean = Vector::Zero(2);
  t.quad = Matrix::Identity(2, 2);
  // The analytic sum for the norm cancels catastrophically at large n; it is exactly one.
  return WignerExpr(1, {t}, 1.0);
}

WignerExpr tensor(std::span<const WignerExpr> parts) {
  if (parts.empty()) throw DomainError("tensor needs at least one expression");
  std::vector<WignerTerm> acc = parts[0].terms();
  int modes = parts[0].modes();
  double norm = parts[0].norm();
  for (size_t p = 1; p < parts.size(); ++p) {
    const auto &next = parts[p];
    const int d1 = 2 * modes;
    const int d2 = 2 * next.modes();
    std::vector<int> first(d1), second(d2);
    for (int i = 0; i < d1; ++i) first[i] = i;
    for (int i = 0; i < d2; ++i) second[i] = d1 + i;
    std::vector<WignerTerm> out;
    for (const auto &a : acc) {
      Polynomial pa = a.poly.relabel(d1 + d2, first);
      for (const auto &b : next.terms()) {
        WignerTerm t;
        t.weight = a.weight * b.weight;
        t.poly = pa * b.poly.relabel(d1 + d2, second);
        t.mean = Vector(d1 + d2);
        t.mean << a.mean, b.mean;
        t.quad = Matrix::Zero(d1 + d2, d1 + d2);
        t.quad.topLeftCorner(d1, d1) = a.quad;
        t.quad.bottomRightCorner(d2, d2) = b.quad;
        out.push_back(std::move(t));
      }
    }
    acc = std::move(out);
    modes += next.modes();
    norm *= next.norm();
  }
  return WignerExpr(modes, std::move(acc), norm);
}

WignerExpr tensor(std::initializer_list<WignerExpr> parts) {
  return tensor(std::span<const WignerExpr>(parts.begin(), parts.size()));
}

WignerExpr add(const WignerExpr &a, const WignerExpr &b) {
  if (a.modes() != b.modes()) throw DomainError("add: mode count mismatch");
  std::vector<WignerTerm> t = a.terms();
  t.insert(t.end(), b.terms().begin(), b.terms().end());
  return WignerExpr(a.modes(), std::move(t), a.norm() + b.norm());
}

WignerExpr apply_symplectic(const WignerExpr &expr, const SymplecticTransform &f) {
  if (f.modes() != expr.modes()) throw DomainError("apply_symplectic: dimension mismatch");
  const SymplecticTransform inv = f.inverse();
  std::vector<WignerTerm> out;
  out.reserve(expr.terms().size());
  for (const auto &t : expr.terms()) {
    WignerTerm r;
    r.weight = t.weight;
    r.mean = f.apply(t.mean);
    r.quad = sym(f.matrix() * t.quad * f.matrix().transpose());
    r.poly = t.poly.is_constant() ? t.poly : t.poly.substitute_affine(inv.matrix(), inv.shift());
    out.push_back(std::move(r));
  }
  return WignerExpr(expr.modes(), std::move(out), expr.norm());
}

double expectation(const WignerExpr &expr, const Polynomial &observable) {
  if (observable.vars() != 2 * expr.modes()) throw DomainError("expectation: observable dimension mismatch");
  double total = 0.0;
  for (const auto &t : expr.terms()) {
    WignerTerm w = t;
    w.poly = t.poly * observable;
    total += integrate_term(w).value;
  }
  return total;
}

WignerExpr inject_thermal(const WignerExpr &expr, ModeIndex mode, double n_env, double transmissivity) {
  mode.check(expr.modes());
  if (!(transmissivity >= 0.0 && transmissivity <= 1.0)) throw DomainError("transmissivity must lie in [0,1]");
  const int n = expr.modes();
  if (transmissivity == 1.0) return expr;
  const WignerExpr joint = tensor({expr, from_gaussian(thermal_state(n_env))});
  const WignerExpr mixed = apply_symplectic(joint, embed(make_beam_splitter(transmissivity), {mode, ModeIndex(n + 1)}, n + 1));
  return marginalize(mixed, ModeIndex(n + 1));
}

WignerExpr apply_loss_explicit(const WignerExpr &expr, ModeIndex mode, double transmissivity) {
  return inject_thermal(expr, mode, 0.0, transmissivity);
}

WignerExpr apply_loss(const WignerExpr &expr, const LossSpec &spec) {
  spec.validate();
  const double eta = 1.0 - spec.total_loss();
  WignerExpr out = expr;
  for (int k = 1; k <= expr.modes(); ++k) out = apply_loss_explicit(out, ModeIndex(k), eta);
  return out;
}

double moment(const WignerExpr &expr, const Monomial &exponents) {
  Polynomial mono(2 * expr.modes());
  mono.add(exponents, 1.0);
  return expectation(expr, mono);
}

WignerExpr marginalize(const WignerExpr &expr, ModeIndex mode) {
  mode.check(expr.modes());
  if (expr.modes() < 2) throw DomainError("marginalize needs at least two modes");
  std::vector<bool> keep(expr.modes(), true);
  keep[mode.value() - 1] = false;
  return WignerExpr(expr.modes() - 1, integrate_modes(expr, keep), expr.norm());
}

WignerExpr keep_modes(const WignerExpr &expr, std::span<const ModeIndex> keep_list) {
  std::vector<bool> keep(expr.modes(), false);
  for (const auto &m : keep_list) {
    m.check(expr.modes());
    keep[m.value() - 1] = true;
  }
  int kept = 0;
  for (bool k : keep) kept += k;
  if (kept == expr.modes()) return expr;
  return WignerExpr(kept, integrate_modes(expr, keep), expr.norm());
}

WignerExpr keep_mode(const WignerExpr &expr, ModeIndex keep) {
  return keep_modes(expr, std::span<const ModeIndex>(&keep, 1));
}

Projection project_fock(const WignerExpr &expr, ModeIndex mode, int n, bool allow_improbable) {
  mode.check(expr.modes());
  check_fock_order(n);
  Integral mass;
  auto terms = fock_projected_terms(expr, mode, n, &mass);
  if (mass.magnitude * 4.0 * std::numeric_limits<double>::epsilon() > kProjectionRoundingBudget * expr.norm()) {
    throw NumericalConditioning("Fock projection onto n=" + std::to_string(n) +
                                " loses too many digits to cancellation");
  }
  return finish(expr.modes() - 1, std::move(terms), mass.value, expr.norm(), allow_improbable,
                "Fock " + std::to_string(n) + " on mode " + std::to_string(mode.value()));
}

Projection project_not_fock(const WignerExpr &expr, ModeIndex mode, int n, bool allow_improbable) {
  mode.check(expr.modes());
  check_fock_order(n);
  Integral mass;
  auto projected = fock_projected_terms(expr, mode, n, &mass);
  if (mass.magnitude * 4.0 * std::numeric_limits<double>::epsilon() > kProjectionRoundingBudget * expr.norm()) {
    throw NumericalConditioning("complement projection loses too many digits to cancellation");
  }
  std::vector<bool> keep(expr.modes(), true);
  keep[mode.value() - 1] = false;
  std::vector<WignerTerm> terms = integrate_modes(expr, keep);
  for (auto &t : projected) {
    t.weight = -t.weight;
    terms.push_back(std::move(t));
  }
  return finish(expr.modes() - 1, std::move(terms), expr.norm() - mass.value, expr.norm(), allow_improbable,
                "not Fock " + std::to_string(n) + " on mode " + std::to_string(mode.value()));
}

Projection project_click(const WignerExpr &expr, ModeIndex mode, bool allow_improbable) {
  return project_not_fock(expr, mode, 0, allow_improbable);
}

Projection project_no_click(const WignerExpr &expr, ModeIndex mode, bool allow_improbable) {
  return project_fock(expr, mode, 0, allow_improbable);
}

double vacuum_probability(const WignerExpr &expr, ModeIndex mode) {
  mode.check(expr.modes());
  Integral mass;
  fock_projected_terms(expr, mode, 0, &mass);
  return mass.value / expr.norm();
}

std::complex<double> generating_function(const WignerExpr &expr, ModeIndex mode, std::complex<double> l) {
  using C = std::complex<double>;
  mode.check(expr.modes());
  if (std::abs(l) >= 1.0) throw DomainError("complex generating function needs |l| < 1");
  const WignerExpr marginal = keep_mode(expr, mode);
  const C cprime = (1.0 - l) / (1.0 + l);
  C total = 0.0;
  for (const auto &t : marginal.terms()) {
    const Eigen::Matrix2cd q = t.quad.cast<C>();
    const Eigen::Vector2cd mu = t.mean.cast<C>();
    const Eigen::Matrix2cd minv = (q + Eigen::Matrix2cd::Identity() / cprime).inverse();
    const Eigen::Matrix2cd qn = q - q * minv * q;
    const Eigen::Vector2cd mn = mu - q * (minv * mu);
    const C constant = std::exp(-(mu.transpose() * minv * mu)(0, 0));
    Eigen::SelfAdjointEigenSolver<Matrix> eig(t.quad, Eigen::EigenvaluesOnly);
    C root = 1.0;
    for (int i = 0; i < 2; ++i) root *= 1.0 / std::sqrt(1.0 / eig.eigenvalues()(i) + cprime);
    C e = t.poly.constant_term();
    if (!t.poly.is_constant()) {
      Eigen::MatrixXcd cov = qn / 2.0;
      Eigen::VectorXcd mean = mn;
      e = gaussian_expectation(t.poly.to_complex(), mean, cov);
    }
    total += t.weight * kPi * root * constant * e;
  }
  return 2.0 / (1.0 + l) * total / marginal.norm();
}

double generating_function(const WignerExpr &expr, ModeIndex mode, double l) {
  if (!(l > -1.0) || l > 1.0) throw DomainError("generating function requires -1 < l <= 1");
  if (l == 1.0) {
    mode.check(expr.modes());
    return 1.0;
  }
  return generating_function(expr, mode, std::complex<double>(l, 0.0)).real();
}

double PhotonNumberDistribution::mean() const {
  double m = 0.0;
  for (size_t n = 0; n < probs.size(); ++n) m += static_cast<double>(n) * probs[n];
  return m;
}

PhotonNumberDistribution photon_number_distribution(const WignerExpr &expr, ModeIndex mode, int n_max) {
  mode.check(expr.modes());
  if (n_max < 0 || n_max > kFockCutoff) throw DomainError("n_max out of range");
  // Cauchy integral of G on a circle of radius rho: stable where direct Laguerre projection
  // would cancel catastrophically at large n.
  // Aliasing is bounded by rho^samples and rounding grows like rho^-n; 16 samples per order keeps
  // both near 1e-16 and 10 respectively.
  const int samples = std::max(256, 16 * (n_max + 1));
  const double rho = std::exp(std::log(1e-16) / samples);
  const WignerExpr marginal = keep_mode(expr, mode);
  std::vector<std::complex<double>> g(samples);
  for (int j = 0; j < samples; ++j) {
    const double angle = 2.0 * kPi * j / samples;
    g[j] = generating_function(marginal, ModeIndex(1), std::polar(rho, angle));
  }
  PhotonNumberDistribution dist;
  dist.n_max = n_max;
  dist.probs.resize(n_max + 1);
  double sum = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < samples; ++j) acc += g[j] * std::polar(1.0, -2.0 * kPi * static_cast<double>(j) * n / samples);
    double p = acc.real() / samples / std::pow(rho, n);
    if (p < -1e-9 || p > 1.0 + 1e-9) {
      throw NumericalError("photon-number probability " + std::to_string(p) + " outside [0,1] at n=" +
                           std::to_string(n));
    }
    p = std::clamp(p, 0.0, 1.0);
    dist.probs[n] = p;
    sum += p;
  }
  dist.tail = 1.0 - sum;
  if (dist.tail < -1e-9) throw NumericalError("photon-number distribution exceeds unit mass");
  dist.tail = std::max(dist.tail, 0.0);
  return dist;
}

double overlap_integral(const WignerExpr &a, const WignerExpr &b) {
  if (a.modes() != b.modes()) throw DomainError("overlap_integral: mode count mismatch");
  double total = 0.0;
  for (const auto &ta : a.terms()) {
    for (const auto &tb : b.terms()) total += product_integral(ta, tb);
  }
  return total;
}

double purity(const WignerExpr &expr) {
  const double n = expr.norm();
  return std::pow(2.0 * kPi, expr.modes()) * overlap_integral(expr, expr) / (n * n);
}

void write_grid_csv(const WignerExpr &expr, ModeIndex mode, double x_min, double x_max, int nx, double p_min,
                    double p_max, int np, std::ostream &out) {
  if (nx < 2 || np < 2) throw DomainError("grid needs at least two points per axis");
  const WignerExpr marginal = keep_mode(expr, mode).normalized();
  char buf[96];
  out << "x,p,W\n";
  for (int i = 0; i < nx; ++i) {
    const double x = x_min + (x_max - x_min) * i / (nx - 1);
    for (int j = 0; j < np; ++j) {
      const double p = p_min + (p_max - p_min) * j / (np - 1);
      const double pt[2] = {x, p};
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", x, p, marginal.evaluate(pt));
      out << buf;
    }
  }
}

}  // namespace cvq
