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

#include "cvq/estimation.h"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "cvq/errors.h"

namespace cvq {

namespace {

using Complex = std::complex<double>;
using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;

constexpr double kDegenerate = 1e-12;
constexpr double kPureThreshold = 1e-9;
constexpr double kPurityViolation = 1e-6;
constexpr double kTikhonov = 1e-10;
constexpr double kTikhonovAgreement = 1e-6;
constexpr double kSlopeFloor = 1e-9;
constexpr double kVarianceFloor = 1e-10;
// Below this relative variance the ratio V/m'^2 is 0/0 to working precision.
constexpr double kNearNoiseless = 1e-8;
constexpr double kNoiselessReach = 1e-4;

template <typename M>
M kron(const M &a, const M &b) {
  M out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

template <typename M>
typename M::PlainObject vec(const M &a) {
  return Eigen::Map<const typename M::PlainObject>(a.data(), a.size(), 1);
}

// Per-mode (1/sqrt2)[[1, i], [1, -i]], block diagonal in the interleaved basis.
MatrixC complex_basis(int modes) {
  MatrixC h = MatrixC::Zero(2 * modes, 2 * modes);
  const double s = 1.0 / std::numbers::sqrt2;
  for (int k = 0; k < modes; ++k) {
    h(2 * k, 2 * k) = s;
    h(2 * k, 2 * k + 1) = Complex(0.0, s);
    h(2 * k + 1, 2 * k) = s;
    h(2 * k + 1, 2 * k + 1) = Complex(0.0, -s);
  }
  return h;
}

// Solves m x = b, regularising when m is numerically singular.
template <typename M, typename V, typename Eval>
double solve_regularised(const M &m, const V &b, double sigma_norm, Eval &&eval) {
  Eigen::JacobiSVD<typename M::PlainObject> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto &sv = svd.singularValues();
  if (sv.size() > 0 && sv(sv.size() - 1) > 1e-12 * sv(0)) return eval(V(svd.solve(b)));
  const double eps = kTikhonov * sigma_norm;
  const auto id = M::PlainObject::Identity(m.rows(), m.cols());
  const double f1 = eval(V((m + eps * id).fullPivLu().solve(b)));
  const double f2 = eval(V((m + 0.1 * eps * id).fullPivLu().solve(b)));
  if (!std::isfinite(f1) || std::abs(f1 - f2) > kTikhonovAgreement * std::max(1.0, std::abs(f2))) {
    throw NumericalConditioning("mixed-state Fisher information is ill-conditioned at this point");
  }
  return f2;
}

double binary_term(double p, double dp) {
  const double q = p * (1.0 - p);
  if (p <= kDegenerate || 1.0 - p <= kDegenerate) {
    throw DegenerateBranch("branch probability " + std::to_string(p) + " is degenerate");
  }
  return dp * dp / q;
}

// P' ^2 / (1 - P^2) for a parity mean, with the analytic limit at P = +-1.
double parity_term(const PhiScalar &mean, double phi, double h) {
  const double m = mean(phi);
  const double slope = derivative5(mean, phi, h);
  const double denom = 1.0 - m * m;
  if (denom > kVarianceFloor) return slope * slope / denom;
  const double curv = second_derivative5(mean, phi, 1e-3);
  const double limit = -std::copysign(1.0, m) * curv;
  return std::max(0.0, limit);
}

}  // namespace

double snl(double n_total) {
  if (!(n_total > 0.0) || !std::isfinite(n_total)) throw DomainError("SNL needs a positive photon number");
  return 1.0 / n_total;
}

double hl(double n_total) {
  if (!(n_total > 0.0) || !std::isfinite(n_total)) throw DomainError("HL needs a positive photon number");
  return 1.0 / (n_total * n_total);
}

double phase_variance_error_prop(const PhiScalar &mean, const PhiScalar &variance, double phi, double h) {
  const double m0 = mean(phi);
  const double v0 = variance(phi);
  auto limit_at = [&](double x) {
    const double rough = second_derivative5(mean, x, 1e-3);
    const double hh = 0.01 / std::sqrt(std::abs(rough) + 1.0);
    const double m2 = second_derivative5(mean, x, hh);
    const double v2 = second_derivative5(variance, x, hh);
    if (std::abs(m2) <= kSlopeFloor) throw SignalStationary("signal is flat at phi = " + std::to_string(x));
    return std::max(0.0, v2) / (2.0 * m2 * m2);
  };
  if (v0 <= kNearNoiseless * std::max(1.0, m0 * m0)) {
    // Close to a noiseless point the variance is rounding residue; evaluate the limit there instead.
    const double v1 = derivative5(variance, phi, 1e-3);
    const double v2 = second_derivative5(variance, phi, 1e-3);
    if (v2 > 0.0 && std::abs(v1 / v2) <= kNoiselessReach) {
      const double star = phi - v1 / v2;
      // Only a removable 0/0 when the mean is stationary there as well.
      const double m1 = derivative5(mean, star, h);
      const double m2 = second_derivative5(mean, star, 1e-3);
      if (std::abs(m1) <= std::abs(m2) * kNoiselessReach) return limit_at(star);
    }
  }
  const double slope = derivative5(mean, phi, h);
  if (std::abs(slope) > kSlopeFloor * std::max(1.0, std::abs(m0))) return v0 / (slope * slope);
  if (v0 > kVarianceFloor) {
    throw SignalStationary("signal is stationary at phi = " + std::to_string(phi));
  }
  return limit_at(phi);
}

double phase_variance_error_prop(const PhiMoments &moments, double phi, double h) {
  // Mean and variance are read at the same abscissae; evaluate each once.
  std::vector<std::pair<double, MeasurementMoments>> cache;
  auto at = [&](double x) {
    for (const auto &[k, v] : cache) {
      if (k == x) return v;
    }
    cache.emplace_back(x, moments(x));
    return cache.back().second;
  };
  return phase_variance_error_prop([&](double x) { return at(x).mean; }, [&](double x) { return at(x).variance; },
                                   phi, h);
}

PhiMoments scheme_moments(const GaussianFamily &family, const DetectionScheme &scheme) {
  return [family, scheme](double phi) { return measure(family(phi), scheme); };
}

PhiMoments scheme_moments(const WignerFamily &family, const DetectionScheme &scheme) {
  return [family, scheme](double phi) { return measure(family(phi), scheme); };
}

BranchSet binary_branches(PhiScalar p) {
  BranchSet s;
  s.probabilities.push_back(p);
  s.probabilities.push_back([p](double x) { return 1.0 - p(x); });
  return s;
}

double cfi(const BranchSet &branches, double phi, double h) {
  if (branches.probabilities.empty()) throw DomainError("cfi needs at least one branch");
  double total = 0.0;
  double sum = 0.0;
  for (const auto &p : branches.probabilities) {
    const double v = p(phi);
    sum += v;
    if (v <= kDegenerate) throw DegenerateBranch("branch probability " + std::to_string(v) + " is degenerate");
    const double d = derivative5(p, phi, h);
    total += d * d / v;
  }
  if (branches.complete && std::abs(sum - 1.0) > 1e-9) {
    throw DomainError("branch set declared complete but sums to " + std::to_string(sum));
  }
  return total;
}

double probabilistic_cfi(const PhiScalar &success_probability, const BranchSet &success, const BranchSet &failure,
                         bool include_herald, double phi, double h) {
  const double p = success_probability(phi);
  if (p < 0.0 || p > 1.0) throw DomainError("success probability outside [0,1]");
  double total = 0.0;
  if (p > 0.0) total += p * cfi(success, phi, h);
  if (p < 1.0) total += (1.0 - p) * cfi(failure, phi, h);
  if (include_herald && p > 0.0 && p < 1.0) {
    const double d = derivative5(success_probability, phi, h);
    if (d != 0.0) total += binary_term(p, d);
  }
  return total;
}

double qfi_pure_gaussian(const GaussianFamily &family, double phi, double h) {
  const GaussianState s = family(phi);
  if (std::abs(s.purity() - 1.0) > kPurityViolation) throw PurityViolation("pure-state QFI on a mixed state");
  const Vector dd = derivative5([&](double x) { return Vector(family(x).mean()); }, phi, h);
  const Matrix ds = derivative5([&](double x) { return Matrix(family(x).cov()); }, phi, h);
  const Eigen::LLT<Matrix> llt(s.cov());
  const Matrix a = llt.solve(ds);
  return 2.0 * dd.dot(llt.solve(dd)) + 0.25 * (a * a).trace();
}

double qfi_mixed_gaussian(const GaussianFamily &family, double phi, double h) {
  const GaussianState s = family(phi);
  if (s.purity() >= 1.0 - kPureThreshold) return qfi_pure_gaussian(family, phi, h);
  const int n = 2 * s.modes();
  const Vector dd = derivative5([&](double x) { return Vector(family(x).mean()); }, phi, h);
  const Matrix ds = derivative5([&](double x) { return Matrix(family(x).cov()); }, phi, h);
  const MatrixC hb = complex_basis(s.modes());
  const MatrixC v = hb * (s.cov() / 2.0).cast<Complex>() * hb.adjoint();
  const MatrixC om = hb * symplectic_form(s.modes()).cast<Complex>() * hb.adjoint();
  const MatrixC dv = hb * (ds / 2.0).cast<Complex>() * hb.adjoint();
  const VectorC ddc = hb * dd.cast<Complex>();
  const MatrixC m = kron<MatrixC>(v.transpose(), v) - 0.25 * kron<MatrixC>(om.conjugate(), om);
  const VectorC rhs = vec(dv);
  const double displacement = (ddc.adjoint() * v.fullPivLu().solve(ddc))(0, 0).real();
  auto eval = [&](const VectorC &x) {
    const MatrixC phi_c = Eigen::Map<const MatrixC>(x.data(), n, n);
    return 0.5 * (dv * phi_c).trace().real() + displacement;
  };
  return solve_regularised(m, rhs, s.cov().norm(), eval);
}

double qfi_mixed_gaussian_real(const GaussianFamily &family, double phi, double h) {
  const GaussianState s = family(phi);
  if (s.purity() >= 1.0 - kPureThreshold) return qfi_pure_gaussian(family, phi, h);
  const int n = 2 * s.modes();
  const Vector dd = derivative5([&](double x) { return Vector(family(x).mean()); }, phi, h);
  const Matrix ds = derivative5([&](double x) { return Matrix(family(x).cov()); }, phi, h);
  const Matrix v = s.cov() / 2.0;
  const Matrix dv = ds / 2.0;
  const Matrix om = symplectic_form(s.modes());
  const Matrix m = kron<Matrix>(v, v) - 0.25 * kron<Matrix>(om, om);
  const double displacement = dd.dot(v.llt().solve(dd));
  auto eval = [&](const Vector &x) {
    const Matrix phi_r = Eigen::Map<const Matrix>(x.data(), n, n);
    return 0.5 * (dv * phi_r).trace() + displacement;
  };
  return solve_regularised(m, Vector(vec(dv)), s.cov().norm(), eval);
}

double qfi_pure_wigner(const WignerFamily &family, double phi) {
  const WignerExpr w0 = family(phi).normalized();
  if (std::abs(purity(w0) - 1.0) > kPurityViolation) throw PurityViolation("pure-state QFI on a mixed state");
  const double scale = std::pow(2.0 * std::numbers::pi, w0.modes());
  auto at_step = [&](double h) {
    static constexpr double kOffsets[4] = {-2.0, -1.0, 1.0, 2.0};
    static constexpr double kWeights[4] = {1.0, -8.0, 8.0, -1.0};
    std::vector<WignerExpr> w;
    w.reserve(4);
    for (double k : kOffsets) w.push_back(family(phi + k * h).normalized());
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) total += kWeights[i] * kWeights[j] * overlap_integral(w[i], w[j]);
    }
    return 2.0 * scale * total / (144.0 * h * h);
  };
  const double rough = at_step(1e-3);
  return at_step(0.01 / std::sqrt(std::abs(rough) + 1.0));
}

double snr(const MeasurementMoments &moments, int subtract_injected) {
  if (subtract_injected < 0) throw DomainError("injected photon count must be >= 0");
  if (!(moments.variance > 0.0)) throw DomainError("SNR undefined for zero variance");
  return (moments.mean - subtract_injected) / std::sqrt(moments.variance);
}

double total_parity_information(const HeraldedFamily &success, const HeraldedFamily &failure, ModeIndex mode,
                                double phi, double h) {
  double total = 0.0;
  bool informative = false;
  for (const HeraldedFamily *fam : {&success, &failure}) {
    const HeraldedState at = (*fam)(phi);
    if (at.probability <= 0.0 || !at.state) continue;
    PhiScalar mean = [&](double x) { return parity(*(*fam)(x).state, mode).mean; };
    const double term = parity_term(mean, phi, h);
    if (term > 0.0) informative = true;
    total += at.probability * term;
  }
  if (!informative) throw SignalStationary("parity carries no information in either branch");
  return total;
}

double parity_information(const WignerFamily &family, ModeIndex mode, double phi, double h) {
  PhiScalar mean = [&](double x) { return parity(family(x), mode).mean; };
  const double term = parity_term(mean, phi, h);
  if (!(term > 0.0)) throw SignalStationary("parity carries no information here");
  return term;
}

double total_click_cfi(const WignerFamily &family, const AddSubSpec &spec, double phi, double h) {
  using Probs = Eigen::Matrix<double, 5, 1>;
  auto probs = [&](double x) {
    const BranchPair b = herald_both(family(x), spec);
    if (!b.success.state || !b.failure.state) throw DegenerateBranch("herald branch is improbable");
    Probs p;
    p << b.success.probability, click_probability(*b.success.state, ModeIndex(1)),
        click_probability(*b.success.state, ModeIndex(2)), click_probability(*b.failure.state, ModeIndex(1)),
        click_probability(*b.failure.state, ModeIndex(2));
    return p;
  };
  const Probs p = probs(phi);
  const Probs d = derivative5(probs, phi, h);
  const double pc = p(0);
  return pc * (binary_term(p(1), d(1)) + binary_term(p(2), d(2))) +
         (1.0 - pc) * (binary_term(p(3), d(3)) + binary_term(p(4), d(4))) + binary_term(pc, d(0));
}

}  // namespace cvq
