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

#include "cvq/closed_forms.h"

#include <cmath>
#include <numbers>

#include "cvq/errors.h"
#include "cvq/polynomial.h"

namespace cvq {

namespace {

void check_nonneg(double v, const char *what) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be finite and >= 0");
}

void check_t(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("transmissivity must lie in [0,1]");
}

void check_m(int m, int lo) {
  if (m < lo) throw DomainError("photon number out of range");
}

double cos_half_sq(double phi) {
  if (!std::isfinite(phi)) throw DomainError("phase must be finite");
  const double c = std::cos(phi / 2.0);
  return c * c;
}

}  // namespace

double spacs_mean_n(double a2, int m, double t) {
  check_nonneg(a2, "|alpha|^2");
  check_m(m, 0);
  check_t(t);
  const double x = -t * a2;
  if (m == 0) return t * a2;
  return t * a2 + 2.0 * m - m * laguerre(m - 1, x) / laguerre(m, x);
}

double spacs_second_moment(double a2, int m, double t) {
  check_nonneg(a2, "|alpha|^2");
  check_m(m, 0);
  check_t(t);
  const double x = -t * a2;
  const double lm = laguerre(m, x);
  return ((m + 2.0) * (m + 1.0) * laguerre(m + 2, x) - 3.0 * (m + 1.0) * laguerre(m + 1, x) + lm) / lm;
}

double spacs_prob(double a2, int m, double t) {
  check_nonneg(a2, "|alpha|^2");
  check_m(m, 0);
  check_t(t);
  return std::pow(1.0 - t, m) * std::exp(a2 * (t - 1.0)) * laguerre(m, -t * a2);
}

double spacs_snr(double a2, int m, double t) {
  const double mean = spacs_mean_n(a2, m, t);
  const double var = spacs_second_moment(a2, m, t) - mean * mean;
  if (!(var > 0.0)) throw DomainError("SNR undefined for zero variance");
  return (mean - m) / std::sqrt(var);
}

double spsts_mean_n(double n_bar, int m, double t) {
  check_nonneg(n_bar, "n_bar");
  check_m(m, 0);
  check_t(t);
  return (m + 1.0) * n_bar * t / (n_bar * (1.0 - t) + 1.0);
}

double spsts_prob(double n_bar, int m, double t) {
  check_nonneg(n_bar, "n_bar");
  check_m(m, 0);
  check_t(t);
  const double u = n_bar * (1.0 - t);
  return std::pow(u, m) / std::pow(u + 1.0, m + 1);
}

double spsts_snr(double n_bar, int m, double t) {
  check_m(m, 0);
  check_t(t);
  return std::sqrt(t * (m + 1.0)) * thermal_snr(n_bar);
}

double thermal_snr(double n_bar) {
  check_nonneg(n_bar, "n_bar");
  if (n_bar == 0.0) throw DomainError("SNR undefined for zero variance");
  return std::sqrt(n_bar / (n_bar + 1.0));
}

double mzi_sub_prob(double n_bar, int m, double t, double phi) {
  return spsts_prob(n_bar * cos_half_sq(phi), m, t);
}

double mzi_sub_prob_click(double n_bar, double t, double phi) {
  check_nonneg(n_bar, "n_bar");
  check_t(t);
  return 1.0 - 1.0 / (1.0 + n_bar * cos_half_sq(phi) * (1.0 - t));
}

double mzi_sub_mean_n(double n_bar, int m, double t, double phi) {
  return spsts_mean_n(n_bar * cos_half_sq(phi), m, t);
}

double mzi_sub_mean_n_click(double n_bar, double t, double phi) {
  check_nonneg(n_bar, "n_bar");
  check_t(t);
  const double n = n_bar * cos_half_sq(phi);
  return t * n * (n * (t - 1.0) - 2.0) / (n * (t - 1.0) - 1.0);
}

double mzi_sub_snr(double n_bar, int m, double t, double phi) {
  check_nonneg(n_bar, "n_bar");
  check_m(m, 0);
  check_t(t);
  const double c2 = cos_half_sq(phi);
  const double denom = std::sqrt(n_bar * c2 + 1.0);
  if (c2 == 0.0 || n_bar == 0.0) throw DomainError("SNR undefined for zero variance");
  return std::sqrt(c2) * std::sqrt(t * (m + 1.0) * n_bar) / denom;
}

double reference_stats(ReferenceKind kind, const ReferenceParams &p) {
  switch (kind) {
    case ReferenceKind::kSpacsMeanN:
      return spacs_mean_n(p.intensity, p.m, p.transmissivity);
    case ReferenceKind::kSpacsSecondMoment:
      return spacs_second_moment(p.intensity, p.m, p.transmissivity);
    case ReferenceKind::kSpacsProb:
      return spacs_prob(p.intensity, p.m, p.transmissivity);
    case ReferenceKind::kSpacsSnr:
      return spacs_snr(p.intensity, p.m, p.transmissivity);
    case ReferenceKind::kSpstsMeanN:
      return spsts_mean_n(p.intensity, p.m, p.transmissivity);
    case ReferenceKind::kSpstsProb:
      return spsts_prob(p.intensity, p.m, p.transmissivity);
    case ReferenceKind::kSpstsSnr:
      return spsts_snr(p.intensity, p.m, p.transmissivity);
    case ReferenceKind::kMziSubProb:
      return mzi_sub_prob(p.intensity, p.m, p.transmissivity, p.phi);
    case ReferenceKind::kMziSubProbClick:
      return mzi_sub_prob_click(p.intensity, p.transmissivity, p.phi);
    case ReferenceKind::kMziSubMeanN:
      return mzi_sub_mean_n(p.intensity, p.m, p.transmissivity, p.phi);
    case ReferenceKind::kMziSubMeanNClick:
      return mzi_sub_mean_n_click(p.intensity, p.transmissivity, p.phi);
    case ReferenceKind::kMziSubSnr:
      return mzi_sub_snr(p.intensity, p.m, p.transmissivity, p.phi);
  }
  throw DomainError("unknown reference kind");
}

ReferenceKind parse_reference_kind(const std::string &name) {
  static const std::pair<const char *, ReferenceKind> kNames[] = {
      {"spacs_mean_n", ReferenceKind::kSpacsMeanN},
      {"spacs_second_moment", ReferenceKind::kSpacsSecondMoment},
      {"spacs_prob", ReferenceKind::kSpacsProb},
      {"spacs_snr", ReferenceKind::kSpacsSnr},
      {"spsts_mean_n", ReferenceKind::kSpstsMeanN},
      {"spsts_prob", ReferenceKind::kSpstsProb},
      {"spsts_snr", ReferenceKind::kSpstsSnr},
      {"mzi_sub_prob", ReferenceKind::kMziSubProb},
      {"mzi_sub_prob_click", ReferenceKind::kMziSubProbClick},
      {"mzi_sub_mean_n", ReferenceKind::kMziSubMeanN},
      {"mzi_sub_mean_n_click", ReferenceKind::kMziSubMeanNClick},
      {"mzi_sub_snr", ReferenceKind::kMziSubSnr},
  };
  for (const auto &[n, k] : kNames) {
    if (name == n) return k;
  }
  throw DomainError("unknown reference kind '" + name + "'");
}

double qcrb_lossless(double a2, double r) {
  check_nonneg(a2, "|alpha|^2");
  check_nonneg(r, "r");
  const double f = a2 * std::exp(2.0 * r) + std::sinh(r) * std::sinh(r);
  if (f == 0.0) throw DomainError("no phase information for vacuum inputs");
  return 1.0 / f;
}

double qcrb_lossy_printed(double a2, double r, double loss) {
  check_nonneg(a2, "|alpha|^2");
  check_nonneg(r, "r");
  if (!(loss >= 0.0 && loss <= 1.0)) throw DomainError("loss must lie in [0,1]");
  const double a = 1.0 - loss;
  const double b = std::sinh(r);
  const double c = std::cosh(r);
  const double ch2 = std::cosh(2.0 * r);
  const double ch4 = std::cosh(4.0 * r);
  const double sh2 = std::sinh(2.0 * r);
  const double inner = 4.0 * a * std::pow(b, 4) * (a - a * ch2 - 1.0) +
                       b * b * (2.0 - a - 4.0 * a * a2 + 2.0 * ch2 + a * ch4) - a * std::pow(sh2, 3);
  const double num = a * (a * b - c) * (a * b + c) * std::exp(r) *
                     (8.0 * std::pow(a, 3) * std::pow(b, 5) * c + 4.0 * a2 * c * c + a * inner);
  const double q = 1.0 + a * a - ch2 * (a * a - 1.0);
  const double den = (b - 2.0 * a * b + c) * q * q;
  return -num / den;
}

double min_variance_parity(double a2, double r) { return qcrb_lossless(a2, r); }

double min_variance_homodyne(double a2, double r) {
  check_nonneg(a2, "|alpha|^2");
  check_nonneg(r, "r");
  if (a2 == 0.0) throw DomainError("homodyne needs a coherent amplitude");
  return 1.0 / (a2 * std::exp(2.0 * r));
}

double min_variance_intensity_difference(double a2, double r) {
  check_nonneg(a2, "|alpha|^2");
  check_nonneg(r, "r");
  const double e2 = std::exp(2.0 * r);
  const double d = std::cosh(2.0 * r) - 2.0 * a2 - 1.0;
  if (d == 0.0) throw DomainError("intensity difference bound is singular here");
  return (4.0 * a2 + (e2 - 1.0) * (e2 - 1.0)) / (e2 * d * d);
}

double min_variance_intensity(double a2, double r) {
  check_nonneg(a2, "|alpha|^2");
  check_nonneg(r, "r");
  const double a = std::sqrt(a2);
  const double d = std::cosh(2.0 * r) - 2.0 * a2 - 1.0;
  if (d == 0.0) throw DomainError("intensity bound is singular here");
  return (4.0 * a2 * std::exp(-2.0 * r) + 2.0 * std::cosh(2.0 * r) + 4.0 * std::numbers::sqrt2 * a * std::sinh(2.0 * r) -
          2.0) /
         (d * d);
}

double optimal_phase_parity() { return std::numbers::pi; }
double optimal_phase_homodyne() { return std::numbers::pi; }
double optimal_phase_intensity_difference() { return std::numbers::pi / 2.0; }

double optimal_phase_intensity(double a2, double r) {
  check_nonneg(a2, "|alpha|^2");
  if (!(r > 0.0)) throw DomainError("intensity optimum needs r > 0");
  return 2.0 * std::atan(std::pow(2.0, 0.25) * std::sqrt(std::sqrt(a2) / std::sinh(2.0 * r)));
}

}  // namespace cvq
