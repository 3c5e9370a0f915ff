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

#include "cvq/scenario.h"

#include <algorithm>
#include <atomic>
#include <boost/random/binomial_distribution.hpp>
#include <boost/random/discrete_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "cvq/errors.h"
#include "cvq/rng.h"

#ifndef CVQ_VERSION_STRING
#define CVQ_VERSION_STRING "0.0.0"
#endif

namespace cvq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kScanPoints = 36;
constexpr double kPurityTolerance = 1e-6;

GaussianState make_input(const InputSpec &in) {
  switch (in.kind) {
    case InputKind::kVacuum:
      return vacuum_state(1);
    case InputKind::kCoherent:
      return coherent_state(in.alpha, in.theta);
    case InputKind::kThermal:
      return thermal_state(in.n_bar);
    case InputKind::kFock:
      if (in.photons == 0) return vacuum_state(1);
      break;
  }
  throw DomainError("Fock inputs have no Gaussian form");
}

WignerExpr make_input_wigner(const InputSpec &in) {
  if (in.kind == InputKind::kFock) return fock_wigner(in.photons);
  return from_gaussian(make_input(in));
}

SymplecticTransform local_transform(const ModificationSpec &m, int modes) {
  const ModeIndex mode(m.mode);
  if (m.kind == ModKind::kSqueeze) return embed(make_squeezer(m.r, m.theta), {mode}, modes);
  return embed(make_displacement(m.alpha, m.theta), {mode}, modes);
}

using Branches = std::vector<Pipeline::Branch>;

Branches apply_modification(const Branches &in, const ModificationSpec &m, bool with_failures) {
  Branches out;
  const bool herald_op = m.kind == ModKind::kAdd || m.kind == ModKind::kSubtract;
  for (const auto &b : in) {
    if (!herald_op) {
      Pipeline::Branch n = b;
      if (n.state) n.state = apply_symplectic(*n.state, local_transform(m, n.state->modes()));
      out.push_back(std::move(n));
      continue;
    }
    AddSubSpec spec = m.herald;
    spec.mode = ModeIndex(m.mode);
    if (!b.state) {
      out.push_back({0.0, std::nullopt, b.success});
      if (with_failures) out.push_back({0.0, std::nullopt, false});
      continue;
    }
    HeraldedState s = herald(*b.state, spec, Branch::kSuccess, true);
    out.push_back({b.probability * s.probability, std::move(s.state), b.success});
    if (with_failures) {
      HeraldedState f = herald(*b.state, spec, Branch::kFailure, true);
      out.push_back({b.probability * f.probability, std::move(f.state), false});
    }
  }
  return out;
}

double stationary_safe_variance(const Pipeline &p, const DetectionScheme &scheme, double phi) {
  return phase_variance_error_prop([&](double x) { return p.measure_at(x, scheme); }, phi);
}

// Runs fn(i) for i in [0, n) on a pool; rethrows the lowest-index failure.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn &&fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (t == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < t; ++k) pool.emplace_back(worker);
    for (auto &th : pool) th.join();
  }
  for (auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

bool has_snr(DetectionKind k) {
  return k == DetectionKind::kIntensity || k == DetectionKind::kIntensityDifference || k == DetectionKind::kHomodyne;
}

// Click information over every herald outcome, including the heralds themselves.
double click_information(const Pipeline &p, double phi, std::vector<std::string> &warnings) {
  std::vector<DetectionScheme> clicks;
  for (const auto &s : p.config().detection) {
    if (s.kind == DetectionKind::kClick) clicks.push_back(s);
  }
  if (clicks.empty()) throw DomainError("cfi needs at least one click detector");
  const std::size_t stride = clicks.size() + 1;
  auto probs = [&](double x) {
    const auto branches = p.branches_at(x, true);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(branches.size() * stride));
    for (std::size_t b = 0; b < branches.size(); ++b) {
      v(b * stride) = branches[b].probability;
      if (!branches[b].state) continue;
      for (std::size_t d = 0; d < clicks.size(); ++d) {
        v(b * stride + d + 1) = click_probability(*branches[b].state, clicks[d].mode);
      }
    }
    return v;
  };
  const Eigen::VectorXd v = probs(phi);
  const Eigen::VectorXd dv = derivative5(probs, phi, kDefaultStep);
  const std::size_t nb = static_cast<std::size_t>(v.size()) / stride;
  double total = 0.0;
  bool degenerate = false;
  for (std::size_t b = 0; b < nb; ++b) {
    const double pb = v(b * stride);
    if (pb <= 1e-12) continue;
    const double dpb = dv(b * stride);
    total += dpb * dpb / pb;
    for (std::size_t d = 0; d < clicks.size(); ++d) {
      const double q = v(b * stride + d + 1);
      const double dq = dv(b * stride + d + 1);
      if (q * (1.0 - q) <= 1e-12) {
        degenerate = degenerate || dq != 0.0;
        continue;
      }
      total += pb * dq * dq / (q * (1.0 - q));
    }
  }
  if (degenerate) warnings.push_back("cfi: a click detector is deterministic in some branch; its term was skipped");
  return total;
}

std::string describe_error(const std::exception &e) { return e.what(); }

}  // namespace

Pipeline::Pipeline(const ScenarioConfig &config) : config_(config) {
  validate(config_);
  gaussian_ = config_.engine == Engine::kGaussian || (config_.engine == Engine::kAuto && config_.gaussian_only());
  const int n = config_.modes();
  if (gaussian_) {
    std::vector<GaussianState> parts;
    for (const auto &in : config_.inputs) parts.push_back(make_input(in));
    GaussianState s = tensor(parts);
    for (const auto &m : config_.modifications) {
      if (m.stage == Stage::kInput) s = propagate(s, local_transform(m, n));
    }
    gaussian_input_ = s;
    return;
  }
  std::vector<WignerExpr> parts;
  for (const auto &in : config_.inputs) parts.push_back(make_input_wigner(in));
  Branches success{{1.0, tensor(parts), true}};
  Branches all = success;
  for (const auto &m : config_.modifications) {
    if (m.stage != Stage::kInput) continue;
    success = apply_modification(success, m, false);
    all = apply_modification(all, m, true);
  }
  input_success_ = std::move(success);
  input_all_ = std::move(all);
}

GaussianState Pipeline::gaussian_at(double phi) const {
  if (!gaussian_) throw DomainError("scenario is not Gaussian");
  GaussianState s = *gaussian_input_;
  const int n = s.modes();
  if (config_.interferometer) s = propagate(s, make_mzi(phi));
  if (config_.loss.internal_loss > 0.0) s = apply_loss(s, LossSpec{config_.loss.internal_loss, 1.0});
  for (const auto &t : config_.thermal) s = inject_thermal(s, ModeIndex(t.mode), t.n_env, t.transmissivity);
  for (const auto &m : config_.modifications) {
    if (m.stage == Stage::kOutput) s = propagate(s, local_transform(m, n));
  }
  if (config_.loss.detector_efficiency < 1.0) s = apply_loss(s, LossSpec{0.0, config_.loss.detector_efficiency});
  return s;
}

Branches Pipeline::output_stage(const Branch &in, double phi, bool with_failures) const {
  Branch b = in;
  if (b.state) {
    WignerExpr w = *b.state;
    if (config_.interferometer) w = apply_symplectic(w, make_mzi(phi));
    if (config_.loss.internal_loss > 0.0) w = apply_loss(w, LossSpec{config_.loss.internal_loss, 1.0});
    for (const auto &t : config_.thermal) w = inject_thermal(w, ModeIndex(t.mode), t.n_env, t.transmissivity);
    b.state = std::move(w);
  }
  Branches out{b};
  for (const auto &m : config_.modifications) {
    if (m.stage == Stage::kOutput) out = apply_modification(out, m, with_failures);
  }
  if (config_.loss.detector_efficiency < 1.0) {
    for (auto &o : out) {
      if (o.state) o.state = apply_loss(*o.state, LossSpec{0.0, config_.loss.detector_efficiency});
    }
  }
  return out;
}

std::vector<Pipeline::Branch> Pipeline::branches_at(double phi, bool with_failures) const {
  if (gaussian_) return {{1.0, from_gaussian(gaussian_at(phi)), true}};
  Branches out;
  const Branches &src = with_failures ? input_all_ : input_success_;
  for (const auto &in : src) {
    Branches part = output_stage(in, phi, with_failures);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

WignerExpr Pipeline::success_at(double phi) const {
  if (gaussian_) return from_gaussian(gaussian_at(phi));
  Branches b = branches_at(phi, false);
  if (!b.front().state) throw ImprobableBranch("post-selected branch is improbable", b.front().probability);
  return std::move(*b.front().state);
}

double Pipeline::success_probability(double phi) const {
  if (gaussian_) return 1.0;
  return branches_at(phi, false).front().probability;
}

MeasurementMoments Pipeline::measure_at(double phi, const DetectionScheme &scheme) const {
  if (gaussian_) return measure(gaussian_at(phi), scheme);
  return measure(success_at(phi), scheme);
}

double Pipeline::input_mean_photons() const {
  if (gaussian_) return total_mean_photon(*gaussian_input_);
  const auto &b = input_success_.front();
  if (!b.state) return 0.0;
  double total = 0.0;
  for (int k = 1; k <= b.state->modes(); ++k) total += intensity(*b.state, ModeIndex(k)).mean;
  return total;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char *env = std::getenv(kThreadsEnv)) {
    char *end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string scheme_key(const DetectionScheme &s) {
  std::string k = s.name() + "_" + std::to_string(s.mode.value());
  if (s.second_mode) k += "_" + std::to_string(s.second_mode->value());
  return k;
}

std::string version_string() { return CVQ_VERSION_STRING; }

Minimum optimal_phase(const Pipeline &p, const DetectionScheme &scheme) {
  auto f = [&](double x) { return stationary_safe_variance(p, scheme, x); };
  auto safe = [&](double x) {
    try {
      const double v = f(x);
      return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    } catch (const std::exception &) {
      return std::numeric_limits<double>::infinity();
    }
  };
  std::vector<double> seeds = {std::numbers::pi / 2, std::numbers::pi, 3 * std::numbers::pi / 2};
  for (int i = 0; i < kScanPoints; ++i) seeds.push_back((i + 0.5) * kTwoPi / kScanPoints);
  double best_x = seeds.front();
  double best_v = std::numeric_limits<double>::infinity();
  for (double s : seeds) {
    const double v = safe(s);
    if (v < best_v) {
      best_v = v;
      best_x = s;
    }
  }
  if (!std::isfinite(best_v)) throw SignalStationary("no informative operating point for " + scheme.name());
  return minimize_near(f, best_x, 0.0, kTwoPi, 1.5 * kTwoPi / kScanPoints);
}

PointResult evaluate_point(const ScenarioConfig &config) {
  PointResult r;
  const Pipeline p(config);
  auto &rep = r.report;
  const double phi = config.phi;
  rep.phi = phi;
  rep.mean_photons = p.input_mean_photons();
  if (config.interferometer && rep.mean_photons > 0.0) {
    rep.snl = snl(rep.mean_photons);
    rep.hl = hl(rep.mean_photons);
  }
  std::optional<WignerExpr> state;
  try {
    r.herald_probability = p.success_probability(phi);
    state = p.success_at(phi);
  } catch (const ImprobableBranch &e) {
    r.ok = false;
    rep.warnings.push_back(std::string("improbable herald: ") + e.what());
    return r;
  }
  const int added = config.photons_added();
  for (const auto &scheme : config.detection) {
    SchemeEstimate est;
    est.scheme = scheme_key(scheme);
    const MeasurementMoments mom = p.gaussian() ? measure(p.gaussian_at(phi), scheme) : measure(*state, scheme);
    est.mean = mom.mean;
    est.observable_variance = mom.variance;
    if (config.wants("snr") && has_snr(scheme.kind)) {
      if (mom.variance > 0.0) {
        est.snr = snr(mom, scheme.kind == DetectionKind::kIntensity ? added : 0);
      } else {
        est.note = "zero variance";
      }
    }
    if (config.wants("phase_variance")) {
      try {
        est.variance = stationary_safe_variance(p, scheme, phi);
      } catch (const SignalStationary &e) {
        est.note = "stationary";
      } catch (const ImprobableBranch &e) {
        est.note = "improbable near phi";
      }
      if (config.optimize) {
        try {
          const Minimum m = optimal_phase(p, scheme);
          est.optimal_phi = m.x;
          est.optimal_variance = m.value;
        } catch (const SignalStationary &e) {
          rep.warnings.push_back(est.scheme + ": " + describe_error(e));
        }
      }
    }
    rep.schemes.push_back(std::move(est));
  }
  if (config.wants("qfi")) {
    try {
      if (p.gaussian()) {
        rep.qfi = qfi_mixed_gaussian([&](double x) { return p.gaussian_at(x); }, phi);
      } else if (std::abs(purity(*state) - 1.0) <= kPurityTolerance) {
        rep.qfi = qfi_pure_wigner([&](double x) { return p.success_at(x); }, phi);
      } else {
        rep.warnings.push_back("qfi: mixed non-Gaussian state; no QFI route available");
      }
      if (rep.qfi && *rep.qfi > 0.0) rep.qcrb = 1.0 / *rep.qfi;
    } catch (const ImprobableBranch &e) {
      rep.warnings.push_back(std::string("qfi: ") + e.what());
    }
  }
  if (config.wants("cfi")) {
    try {
      rep.cfi = click_information(p, phi, rep.warnings);
    } catch (const DomainError &e) {
      rep.warnings.push_back(std::string("cfi: ") + e.what());
    }
  }
  if (config.wants("distributions")) {
    for (int k = 1; k <= state->modes(); ++k) {
      r.distributions.emplace_back(k, photon_number_distribution(*state, ModeIndex(k), config.photon_cutoff));
    }
  }
  return r;
}

namespace {

RunReport base_report(RunKind kind, const ScenarioConfig &config, const RunOptions &options, ScenarioConfig &effective) {
  effective = config;
  if (options.seed) effective.seed = *options.seed;
  RunReport rep;
  rep.kind = kind;
  rep.version = version_string();
  rep.seed = effective.seed;
  rep.config = to_json(effective);
  return rep;
}

void collect_warnings(RunReport &rep) {
  for (const auto &pt : rep.points) {
    for (const auto &w : pt.report.warnings) rep.warnings.push_back("point " + std::to_string(pt.index) + ": " + w);
  }
}

}  // namespace

RunReport run(const ScenarioConfig &config, const RunOptions &options) {
  ScenarioConfig eff;
  RunReport rep = base_report(RunKind::kRun, config, options, eff);
  rep.points.push_back(evaluate_point(eff));
  collect_warnings(rep);
  return rep;
}

RunReport sweep(const ScenarioConfig &config, const GridSpec &grid, const RunOptions &options) {
  ScenarioConfig eff;
  RunReport rep = base_report(RunKind::kSweep, config, options, eff);
  const std::vector<double> values = grid.values();
  rep.parameter = grid.parameter;
  rep.config["sweep"] = {{"parameter", grid.parameter}, {"start", grid.start}, {"stop", grid.stop}, {"step", grid.step}};
  std::vector<ScenarioConfig> configs;
  configs.reserve(values.size());
  for (double v : values) configs.push_back(with_parameter(eff, grid.parameter, v));
  rep.points.resize(values.size());
  parallel_for(values.size(), resolve_threads(options.threads), [&](std::size_t i) {
    PointResult pt = evaluate_point(configs[i]);
    pt.index = i;
    pt.value = values[i];
    rep.points[i] = std::move(pt);
  });
  collect_warnings(rep);
  return rep;
}

RunReport phase_drift_study(const ScenarioConfig &config, const RunOptions &options) {
  ScenarioConfig eff;
  RunReport rep = base_report(RunKind::kDrift, config, options, eff);
  if (!eff.interferometer) throw ConfigError("interferometer", "phase drift needs the interferometer");
  if (eff.detection.empty()) throw ConfigError("detection", "phase drift needs at least one detection scheme");
  const Pipeline p(eff);
  const std::size_t n = eff.detection.size();
  rep.drift.resize(n);
  parallel_for(n, resolve_threads(options.threads), [&](std::size_t s) {
    const DetectionScheme &scheme = eff.detection[s];
    DriftTrace t;
    t.scheme = scheme_key(scheme);
    const Minimum opt = optimal_phase(p, scheme);
    t.phi_opt = opt.x;
    t.variance_at_opt = opt.value;
    t.sigma = eff.drift.sigma_for(scheme.name());
    std::mt19937_64 rng = make_substream(eff.seed, s);
    boost::random::normal_distribution<double> normal(t.phi_opt, t.sigma);
    const double f = eff.drift.uniform_fraction;
    const double lo = t.phi_opt * (1.0 - f);
    const double hi = t.phi_opt * (1.0 + f);
    boost::random::uniform_real_distribution<double> uniform(std::min(lo, hi), std::max(lo, hi));
    double sum = 0.0;
    int count = 0;
    t.running_mean.reserve(static_cast<std::size_t>(eff.drift.trials));
    for (int k = 0; k < eff.drift.trials; ++k) {
      const double phi = eff.drift.mode == DriftMode::kGaussian ? normal(rng) : uniform(rng);
      try {
        const double v = stationary_safe_variance(p, scheme, phi);
        if (std::isfinite(v)) {
          sum += v;
          ++count;
        } else {
          ++t.skipped;
        }
      } catch (const SignalStationary &) {
        ++t.skipped;
      }
      t.running_mean.push_back(count > 0 ? sum / count : std::numeric_limits<double>::quiet_NaN());
    }
    rep.drift[s] = std::move(t);
  });
  for (const auto &t : rep.drift) {
    if (t.skipped > 0) {
      rep.warnings.push_back(t.scheme + ": " + std::to_string(t.skipped) + " trials landed on stationary points");
    }
  }
  return rep;
}

RunReport simulate_counts(const ScenarioConfig &config, const std::optional<GridSpec> &grid,
                          const RunOptions &options) {
  ScenarioConfig eff;
  RunReport rep = base_report(RunKind::kCounts, config, options, eff);
  const std::optional<GridSpec> g = grid ? grid : eff.grid;
  std::vector<std::optional<double>> values;
  std::vector<ScenarioConfig> configs;
  if (g) {
    rep.parameter = g->parameter;
    rep.config["sweep"] = {{"parameter", g->parameter}, {"start", g->start}, {"stop", g->stop}, {"step", g->step}};
    for (double v : g->values()) {
      values.emplace_back(v);
      configs.push_back(with_parameter(eff, g->parameter, v));
    }
  } else {
    values.emplace_back(std::nullopt);
    configs.push_back(eff);
  }
  const int added = eff.photons_added();
  rep.counts.resize(configs.size());
  parallel_for(configs.size(), resolve_threads(options.threads), [&](std::size_t i) {
    const ScenarioConfig &c = configs[i];
    const Pipeline p(c);
    CountsRow row;
    row.index = i;
    row.value = values[i];
    row.p_success = std::clamp(p.success_probability(c.phi), 0.0, 1.0);
    row.expected_kept = c.counts.trials * row.p_success;
    std::mt19937_64 rng = make_substream(eff.seed, i);
    boost::random::binomial_distribution<std::int64_t, double> binom(c.counts.trials, row.p_success);
    row.kept = binom(rng);
    const DetectionScheme intensity_scheme = DetectionScheme::intensity(c.counts.mode);
    std::optional<WignerExpr> state;
    try {
      state = p.success_at(c.phi);
    } catch (const ImprobableBranch &) {
      row.note = "improbable herald";
    }
    if (state) {
      const MeasurementMoments theory = measure(*state, intensity_scheme);
      row.theory_mean = theory.mean;
      if (theory.variance > 0.0) row.theory_snr = (theory.mean - added) / std::sqrt(theory.variance);
    }
    if (row.kept == 0 || !state) {
      row.flagged = true;
      if (row.note.empty()) row.note = "no kept measurements";
      rep.counts[i] = std::move(row);
      return;
    }
    const PhotonNumberDistribution dist = photon_number_distribution(*state, ModeIndex(c.counts.mode), c.photon_cutoff);
    if (dist.tail > 1e-6) row.note = "distribution tail " + std::to_string(dist.tail) + " beyond cutoff";
    boost::random::discrete_distribution<int, double> sampler(dist.probs.begin(), dist.probs.end());
    double sum = 0.0;
    double sumsq = 0.0;
    for (std::int64_t k = 0; k < row.kept; ++k) {
      const double n = sampler(rng);
      sum += n;
      sumsq += n * n;
    }
    const double kept = static_cast<double>(row.kept);
    const double mean = sum / kept;
    row.sample_mean = mean;
    if (row.kept >= 2) {
      const double var = (sumsq - kept * mean * mean) / (kept - 1.0);
      if (var > 0.0) row.sample_snr = (mean - added) / std::sqrt(var);
    } else {
      row.flagged = true;
      row.note = "a single kept measurement has no spread";
    }
    rep.counts[i] = std::move(row);
  });
  for (const auto &row : rep.counts) {
    if (row.flagged) rep.warnings.push_back("row " + std::to_string(row.index) + ": " + row.note);
  }
  return rep;
}

}  // namespace cvq
