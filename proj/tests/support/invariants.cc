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

#include "invariants.h"

#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "cvq/conditional.h"
#include "cvq/errors.h"
#include "cvq/estimation.h"
#include "cvq/measurements.h"
#include "cvq/rng.h"

namespace cvq::testing {

void PropertyResult::record(bool pass, double violation, const std::string &what) {
  ++cases;
  worst = std::max(worst, violation);
  if (!pass) {
    if (failures == 0) first_failure = what;
    ++failures;
  }
}

double uniform(std::mt19937_64 &rng, double lo, double hi) {
  return boost::random::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64 &rng, int lo, int hi) {
  return boost::random::uniform_int_distribution<int>(lo, hi)(rng);
}

SymplecticTransform random_transform(std::mt19937_64 &rng, int modes, int elements) {
  SymplecticTransform f = SymplecticTransform::identity(modes);
  for (int e = 0; e < elements; ++e) {
    const int kind = uniform_int(rng, 0, modes > 1 ? 4 : 2);
    const ModeIndex a(uniform_int(rng, 1, modes));
    SymplecticTransform g = SymplecticTransform::identity(modes);
    switch (kind) {
      case 0:
        g = embed(make_phase_shifter(uniform(rng, 0.0, 2.0 * std::numbers::pi)), {a}, modes);
        break;
      case 1:
        g = embed(make_squeezer(uniform(rng, 0.0, 0.8), uniform(rng, 0.0, 2.0 * std::numbers::pi)), {a}, modes);
        break;
      case 2:
        g = embed(make_displacement(uniform(rng, 0.0, 1.2), uniform(rng, 0.0, 2.0 * std::numbers::pi)), {a}, modes);
        break;
      default: {
        int b = uniform_int(rng, 1, modes - 1);
        if (b >= a.value()) ++b;
        if (kind == 3) {
          g = embed(make_beam_splitter(uniform(rng, 0.0, 1.0)), {a, ModeIndex(b)}, modes);
        } else {
          g = embed(make_two_mode_squeezer(uniform(rng, 0.0, 0.5), uniform(rng, 0.0, 2.0 * std::numbers::pi)),
                    {a, ModeIndex(b)}, modes);
        }
      }
    }
    f = compose(g, f);
  }
  return f;
}

GaussianState random_gaussian_state(std::mt19937_64 &rng, int modes) {
  std::vector<GaussianState> parts;
  for (int k = 0; k < modes; ++k) parts.push_back(thermal_state(uniform(rng, 0.0, 0.8)));
  return propagate(tensor(parts), random_transform(rng, modes, uniform_int(rng, 1, 4)));
}

WignerExpr random_heralded_state(std::mt19937_64 &rng, int modes, double *success_plus_failure) {
  for (;;) {
    const WignerExpr in = from_gaussian(random_gaussian_state(rng, modes));
    AddSubSpec spec;
    spec.operation = uniform_int(rng, 0, 1) ? Operation::kAdd : Operation::kSubtract;
    spec.mode = ModeIndex(1);
    spec.m = uniform_int(rng, 1, 2);
    spec.transmissivity = uniform(rng, 0.3, 0.95);
    const BranchPair both = herald_both(in, spec);
    if (!both.success.state || both.success.probability < 1e-8) continue;
    if (success_plus_failure) *success_plus_failure = both.success.probability + both.failure.probability;
    return *both.success.state;
  }
}

PropertyResult check_symplectic(std::uint64_t seed, int cases) {
  PropertyResult res{"symplectic"};
  auto rng = make_substream(seed, 1);
  for (int c = 0; c < cases; ++c) {
    const int modes = uniform_int(rng, 1, 4);
    const SymplecticTransform f = random_transform(rng, modes, uniform_int(rng, 1, 6));
    const double scale = std::max(1.0, f.matrix().squaredNorm());
    const double defect = symplectic_defect(f.matrix()) / scale;
    const SymplecticTransform id = compose(f, f.inverse());
    const double inv = (id.matrix() - Matrix::Identity(2 * modes, 2 * modes)).cwiseAbs().maxCoeff() / scale +
                       id.shift().cwiseAbs().maxCoeff() / std::sqrt(scale);
    // A pure state stays pure and physical under any symplectic map.
    const GaussianState s = propagate(vacuum_state(modes), f);
    const double purity_err = std::abs(s.purity() - 1.0);
    const double margin = CovarianceMatrix::bona_fide_margin(s.cov());
    const double violation = std::max({defect / 1e-12, inv / 1e-10, purity_err / 1e-8, -margin / 1e-9});
    std::ostringstream what;
    what << "case " << c << ": defect " << defect << ", inverse " << inv << ", purity " << purity_err << ", margin "
         << margin;
    res.record(violation <= 1.0, violation, what.str());
  }
  return res;
}

PropertyResult check_normalization(std::uint64_t seed, int cases) {
  PropertyResult res{"normalization"};
  auto rng = make_substream(seed, 2);
  for (int c = 0; c < cases; ++c) {
    const int modes = uniform_int(rng, 1, 2);
    const GaussianState g = random_gaussian_state(rng, modes);
    const double gauss_norm = std::abs(from_gaussian(g).norm() - 1.0);
    double branch_sum = 0.0;
    const WignerExpr h = random_heralded_state(rng, modes, &branch_sum);
    const double herald_norm = std::abs(h.norm() - 1.0);
    const double branch_err = std::abs(branch_sum - 1.0);
    const PhotonNumberDistribution d = photon_number_distribution(h, ModeIndex(1));
    double total = d.tail;
    for (double p : d.probs) total += p;
    const double dist_err = std::abs(total - 1.0);
    const double violation = std::max({gauss_norm / 1e-10, herald_norm / 1e-9, branch_err / 1e-9, dist_err / 1e-8});
    std::ostringstream what;
    what << "case " << c << ": gaussian " << gauss_norm << ", herald " << herald_norm << ", branches " << branch_err
         << ", distribution " << dist_err;
    res.record(violation <= 1.0, violation, what.str());
  }
  return res;
}

PropertyResult check_positivity(std::uint64_t seed, int cases) {
  PropertyResult res{"positivity"};
  auto rng = make_substream(seed, 3);
  for (int c = 0; c < cases; ++c) {
    const int modes = uniform_int(rng, 1, 2);
    const GaussianState g = random_gaussian_state(rng, modes);
    const WignerExpr h = random_heralded_state(rng, modes);
    double violation = 0.0;
    violation = std::max(violation, -CovarianceMatrix::bona_fide_margin(g.cov()) / 1e-9);
    violation = std::max(violation, (g.purity() - 1.0) / 1e-9);
    const double pur = purity(h);
    violation = std::max(violation, (pur - 1.0) / 1e-8);
    violation = std::max(violation, pur <= 0.0 ? 2.0 : 0.0);
    for (int k = 1; k <= modes; ++k) {
      const ModeIndex m(k);
      const PhotonNumberDistribution d = photon_number_distribution(h, m);
      for (double p : d.probs) violation = std::max(violation, -p / 1e-10);
      const double click = click_probability(h, m);
      violation = std::max({violation, -click / 1e-12, (click - 1.0) / 1e-12});
      const MeasurementMoments n = intensity(h, m);
      const MeasurementMoments x = homodyne(h, m, uniform(rng, 0.0, std::numbers::pi));
      const MeasurementMoments par = parity(h, m);
      violation = std::max({violation, -n.variance / 1e-12, -x.variance / 1e-12, -n.mean / 1e-12,
                            (std::abs(par.mean) - 1.0) / 1e-9});
    }
    std::ostringstream what;
    what << "case " << c << " (" << modes << " modes): violation " << violation;
    res.record(violation <= 1.0, violation, what.str());
  }
  return res;
}

PropertyResult check_cramer_rao(std::uint64_t seed, int cases) {
  PropertyResult res{"cramer_rao_ordering"};
  auto rng = make_substream(seed, 4);
  const std::vector<DetectionScheme> schemes = {DetectionScheme::parity(1), DetectionScheme::homodyne(1, 0.0),
                                                DetectionScheme::intensity_difference(1, 2),
                                                DetectionScheme::intensity(1)};
  for (int c = 0; c < cases; ++c) {
    const double alpha = std::sqrt(uniform(rng, 0.5, 50.0));
    const double r = uniform(rng, 0.0, 1.2);
    const double loss = uniform(rng, 0.0, 0.5);
    const double n_env = uniform(rng, 0.0, 0.3);
    const double phi = uniform(rng, 0.2, 3.0);
    const GaussianFamily family = [&](double x) {
      GaussianState s = propagate(tensor({coherent_state(alpha, 0.0), squeezed_vacuum(r, 0.0)}), make_mzi(x));
      s = inject_thermal(s, ModeIndex(1), n_env, 1.0 - loss);
      return inject_thermal(s, ModeIndex(2), n_env, 1.0 - loss);
    };
    const double qfi = qfi_mixed_gaussian(family, phi);
    const double bound = 1.0 / qfi;
    double violation = 0.0;
    for (const auto &scheme : schemes) {
      try {
        const double v = phase_variance_error_prop(scheme_moments(family, scheme), phi);
        violation = std::max(violation, (bound - v) / (1e-6 * bound));
      } catch (const SignalStationary &) {
        // no finite estimate at this phase
      }
    }
    // Both output click patterns are classical data; their Fisher information cannot exceed the QFI.
    const BranchSet clicks = binary_branches([&](double x) { return click_probability(family(x), ModeIndex(1)); });
    try {
      const double fisher = cfi(clicks, phi);
      violation = std::max(violation, (fisher - qfi) / (1e-6 * qfi));
    } catch (const DegenerateBranch &) {
      // bright output: the detector always clicks
    }
    std::ostringstream what;
    what << "case " << c << ": |alpha|^2=" << alpha * alpha << " r=" << r << " L=" << loss << " phi=" << phi
         << " qfi=" << qfi << " violation " << violation;
    res.record(violation <= 1.0, violation, what.str());
  }
  return res;
}

}  // namespace cvq::testing
