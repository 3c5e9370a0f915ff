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

// Randomized invariant checks shared by the property suite and the acceptance runner.

#ifndef CVQ_TESTS_INVARIANTS_H_
#define CVQ_TESTS_INVARIANTS_H_

#include <cstdint>
#include <random>
#include <string>

#include "cvq/gaussian.h"
#include "cvq/phase_space.h"
#include "cvq/wigner.h"

namespace cvq::testing {

inline constexpr int kPropertyCases = 200;

struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  double worst = 0.0;  // largest violation seen, in the check's own units
  std::string first_failure;

  bool ok() const { return cases >= kPropertyCases && failures == 0; }
  void record(bool pass, double violation, const std::string &what);
};

double uniform(std::mt19937_64 &rng, double lo, double hi);
int uniform_int(std::mt19937_64 &rng, int lo, int hi);

// A random chain of beam splitters, phase shifters, squeezers, two-mode squeezers and displacements.
SymplecticTransform random_transform(std::mt19937_64 &rng, int modes, int elements);
// Thermal inputs pushed through a random transform; photon numbers stay moderate.
GaussianState random_gaussian_state(std::mt19937_64 &rng, int modes);
// A heralded add or subtract on mode 1 of a small random Gaussian state.
WignerExpr random_heralded_state(std::mt19937_64 &rng, int modes, double *success_plus_failure = nullptr);

PropertyResult check_symplectic(std::uint64_t seed, int cases = kPropertyCases);
PropertyResult check_normalization(std::uint64_t seed, int cases = kPropertyCases);
PropertyResult check_positivity(std::uint64_t seed, int cases = kPropertyCases);
PropertyResult check_cramer_rao(std::uint64_t seed, int cases = kPropertyCases);

}  // namespace cvq::testing

#endif  // CVQ_TESTS_INVARIANTS_H_
