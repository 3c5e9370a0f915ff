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

// Library states paired with the same preparation in the Fock-basis oracle.

#ifndef CVQ_TESTS_ORACLE_FAMILIES_H_
#define CVQ_TESTS_ORACLE_FAMILIES_H_

#include <optional>
#include <string>
#include <vector>

#include "../oracle/fock_oracle.h"
#include "cvq/wigner.h"

namespace cvq::testing {

struct OracleFamily {
  std::string name;
  WignerExpr state;
  oracle::Ensemble reference;
  std::vector<int> modes;  // modes to compare
  std::optional<double> herald_probability;
  std::optional<double> reference_herald_probability;
  double reference_truncation = 0.0;  // oracle mass lost past the cutoff before any renormalisation
};

// Every family has total mean photon number <= 6.
std::vector<OracleFamily> oracle_families();

struct OracleComparison {
  std::string name;
  double distribution = 0.0;  // max |p_n - q_n| over n <= cutoff and compared modes
  double parity = 0.0;
  double mean = 0.0;
  double click = 0.0;
  double herald = 0.0;
  double truncation = 0.0;
  double mean_photons = 0.0;  // library total mean photon number

  double worst() const;
};

OracleComparison compare(const OracleFamily &family);

}  // namespace cvq::testing

#endif  // CVQ_TESTS_ORACLE_FAMILIES_H_
