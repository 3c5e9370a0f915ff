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

#ifndef CVQ_CONDITIONAL_H_
#define CVQ_CONDITIONAL_H_

#include <optional>
#include <string>

#include "cvq/wigner.h"

namespace cvq {

inline constexpr int kMaxHeraldPhotons = 8;

enum class Branch { kSuccess, kFailure };
enum class Mechanism { kBeamSplitter, kSpdc };
enum class HeraldKind { kFockCount, kClick };
enum class Operation { kAdd, kSubtract };

struct HeraldedState {
  std::optional<WignerExpr> state;  // normalised; empty only when improbable branches were allowed
  double probability = 0.0;
  Branch branch = Branch::kSuccess;
  std::string label;
};

struct AddSubSpec {
  Operation operation = Operation::kSubtract;
  ModeIndex mode{1};
  int m = 1;
  Mechanism mechanism = Mechanism::kBeamSplitter;
  double transmissivity = 0.9;  // beam-splitter mechanism
  double r = 0.0;               // SPDC mechanism
  double theta = 0.0;
  HeraldKind herald = HeraldKind::kFockCount;

  void validate(int modes) const;
  std::string describe() const;
};

// The ancilla always enters port 2 of the beam splitter and the herald reads output port 2,
// so the signal keeps its +sqrt(T) amplitude.
HeraldedState add_photons_bs(const WignerExpr &expr, ModeIndex mode, int m, double transmissivity,
                             bool allow_improbable = false);
HeraldedState add_photon_spdc(const WignerExpr &expr, ModeIndex mode, double r, double theta,
                              bool allow_improbable = false);
HeraldedState subtract_photons(const WignerExpr &expr, ModeIndex mode, int m, double transmissivity,
                               bool allow_improbable = false);
HeraldedState subtract_click(const WignerExpr &expr, ModeIndex mode, double transmissivity,
                             bool allow_improbable = false);
HeraldedState failure_branch(const WignerExpr &expr, ModeIndex mode, int m, double transmissivity,
                             bool allow_improbable = false);

// General entry points used by the scenario runner.
HeraldedState herald(const WignerExpr &expr, const AddSubSpec &spec, Branch branch,
                     bool allow_improbable = false);

struct BranchPair {
  HeraldedState success;
  HeraldedState failure;
};
BranchPair herald_both(const WignerExpr &expr, const AddSubSpec &spec);

}  // namespace cvq

#endif  // CVQ_CONDITIONAL_H_
