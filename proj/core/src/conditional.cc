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

#include "cvq/conditional.h"

#include <cmath>
#include <vector>

#include "cvq/errors.h"

namespace cvq {

namespace {

void check_transmissivity(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("transmissivity must lie in [0,1]");
}

void check_photons(int m, int lo) {
  if (m < lo || m > kMaxHeraldPhotons) {
    throw DomainError("herald photon number must lie in [" + std::to_string(lo) + "," +
                      std::to_string(kMaxHeraldPhotons) + "]");
  }
}

// Appends the ancilla as the last mode and couples it to `mode`.
WignerExpr couple(const WignerExpr &expr, ModeIndex mode, const WignerExpr &ancilla,
                  const SymplecticTransform &element) {
  mode.check(expr.modes());
  const int total = expr.modes() + 1;
  const WignerExpr joint = tensor({expr, ancilla});
  return apply_symplectic(joint, embed(element, {mode, ModeIndex(total)}, total));
}

HeraldedState wrap(Projection p, Branch branch, std::string label) {
  HeraldedState h;
  h.state = std::move(p.state);
  h.probability = p.probability;
  h.branch = branch;
  h.label = std::move(label);
  return h;
}

HeraldedState fock_herald(const WignerExpr &coupled, int n, Branch branch, bool allow_improbable,
                          const std::string &what) {
  const ModeIndex anc(coupled.modes());
  if (branch == Branch::kSuccess) {
    return wrap(project_fock(coupled, anc, n, allow_improbable), branch, what);
  }
  return wrap(project_not_fock(coupled, anc, n, allow_improbable), branch, "not " + what);
}

}  // namespace

void AddSubSpec::validate(int modes) const {
  mode.check(modes);
  if (mechanism == Mechanism::kBeamSplitter) check_transmissivity(transmissivity);
  if (mechanism == Mechanism::kSpdc) {
    if (operation != Operation::kAdd) throw DomainError("SPDC mechanism models addition only");
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("SPDC squeezing must be finite and >= 0");
    if (!std::isfinite(theta)) throw DomainError("SPDC angle must be finite");
  }
  if (herald == HeraldKind::kClick) {
    if (operation != Operation::kSubtract || mechanism != Mechanism::kBeamSplitter) {
      throw DomainError("click heralding is defined for beam-splitter subtraction");
    }
  } else {
    check_photons(m, 1);
  }
}

std::string AddSubSpec::describe() const {
  std::string s = operation == Operation::kAdd ? "add" : "subtract";
  if (herald == HeraldKind::kClick) return s + " click";
  s += " " + std::to_string(m);
  s += mechanism == Mechanism::kSpdc ? " spdc" : " bs";
  return s;
}

HeraldedState add_photons_bs(const WignerExpr &expr, ModeIndex mode, int m, double transmissivity,
                             bool allow_improbable) {
  AddSubSpec spec;
  spec.operation = Operation::kAdd;
  spec.mode = mode;
  spec.m = m;
  spec.transmissivity = transmissivity;
  return herald(expr, spec, Branch::kSuccess, allow_improbable);
}

HeraldedState add_photon_spdc(const WignerExpr &expr, ModeIndex mode, double r, double theta,
                              bool allow_improbable) {
  AddSubSpec spec;
  spec.operation = Operation::kAdd;
  spec.mode = mode;
  spec.m = 1;
  spec.mechanism = Mechanism::kSpdc;
  spec.r = r;
  spec.theta = theta;
  return herald(expr, spec, Branch::kSuccess, allow_improbable);
}

HeraldedState subtract_photons(const WignerExpr &expr, ModeIndex mode, int m, double transmissivity,
                               bool allow_improbable) {
  AddSubSpec spec;
  spec.mode = mode;
  spec.m = m;
  spec.transmissivity = transmissivity;
  return herald(expr, spec, Branch::kSuccess, allow_improbable);
}

HeraldedState subtract_click(const WignerExpr &expr, ModeIndex mode, double transmissivity,
                             bool allow_improbable) {
  AddSubSpec spec;
  spec.mode = mode;
  spec.transmissivity = transmissivity;
  spec.herald = HeraldKind::kClick;
  return herald(expr, spec, Branch::kSuccess, allow_improbable);
}

HeraldedState failure_branch(const WignerExpr &expr, ModeIndex mode, int m, double transmissivity,
                             bool allow_improbable) {
  AddSubSpec spec;
  spec.mode = mode;
  spec.m = m;
  spec.transmissivity = transmissivity;
  return herald(expr, spec, Branch::kFailure, allow_improbable);
}

HeraldedState herald(const WignerExpr &expr, const AddSubSpec &spec, Branch branch, bool allow_improbable) {
  spec.validate(expr.modes());
  if (spec.mechanism == Mechanism::kSpdc) {
    const WignerExpr coupled =
        couple(expr, spec.mode, fock_wigner(0), make_two_mode_squeezer(spec.r, spec.theta));
    return fock_herald(coupled, spec.m, branch, allow_improbable, "Fock " + std::to_string(spec.m) + " on idler");
  }
  const SymplecticTransform bs = make_beam_splitter(spec.transmissivity);
  if (spec.operation == Operation::kAdd) {
    // Ancilla carries m photons; success means none of them reached the herald.
    const WignerExpr coupled = couple(expr, spec.mode, fock_wigner(spec.m), bs);
    return fock_herald(coupled, 0, branch, allow_improbable, "Fock 0 on ancilla");
  }
  const WignerExpr coupled = couple(expr, spec.mode, fock_wigner(0), bs);
  if (spec.herald == HeraldKind::kClick) {
    const ModeIndex anc(coupled.modes());
    if (branch == Branch::kSuccess) {
      return wrap(project_click(coupled, anc, allow_improbable), branch, "click on ancilla");
    }
    return wrap(project_no_click(coupled, anc, allow_improbable), branch, "no click on ancilla");
  }
  return fock_herald(coupled, spec.m, branch, allow_improbable, "Fock " + std::to_string(spec.m) + " on ancilla");
}

BranchPair herald_both(const WignerExpr &expr, const AddSubSpec &spec) {
  return {herald(expr, spec, Branch::kSuccess, true), herald(expr, spec, Branch::kFailure, true)};
}

}  // namespace cvq
