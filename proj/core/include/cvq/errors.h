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

#ifndef CVQ_ERRORS_H_
#define CVQ_ERRORS_H_

#include <stdexcept>
#include <string>

namespace cvq {

// Out-of-domain argument (negative squeezing, T outside [0,1], bad mode index).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A matrix or expression that cannot be processed in double precision.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ill-conditioned inverse that regularization could not stabilise.
class NumericalConditioning : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Herald probability below the renormalisation threshold.
class ImprobableBranch : public std::runtime_error {
 public:
  ImprobableBranch(const std::string &what, double probability)
      : std::runtime_error(what), probability_(probability) {}
  double probability() const { return probability_; }

 private:
  double probability_;
};

// The signal has zero slope at the requested operating point.
class SignalStationary : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A branch probability is too small for a Fisher-information term.
class DegenerateBranch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A pure-state formula was handed a mixed state.
class PurityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario configuration rejected; `path` names the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string &path, const std::string &message)
      : std::runtime_error(path.empty() ? message : path + ": " + message), path_(path) {}
  const std::string &path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace cvq

#endif  // CVQ_ERRORS_H_
