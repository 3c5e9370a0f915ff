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

#ifndef CVQ_NUMERICS_H_
#define CVQ_NUMERICS_H_

#include <functional>

namespace cvq {

inline constexpr double kDefaultStep = 1e-4;

// Five-point central stencils. F may return a scalar or an Eigen object.
template <typename F>
auto derivative5(F &&f, double x, double h) {
  using R = std::decay_t<decltype(f(x))>;
  const R a = f(x - 2.0 * h);
  const R b = f(x - h);
  const R c = f(x + h);
  const R d = f(x + 2.0 * h);
  return R((a - 8.0 * b + 8.0 * c - d) / (12.0 * h));
}

template <typename F>
auto second_derivative5(F &&f, double x, double h) {
  using R = std::decay_t<decltype(f(x))>;
  const R a = f(x - 2.0 * h);
  const R b = f(x - h);
  const R c = f(x);
  const R d = f(x + h);
  const R e = f(x + 2.0 * h);
  return R((-a + 16.0 * b - 30.0 * c + 16.0 * d - e) / (12.0 * h * h));
}

struct Minimum {
  double x = 0.0;
  double value = 0.0;
};

// Brent search on [max(lo, seed - radius), min(hi, seed + radius)], then a root polish of the
// numerical derivative. f(seed) itself is kept when nothing lower is found.
Minimum minimize_near(const std::function<double(double)> &f, double seed, double lo, double hi,
                      double radius = 0.3);

// Brent search on the whole interval, no seed.
Minimum minimize_on(const std::function<double(double)> &f, double lo, double hi);

}  // namespace cvq

#endif  // CVQ_NUMERICS_H_
