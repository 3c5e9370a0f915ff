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

#include "cvq/numerics.h"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <limits>

#include "cvq/errors.h"

namespace cvq {

namespace {

constexpr int kBits = 40;
constexpr double kPolishStep = 1e-3;

// Evaluates f, turning exceptions and non-finite values into +inf so the search steers away.
double guarded(const std::function<double(double)> &f, double x) {
  try {
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  } catch (const std::exception &) {
    return std::numeric_limits<double>::infinity();
  }
}

Minimum brent(const std::function<double(double)> &f, double lo, double hi) {
  std::uintmax_t iters = 200;
  auto g = [&](double x) { return guarded(f, x); };
  const auto [x, v] = boost::math::tools::brent_find_minima(g, lo, hi, kBits, iters);
  return {x, v};
}

// Refines a minimum by locating the zero of the stencil derivative near x.
Minimum polish(const std::function<double(double)> &f, Minimum best, double lo, double hi) {
  const double h = std::min(kPolishStep, 0.25 * (hi - lo));
  auto df = [&](double x) {
    return (guarded(f, x - 2 * h) - 8 * guarded(f, x - h) + 8 * guarded(f, x + h) - guarded(f, x + 2 * h)) /
           (12 * h);
  };
  const double a = std::max(lo + 2 * h, best.x - 4 * h);
  const double b = std::min(hi - 2 * h, best.x + 4 * h);
  if (!(a < b)) return best;
  const double fa = df(a);
  const double fb = df(b);
  if (!std::isfinite(fa) || !std::isfinite(fb) || fa * fb >= 0.0) return best;
  std::uintmax_t iters = 100;
  boost::math::tools::eps_tolerance<double> tol(50);
  const auto [r1, r2] = boost::math::tools::toms748_solve(df, a, b, fa, fb, tol, iters);
  const double x = 0.5 * (r1 + r2);
  const double v = guarded(f, x);
  if (v <= best.value) return {x, v};
  return best;
}

}  // namespace

Minimum minimize_near(const std::function<double(double)> &f, double seed, double lo, double hi,
                      double radius) {
  if (!(lo < hi) || !(seed >= lo && seed <= hi)) throw DomainError("minimize_near: bad interval");
  const double a = std::max(lo, seed - radius);
  const double b = std::min(hi, seed + radius);
  Minimum best = polish(f, brent(f, a, b), a, b);
  const double at_seed = guarded(f, seed);
  if (at_seed <= best.value) best = {seed, at_seed};
  if (!std::isfinite(best.value)) throw NumericalError("minimize_near: no finite value found");
  return best;
}

Minimum minimize_on(const std::function<double(double)> &f, double lo, double hi) {
  if (!(lo < hi)) throw DomainError("minimize_on: bad interval");
  Minimum best = polish(f, brent(f, lo, hi), lo, hi);
  if (!std::isfinite(best.value)) throw NumericalError("minimize_on: no finite value found");
  return best;
}

}  // namespace cvq
