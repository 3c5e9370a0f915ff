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

#ifndef CVQ_RNG_H_
#define CVQ_RNG_H_

#include <cstdint>
#include <random>

namespace cvq {

// A mt19937_64 stream keyed by (seed, index). Keys are mixed through SplitMix64 so that
// neighbouring indices give unrelated streams and evaluation order never matters.
std::mt19937_64 make_substream(std::uint64_t seed, std::uint64_t index);

std::uint64_t splitmix64(std::uint64_t &state);

}  // namespace cvq

#endif  // CVQ_RNG_H_
