// Copyright 2026 The aqslab Authors
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

#ifndef AQSLAB_RNG_H
#define AQSLAB_RNG_H

#include <cstdint>
#include <random>

#include "aqslab/qcore.h"

namespace aqslab {

/// Seedable generator with counter-based splitting.
///
/// `Rng::stream(seed, i)` depends only on (seed, i), so work split across any
/// number of workers draws identical numbers for item i.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix(seed, 0x5851f42d4c957f2dULL)) {}

  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix(seed, index), Tag{});
  }

  /// Independent child generator; advances this one.
  Rng split() { return Rng(engine_(), Tag{}); }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  bool bernoulli(double p) { return uniform() < p; }

  std::mt19937_64& engine() { return engine_; }

 private:
  struct Tag {};
  Rng(std::uint64_t raw, Tag) : engine_(raw) {}

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t index);

  std::mt19937_64 engine_;
};

/// Haar-random pure state.
QubitState haar_state(Rng& rng);
/// Haar-random element of U(2).
Unitary2 haar_unitary(Rng& rng);

}  // namespace aqslab

#endif  // AQSLAB_RNG_H
