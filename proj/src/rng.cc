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

#include "aqslab/rng.h"

#include <cmath>
#include <numbers>

namespace aqslab {

namespace {

// splitmix64 finalizer.
std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::mix(std::uint64_t seed, std::uint64_t index) {
  return splitmix(splitmix(seed) ^ splitmix(index + 0x632be59bd9b4e019ULL));
}

QubitState haar_state(Rng& rng) {
  for (;;) {
    Complex a0{rng.normal(), rng.normal()};
    Complex a1{rng.normal(), rng.normal()};
    if (std::norm(a0) + std::norm(a1) > 1e-300) return QubitState::from_amplitudes(a0, a1);
  }
}

Unitary2 haar_unitary(Rng& rng) {
  // Uniform unit quaternion gives Haar SU(2); an independent phase lifts it to U(2).
  double q[4];
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (double& x : q) {
      x = rng.normal();
      n2 += x * x;
    }
  } while (n2 < 1e-300);
  double n = std::sqrt(n2);
  PauliCoeffs c{q[0] / n, q[1] / n, q[2] / n, q[3] / n};
  Unitary2 su2 = Unitary2::from_entries(Complex{c.w0, c.w3}, Complex{-c.w2, c.w1},
                                        Complex{c.w2, c.w1}, Complex{c.w0, -c.w3});
  return scale(su2, std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform()));
}

}  // namespace aqslab
