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

#ifndef AQSLAB_AQS_H
#define AQSLAB_AQS_H

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "aqslab/qcore.h"
#include "aqslab/rng.h"

namespace aqslab {

/// Pre-rotation families applied before encryption.
///   BiasedZ2:   R_0 = X, R_1 = Z
///   UnbiasedZ4: R_j = sigma_j, j = 0..3
enum class RotationFamily { BiasedZ2, UnbiasedZ4 };

int rotation_count(RotationFamily family);
/// Throws std::out_of_range for j outside the family's index set.
Unitary2 rotation(RotationFamily family, int j);
std::string_view to_string(RotationFamily family);

struct KeyPair {
  int j = 0;  // rotation index
  int k = 0;  // encryption index, 0..3

  auto operator<=>(const KeyPair&) const = default;
};

/// Rotation family plus assistant unitary W; encryption keys are sigma_k W.
struct SchemeConfig {
  RotationFamily rotations = RotationFamily::BiasedZ2;
  Unitary2 assistant;

  /// Throws std::invalid_argument for a non-unitary assistant.
  void validate() const;
  /// Throws std::out_of_range if the key is not in the family's index set.
  void check_key(const KeyPair& key) const;
  Unitary2 encryption(int k) const;
  /// E_k R_j.
  Unitary2 signing_operator(const KeyPair& key) const;
  std::vector<KeyPair> keys() const;
};

enum class Preset { Wa, T, Identity };

Unitary2 preset(Preset p);
/// Accepts "wa", "t", "identity". Throws std::invalid_argument otherwise.
Preset parse_preset(std::string_view name);

/// |S> = sigma_k W R_j |M>.
QubitState sign(const SchemeConfig& scheme, const KeyPair& key, const QubitState& m);

/// R_j^dagger W^dagger sigma_k^dagger |S>.
QubitState recover(const SchemeConfig& scheme, const KeyPair& key, const QubitState& s);

/// Accepts iff m equals the recovered state up to global phase; `theta` is the
/// phase with |m> = e^{i theta} R_j^dagger E_k^dagger |s>.
PhaseMatch verify_exact(const SchemeConfig& scheme, const KeyPair& key, const QubitState& m,
                        const QubitState& s, double tol = kAnalyticTol);

/// Pass probability of one swap test, (1 + |<x|y>|^2) / 2.
double swap_pass_probability(const QubitState& x, const QubitState& y);

/// One simulated swap test.
bool swap_test(const QubitState& x, const QubitState& y, Rng& rng);

/// Runs `n_copies` swap tests between m and the recovered state and accepts
/// only if every test passes. Throws std::invalid_argument if n_copies < 1.
bool verify_sampled(const SchemeConfig& scheme, const KeyPair& key, const QubitState& m,
                    const QubitState& s, int n_copies, Rng& rng);

/// Hermitian, unit-trace, positive semidefinite 2x2 matrix.
class DensityMatrix {
 public:
  /// Validates; throws std::invalid_argument.
  explicit DensityMatrix(const std::array<Complex, 4>& entries);

  static DensityMatrix pure(const QubitState& s);
  static DensityMatrix maximally_mixed();
  /// weight * a + (1 - weight) * b.
  static DensityMatrix mixture(const DensityMatrix& a, const DensityMatrix& b, double weight);

  const std::array<Complex, 4>& entries() const { return m_; }
  const Complex& operator()(int r, int c) const { return m_[2 * r + c]; }

 private:
  std::array<Complex, 4> m_;
};

/// Max-entry deviation of (1/4) sum_k sigma_k W rho W^dagger sigma_k from I/2.
double encryption_completeness(const Unitary2& assistant, const DensityMatrix& rho);

}  // namespace aqslab

#endif  // AQSLAB_AQS_H
