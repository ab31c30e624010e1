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

#ifndef AQSLAB_FORGERY_H
#define AQSLAB_FORGERY_H

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "aqslab/aqs.h"
#include "aqslab/qcore.h"
#include "aqslab/rng.h"

namespace aqslab {

/// Below this |beta| the construction uses the |0> witness.
inline constexpr double kBetaZeroTol = 1e-12;

/// alpha = w0^2 + w1^2 - 1/2, beta = w0 w2 + w1 w3, gamma = w0 w3 - w1 w2.
/// For unit coefficient vectors alpha^2 + beta^2 + gamma^2 = 1/4.
struct AbcTriple {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

AbcTriple abc(const PauliCoeffs& w);
AbcTriple abc(const Unitary2& assistant);

/// A message M0 together with an attack Q on its signature and a replacement
/// U for the message, such that for every key (j, k)
///   R_j^dagger W^dagger sigma_k^dagger Q sigma_k W R_j |M0> = e^{i theta_jk} U |M0>.
struct ForgeryWitness {
  RotationFamily rotations = RotationFamily::BiasedZ2;
  QubitState message;
  Unitary2 attack;
  Unitary2 replacement;
  std::map<KeyPair, double> phases;
  std::map<KeyPair, double> residuals;
  /// Second replacement offered by the closed-form construction, if any.
  std::optional<Unitary2> alternate_replacement;

  double max_residual() const;
};

/// Per-key phases and residuals of `witness` against `scheme`.
struct WitnessCheck {
  bool valid = false;
  std::map<KeyPair, double> phases;
  std::map<KeyPair, double> residuals;
  double max_residual = 0.0;
};

WitnessCheck certify(const SchemeConfig& scheme, const QubitState& message,
                     const Unitary2& attack, const Unitary2& replacement,
                     double tol = kAnalyticTol);

/// The forged state R_j^dagger W^dagger sigma_k^dagger Q sigma_k W R_j |m>.
QubitState forged_state(const SchemeConfig& scheme, const KeyPair& key, const QubitState& m,
                        const Unitary2& attack);

/// Returns a witness if all forged states agree up to phase. U is fixed off the
/// message ray by sending m-perp to the image's perp with zero relative phase.
/// An attack phase-equivalent to the identity never yields a witness.
std::optional<ForgeryWitness> check_forgeable(const SchemeConfig& scheme, const QubitState& m,
                                              const Unitary2& attack,
                                              double tol = kAnalyticTol);

/// Closed-form forgeable message for the biased Z2 scheme with this assistant,
/// attacked by Q = X.
ForgeryWitness construct_witness(const Unitary2& assistant);

/// Witness for Q = sigma_l from an eigenvector (`which` = 0 or 1) of
/// (Z W^dagger sigma_l W Z)^dagger (X W^dagger sigma_l W X).
ForgeryWitness witness_via_eigenstate(const Unitary2& assistant, int l, int which = 0);

struct UniformForgeryResult {
  bool exists = false;
  std::optional<Unitary2> replacement;
  /// Largest deviation from the (0, 0) representative.
  double max_residual = 0.0;
};

/// Does one U satisfy R_j^dagger W^dagger sigma_k Q sigma_k W R_j ~ U for every key?
UniformForgeryResult uniform_forgery(const SchemeConfig& scheme, const Unitary2& attack,
                                     double tol = kAnalyticTol);

struct ConditionPair {
  int pauli = 1;  // 1..3
  int pair = 1;   // row within the Pauli block, 1..3
  double first = 0.0;
  double second = 0.0;
  bool satisfied = false;

  double residual() const;
};

/// Evaluation of the nine condition pairs under which every message is
/// forgeable by a Pauli attack in the unbiased Z4 scheme.
struct Table1Classification {
  std::vector<int> forging_paulis;
  std::array<ConditionPair, 9> conditions;

  std::vector<ConditionPair> satisfied_conditions() const;
  bool forges(int l) const;
};

Table1Classification classify_table1(const Unitary2& assistant, double tol = kAnalyticTol);

/// Number of Haar-random messages out of `n` that check_forgeable accepts.
int count_forgeable_messages(const SchemeConfig& scheme, const Unitary2& attack, int n,
                             Rng& rng, double tol = kAnalyticTol);

}  // namespace aqslab

#endif  // AQSLAB_FORGERY_H
