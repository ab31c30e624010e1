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

#include "aqslab/forgery.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aqslab {

namespace {

void require_unitary(const Unitary2& u, const char* what) {
  if (!u.is_unitary()) throw std::invalid_argument(std::string(what) + " is not unitary");
}

QubitState perp(const QubitState& s) { return QubitState{{-std::conj(s[1]), std::conj(s[0])}}; }

/// Representative of the ray with its dominant amplitude real and positive,
/// so the completion in map_ray does not depend on the input's global phase.
QubitState phase_fixed(const QubitState& s) {
  int i = std::abs(s[1]) > std::abs(s[0]) + 1e-12 ? 1 : 0;
  Complex f = std::conj(s[i]) / std::abs(s[i]);
  return QubitState{{s[0] * f, s[1] * f}};
}

/// |to><from| + |to_perp><from_perp|.
Unitary2 map_ray(const QubitState& from, const QubitState& to) {
  QubitState fp = perp(from);
  QubitState tp = perp(to);
  Unitary2 u;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      u(r, c) = to[r] * std::conj(from[c]) + tp[r] * std::conj(fp[c]);
    }
  }
  return u;
}

/// R_j^dagger W^dagger sigma_k^dagger Q sigma_k W R_j.
Unitary2 conjugated_attack(const SchemeConfig& scheme, const KeyPair& key,
                           const Unitary2& attack) {
  Unitary2 sig = scheme.signing_operator(key);
  return adjoint(sig) * attack * sig;
}

}  // namespace

AbcTriple abc(const PauliCoeffs& w) {
  return {w.w0 * w.w0 + w.w1 * w.w1 - 0.5, w.w0 * w.w2 + w.w1 * w.w3,
          w.w0 * w.w3 - w.w1 * w.w2};
}

AbcTriple abc(const Unitary2& assistant) { return abc(to_pauli_coeffs(assistant)); }

double ForgeryWitness::max_residual() const {
  double r = 0.0;
  for (const auto& [key, v] : residuals) r = std::max(r, v);
  return r;
}

QubitState forged_state(const SchemeConfig& scheme, const KeyPair& key, const QubitState& m,
                        const Unitary2& attack) {
  return conjugated_attack(scheme, key, attack) * m;
}

WitnessCheck certify(const SchemeConfig& scheme, const QubitState& message,
                     const Unitary2& attack, const Unitary2& replacement, double tol) {
  WitnessCheck out;
  out.valid = true;
  QubitState target = replacement * message;
  for (const KeyPair& key : scheme.keys()) {
    PhaseMatch pm = states_equal_up_to_phase(forged_state(scheme, key, message, attack), target,
                                             tol);
    out.phases[key] = pm.theta;
    out.residuals[key] = pm.residual;
    out.max_residual = std::max(out.max_residual, pm.residual);
    out.valid = out.valid && pm.matched;
  }
  return out;
}

std::optional<ForgeryWitness> check_forgeable(const SchemeConfig& scheme, const QubitState& m,
                                              const Unitary2& attack, double tol) {
  scheme.validate();
  require_unitary(attack, "attack");
  if (unitaries_equal_up_to_phase(attack, Unitary2::identity(), tol)) return std::nullopt;

  QubitState reference = forged_state(scheme, {0, 0}, m, attack);
  for (const KeyPair& key : scheme.keys()) {
    if (!states_equal_up_to_phase(forged_state(scheme, key, m, attack), reference, tol)) {
      return std::nullopt;
    }
  }

  QubitState image = phase_fixed(QubitState::from_amplitudes(reference[0], reference[1]));
  ForgeryWitness w;
  w.rotations = scheme.rotations;
  w.message = m;
  w.attack = attack;
  w.replacement = map_ray(m, image);
  WitnessCheck check = certify(scheme, m, attack, w.replacement, tol);
  if (!check.valid) return std::nullopt;
  w.phases = std::move(check.phases);
  w.residuals = std::move(check.residuals);
  return w;
}

namespace {

ForgeryWitness finish(const SchemeConfig& scheme, const QubitState& m, const Unitary2& attack,
                      const Unitary2& replacement) {
  ForgeryWitness w;
  w.rotations = scheme.rotations;
  w.message = m;
  w.attack = attack;
  w.replacement = replacement;
  // Residuals are reported even if the tolerance is missed; callers certify.
  WitnessCheck check = certify(scheme, m, attack, replacement, 1.0);
  w.phases = std::move(check.phases);
  w.residuals = std::move(check.residuals);
  return w;
}

}  // namespace

ForgeryWitness construct_witness(const Unitary2& assistant) {
  require_unitary(assistant, "assistant");
  SchemeConfig scheme{RotationFamily::BiasedZ2, assistant};
  const Unitary2 x = pauli(1);
  auto [alpha, beta, gamma] = abc(assistant);

  if (std::abs(beta) < kBetaZeroTol) {
    // X W^dagger X W X |0> = 2(alpha - i gamma)|1> up to phase.
    Unitary2 u = x * adjoint(assistant) * x * assistant * x;
    return finish(scheme, QubitState::basis(0), x, u);
  }

  // M0 ~ mu|0> + |1> with mu = (alpha + r) / beta, r = sqrt(alpha^2 + beta^2).
  // For alpha < 0 use the equivalent (beta, r - alpha) to avoid cancellation.
  double r = std::hypot(alpha, beta);
  QubitState m0 = alpha >= 0.0 ? QubitState::from_amplitudes(alpha + r, beta)
                               : QubitState::from_amplitudes(beta, r - alpha);
  Unitary2 u = Unitary2::from_entries(2.0 * Complex{-beta, 0.0}, 2.0 * Complex{alpha, gamma},
                                      2.0 * Complex{alpha, -gamma}, 2.0 * Complex{beta, 0.0});
  Unitary2 alt = Unitary2::from_entries(2.0 * Complex{beta, 0.0}, 2.0 * Complex{-alpha, gamma},
                                        2.0 * Complex{-alpha, -gamma},
                                        2.0 * Complex{-beta, 0.0});
  ForgeryWitness w = finish(scheme, m0, x, u);
  w.alternate_replacement = alt;
  return w;
}

ForgeryWitness witness_via_eigenstate(const Unitary2& assistant, int l, int which) {
  require_unitary(assistant, "assistant");
  if (l < 1 || l > 3) throw std::out_of_range("attack Pauli index must be 1..3");
  if (which != 0 && which != 1) throw std::out_of_range("eigenvector index must be 0 or 1");
  SchemeConfig scheme{RotationFamily::BiasedZ2, assistant};
  const Unitary2 q = pauli(l);
  const Unitary2 wd = adjoint(assistant);
  // The j = 0 (R = X) and j = 1 (R = Z) conjugates; every k collapses onto one of them.
  Unitary2 via_x = pauli(1) * wd * q * assistant * pauli(1);
  Unitary2 via_z = pauli(3) * wd * q * assistant * pauli(3);
  auto eig = eig_unitary(adjoint(via_z) * via_x);
  return finish(scheme, eig[which].vector, q, via_x);
}

UniformForgeryResult uniform_forgery(const SchemeConfig& scheme, const Unitary2& attack,
                                     double tol) {
  scheme.validate();
  require_unitary(attack, "attack");
  UniformForgeryResult out;
  Unitary2 reference = conjugated_attack(scheme, {0, 0}, attack);
  out.exists = true;
  for (const KeyPair& key : scheme.keys()) {
    PhaseMatch pm = unitaries_equal_up_to_phase(conjugated_attack(scheme, key, attack),
                                                reference, tol);
    out.max_residual = std::max(out.max_residual, pm.residual);
    out.exists = out.exists && pm.matched;
  }
  if (out.exists) out.replacement = reference;
  return out;
}

double ConditionPair::residual() const { return std::max(std::abs(first), std::abs(second)); }

std::vector<ConditionPair> Table1Classification::satisfied_conditions() const {
  std::vector<ConditionPair> out;
  for (const ConditionPair& c : conditions) {
    if (c.satisfied) out.push_back(c);
  }
  return out;
}

bool Table1Classification::forges(int l) const {
  return std::find(forging_paulis.begin(), forging_paulis.end(), l) != forging_paulis.end();
}

Table1Classification classify_table1(const Unitary2& assistant, double tol) {
  auto [w0, w1, w2, w3] = to_pauli_coeffs(assistant);
  // Per Pauli: (A, B, C) with pairs {A, C}, {A, B}, {C, B}, in table order.
  const std::array<std::array<double, 3>, 3> abc_rows{{
      {w0 * w0 + w1 * w1 - 0.5, w0 * w2 + w1 * w3, w0 * w3 - w1 * w2},
      {w0 * w0 + w2 * w2 - 0.5, w0 * w3 + w1 * w2, w0 * w1 - w2 * w3},
      {w0 * w0 + w3 * w3 - 0.5, w0 * w1 + w2 * w3, w0 * w2 - w1 * w3},
  }};
  Table1Classification out;
  for (int l = 1; l <= 3; ++l) {
    auto [a, b, c] = abc_rows[l - 1];
    const std::array<std::pair<double, double>, 3> pairs{{{a, c}, {a, b}, {c, b}}};
    bool any = false;
    for (int p = 0; p < 3; ++p) {
      ConditionPair& cp = out.conditions[3 * (l - 1) + p];
      cp.pauli = l;
      cp.pair = p + 1;
      cp.first = pairs[p].first;
      cp.second = pairs[p].second;
      cp.satisfied = std::abs(cp.first) <= tol && std::abs(cp.second) <= tol;
      any = any || cp.satisfied;
    }
    if (any) out.forging_paulis.push_back(l);
  }
  return out;
}

int count_forgeable_messages(const SchemeConfig& scheme, const Unitary2& attack, int n,
                             Rng& rng, double tol) {
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    if (check_forgeable(scheme, haar_state(rng), attack, tol)) ++hits;
  }
  return hits;
}

}  // namespace aqslab
