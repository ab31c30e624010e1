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

#include "aqslab/aqs.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aqslab {

int rotation_count(RotationFamily family) {
  return family == RotationFamily::BiasedZ2 ? 2 : 4;
}

Unitary2 rotation(RotationFamily family, int j) {
  if (j < 0 || j >= rotation_count(family)) {
    throw std::out_of_range("rotation index " + std::to_string(j) + " outside " +
                            std::string(to_string(family)));
  }
  if (family == RotationFamily::BiasedZ2) return pauli(j == 0 ? 1 : 3);
  return pauli(j);
}

std::string_view to_string(RotationFamily family) {
  return family == RotationFamily::BiasedZ2 ? "z2" : "z4";
}

void SchemeConfig::validate() const {
  if (!assistant.is_unitary()) throw std::invalid_argument("assistant operator is not unitary");
}

void SchemeConfig::check_key(const KeyPair& key) const {
  if (key.j < 0 || key.j >= rotation_count(rotations)) {
    throw std::out_of_range("rotation key j=" + std::to_string(key.j) + " outside " +
                            std::string(to_string(rotations)));
  }
  if (key.k < 0 || key.k > 3) {
    throw std::out_of_range("encryption key k=" + std::to_string(key.k) + " outside 0..3");
  }
}

Unitary2 SchemeConfig::encryption(int k) const { return pauli(k) * assistant; }

Unitary2 SchemeConfig::signing_operator(const KeyPair& key) const {
  check_key(key);
  return encryption(key.k) * rotation(rotations, key.j);
}

std::vector<KeyPair> SchemeConfig::keys() const {
  std::vector<KeyPair> out;
  for (int j = 0; j < rotation_count(rotations); ++j) {
    for (int k = 0; k < 4; ++k) out.push_back({j, k});
  }
  return out;
}

Unitary2 preset(Preset p) {
  switch (p) {
    case Preset::Wa: {
      double h = std::numbers::sqrt2 / 2.0;
      Complex e = std::polar(1.0, std::numbers::pi / 4.0);
      return Unitary2::from_entries(h, h * e, h * std::conj(e), -h);
    }
    case Preset::T: {
      double a = 1.0 / std::numbers::sqrt3;
      return from_pauli_coeffs({0.0, a, a, a});
    }
    case Preset::Identity:
      return Unitary2::identity();
  }
  throw std::invalid_argument("unknown preset");
}

Preset parse_preset(std::string_view name) {
  if (name == "wa") return Preset::Wa;
  if (name == "t") return Preset::T;
  if (name == "identity") return Preset::Identity;
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

QubitState sign(const SchemeConfig& scheme, const KeyPair& key, const QubitState& m) {
  return scheme.signing_operator(key) * m;
}

QubitState recover(const SchemeConfig& scheme, const KeyPair& key, const QubitState& s) {
  return adjoint(scheme.signing_operator(key)) * s;
}

PhaseMatch verify_exact(const SchemeConfig& scheme, const KeyPair& key, const QubitState& m,
                        const QubitState& s, double tol) {
  return states_equal_up_to_phase(m, recover(scheme, key, s), tol);
}

double swap_pass_probability(const QubitState& x, const QubitState& y) {
  return 0.5 * (1.0 + std::norm(inner(x, y)));
}

bool swap_test(const QubitState& x, const QubitState& y, Rng& rng) {
  return rng.bernoulli(swap_pass_probability(x, y));
}

bool verify_sampled(const SchemeConfig& scheme, const KeyPair& key, const QubitState& m,
                    const QubitState& s, int n_copies, Rng& rng) {
  if (n_copies < 1) throw std::invalid_argument("verify_sampled needs at least one copy");
  QubitState recovered = recover(scheme, key, s);
  for (int i = 0; i < n_copies; ++i) {
    if (!swap_test(m, recovered, rng)) return false;
  }
  return true;
}

DensityMatrix::DensityMatrix(const std::array<Complex, 4>& entries) : m_(entries) {
  for (const Complex& z : m_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("density matrix entries must be finite");
    }
  }
  if (std::abs(m_[0].imag()) > 1e-10 || std::abs(m_[3].imag()) > 1e-10 ||
      std::abs(m_[1] - std::conj(m_[2])) > 1e-10) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  Complex tr = m_[0] + m_[3];
  if (std::abs(tr - 1.0) > 1e-10) throw std::invalid_argument("density matrix trace is not 1");
  // Smallest eigenvalue of a Hermitian 2x2 with unit trace.
  double a = m_[0].real();
  double d = m_[3].real();
  double lo = 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m_[1]));
  if (lo < -1e-10) throw std::invalid_argument("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const QubitState& s) {
  return DensityMatrix({s[0] * std::conj(s[0]), s[0] * std::conj(s[1]), s[1] * std::conj(s[0]),
                        s[1] * std::conj(s[1])});
}

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix({0.5, 0.0, 0.0, 0.5}); }

DensityMatrix DensityMatrix::mixture(const DensityMatrix& a, const DensityMatrix& b,
                                     double weight) {
  if (!(weight >= 0.0 && weight <= 1.0)) {
    throw std::invalid_argument("mixture weight must lie in [0, 1]");
  }
  std::array<Complex, 4> e;
  for (std::size_t i = 0; i < 4; ++i) e[i] = weight * a.m_[i] + (1.0 - weight) * b.m_[i];
  return DensityMatrix(e);
}

double encryption_completeness(const Unitary2& assistant, const DensityMatrix& rho) {
  Unitary2 r = Unitary2::from_entries(rho(0, 0), rho(0, 1), rho(1, 0), rho(1, 1));
  std::array<Complex, 4> acc{};
  for (int k = 0; k < 4; ++k) {
    Unitary2 e = pauli(k) * assistant;
    Unitary2 term = e * r * adjoint(e);
    for (std::size_t i = 0; i < 4; ++i) acc[i] += term.m[i];
  }
  double dev = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    Complex target = (i == 0 || i == 3) ? Complex{0.5, 0.0} : Complex{};
    dev = std::max(dev, std::abs(acc[i] / 4.0 - target));
  }
  return dev;
}

}  // namespace aqslab
