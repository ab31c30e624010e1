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

#ifndef AQSLAB_QCORE_H
#define AQSLAB_QCORE_H

#include <array>
#include <complex>

namespace aqslab {

using Complex = std::complex<double>;

/// Tolerance for identities that hold analytically.
inline constexpr double kAnalyticTol = 1e-9;
/// Tolerance for values produced by an optimizer.
inline constexpr double kOptimizerTol = 1e-6;
/// Entrywise tolerance on U^dagger U = I.
inline constexpr double kUnitarityTol = 1e-10;
/// Below this modulus a Pauli coefficient counts as zero when fixing the sign.
inline constexpr double kCanonicalZeroTol = 1e-10;

/// A pure qubit state a0|0> + a1|1>.
///
/// The factories normalize; results of `apply` are not renormalized, so the
/// norm drifts only by floating-point accumulation.
struct QubitState {
  std::array<Complex, 2> amp{Complex{1.0, 0.0}, Complex{0.0, 0.0}};

  /// Normalizes (a0, a1). Throws std::invalid_argument on a zero or
  /// non-finite vector.
  static QubitState from_amplitudes(Complex a0, Complex a1);
  static QubitState basis(int c);
  static QubitState plus();
  static QubitState minus();
  /// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
  static QubitState bloch(double theta, double phi);

  const Complex& operator[](int i) const { return amp[i]; }
  double norm() const;
};

/// <x|y>, conjugate-linear in x.
Complex inner(const QubitState& x, const QubitState& y);

/// Row-major 2x2 complex matrix. Operations document whether they require
/// unitarity; construction itself does not check it.
struct Unitary2 {
  std::array<Complex, 4> m{Complex{1.0, 0.0}, Complex{}, Complex{}, Complex{1.0, 0.0}};

  static Unitary2 identity() { return {}; }
  static Unitary2 from_entries(Complex m00, Complex m01, Complex m10, Complex m11) {
    return Unitary2{{m00, m01, m10, m11}};
  }

  const Complex& operator()(int r, int c) const { return m[2 * r + c]; }
  Complex& operator()(int r, int c) { return m[2 * r + c]; }

  Complex trace() const { return m[0] + m[3]; }
  Complex det() const { return m[0] * m[3] - m[1] * m[2]; }
  /// Largest entrywise deviation of U^dagger U from the identity.
  double unitarity_residual() const;
  bool is_unitary(double tol = kUnitarityTol) const { return unitarity_residual() <= tol; }
};

Unitary2 compose(const Unitary2& a, const Unitary2& b);
Unitary2 adjoint(const Unitary2& a);
QubitState apply(const Unitary2& a, const QubitState& s);
Unitary2 scale(const Unitary2& a, Complex factor);

inline Unitary2 operator*(const Unitary2& a, const Unitary2& b) { return compose(a, b); }
inline QubitState operator*(const Unitary2& a, const QubitState& s) { return apply(a, s); }

/// sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z. Throws
/// std::out_of_range outside 0..3.
Unitary2 pauli(int k);

/// Largest entrywise |a - b|.
double max_abs_diff(const Unitary2& a, const Unitary2& b);
double max_abs_diff(const QubitState& a, const QubitState& b);

/// Result of an equality-up-to-global-phase test. `theta` lies in (-pi, pi]
/// and is meaningful only when `matched`.
struct PhaseMatch {
  bool matched = false;
  double theta = 0.0;
  /// Largest amplitude deviation after removing the phase.
  double residual = 0.0;

  explicit operator bool() const { return matched; }
};

/// Tests x = e^{i theta} y amplitude-wise within `tol`. The phase is read off
/// the largest-modulus amplitude of y.
PhaseMatch states_equal_up_to_phase(const QubitState& x, const QubitState& y,
                                    double tol = kAnalyticTol);

/// Tests a = e^{i theta} b entrywise within `tol`.
PhaseMatch unitaries_equal_up_to_phase(const Unitary2& a, const Unitary2& b,
                                       double tol = kAnalyticTol);

/// Real coefficients of U ~ w0 I + i w1 X - i w2 Y + i w3 Z.
///
/// Canonical form: unit norm, w0 >= 0, and when w0 vanishes the first
/// nonzero of (w1, w2, w3) is positive.
struct PauliCoeffs {
  double w0 = 1.0;
  double w1 = 0.0;
  double w2 = 0.0;
  double w3 = 0.0;

  std::array<double, 4> as_array() const { return {w0, w1, w2, w3}; }
  double norm_squared() const { return w0 * w0 + w1 * w1 + w2 * w2 + w3 * w3; }
};

/// Applies the sign rule and renormalizes.
PauliCoeffs canonicalize(PauliCoeffs c);

/// Throws std::invalid_argument for a non-unitary input.
PauliCoeffs to_pauli_coeffs(const Unitary2& u);

/// Throws std::invalid_argument unless the coefficients have unit norm within
/// `tol`.
Unitary2 from_pauli_coeffs(const PauliCoeffs& c, double tol = 1e-8);

struct EigenPair {
  Complex value;
  QubitState vector;
};

/// Closed-form spectral decomposition of a 2x2 unitary. For a degenerate
/// spectrum (gap < 1e-10) the computational basis is returned.
std::array<EigenPair, 2> eig_unitary(const Unitary2& u);

/// L1 distance between canonical Pauli coefficient vectors.
double coeff_distance(const Unitary2& a, const Unitary2& b);

}  // namespace aqslab

#endif  // AQSLAB_QCORE_H
