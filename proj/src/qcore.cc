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

#include "aqslab/qcore.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aqslab {

namespace {

constexpr Complex kI{0.0, 1.0};

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double wrap_phase(double theta) {
  // std::arg returns [-pi, pi]; fold -pi onto pi.
  return theta <= -std::numbers::pi ? theta + 2.0 * std::numbers::pi : theta;
}

template <std::size_t N>
PhaseMatch match_arrays(const std::array<Complex, N>& x, const std::array<Complex, N>& y,
                        double tol) {
  std::size_t ref = 0;
  for (std::size_t i = 1; i < N; ++i) {
    if (std::abs(y[i]) > std::abs(y[ref])) ref = i;
  }
  PhaseMatch out;
  if (std::abs(y[ref]) == 0.0 || std::abs(x[ref]) == 0.0) {
    double r = 0.0;
    for (std::size_t i = 0; i < N; ++i) r = std::max(r, std::abs(x[i] - y[i]));
    out.residual = r;
    out.matched = false;
    return out;
  }
  Complex phase = x[ref] / y[ref];
  phase /= std::abs(phase);
  double r = 0.0;
  for (std::size_t i = 0; i < N; ++i) r = std::max(r, std::abs(x[i] - phase * y[i]));
  out.residual = r;
  out.matched = r <= tol;
  out.theta = wrap_phase(std::arg(phase));
  return out;
}

}  // namespace

QubitState QubitState::from_amplitudes(Complex a0, Complex a1) {
  if (!finite(a0) || !finite(a1)) {
    throw std::invalid_argument("qubit amplitudes must be finite");
  }
  double n = std::sqrt(std::norm(a0) + std::norm(a1));
  if (n == 0.0) throw std::invalid_argument("qubit amplitudes must not both vanish");
  return QubitState{{a0 / n, a1 / n}};
}

QubitState QubitState::basis(int c) {
  if (c == 0) return QubitState{{Complex{1.0, 0.0}, Complex{}}};
  if (c == 1) return QubitState{{Complex{}, Complex{1.0, 0.0}}};
  throw std::out_of_range("basis index must be 0 or 1");
}

QubitState QubitState::plus() {
  double h = std::numbers::sqrt2 / 2.0;
  return QubitState{{Complex{h, 0.0}, Complex{h, 0.0}}};
}

QubitState QubitState::minus() {
  double h = std::numbers::sqrt2 / 2.0;
  return QubitState{{Complex{h, 0.0}, Complex{-h, 0.0}}};
}

QubitState QubitState::bloch(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw std::invalid_argument("Bloch angles must be finite");
  }
  return QubitState{{Complex{std::cos(theta / 2.0), 0.0},
                     std::polar(std::sin(theta / 2.0), phi)}};
}

double QubitState::norm() const { return std::sqrt(std::norm(amp[0]) + std::norm(amp[1])); }

Complex inner(const QubitState& x, const QubitState& y) {
  return std::conj(x.amp[0]) * y.amp[0] + std::conj(x.amp[1]) * y.amp[1];
}

double Unitary2::unitarity_residual() const {
  Unitary2 p = compose(adjoint(*this), *this);
  double r = std::max(std::abs(p.m[0] - 1.0), std::abs(p.m[3] - 1.0));
  r = std::max(r, std::abs(p.m[1]));
  r = std::max(r, std::abs(p.m[2]));
  return std::isfinite(r) ? r : INFINITY;
}

Unitary2 compose(const Unitary2& a, const Unitary2& b) {
  return Unitary2{{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
                   a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
}

Unitary2 adjoint(const Unitary2& a) {
  return Unitary2{{std::conj(a.m[0]), std::conj(a.m[2]), std::conj(a.m[1]), std::conj(a.m[3])}};
}

QubitState apply(const Unitary2& a, const QubitState& s) {
  return QubitState{{a.m[0] * s.amp[0] + a.m[1] * s.amp[1],
                     a.m[2] * s.amp[0] + a.m[3] * s.amp[1]}};
}

Unitary2 scale(const Unitary2& a, Complex factor) {
  return Unitary2{{a.m[0] * factor, a.m[1] * factor, a.m[2] * factor, a.m[3] * factor}};
}

Unitary2 pauli(int k) {
  switch (k) {
    case 0:
      return Unitary2::identity();
    case 1:
      return Unitary2::from_entries(0.0, 1.0, 1.0, 0.0);
    case 2:
      return Unitary2::from_entries(0.0, -kI, kI, 0.0);
    case 3:
      return Unitary2::from_entries(1.0, 0.0, 0.0, -1.0);
    default:
      throw std::out_of_range("Pauli index must be in 0..3, got " + std::to_string(k));
  }
}

double max_abs_diff(const Unitary2& a, const Unitary2& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < 4; ++i) r = std::max(r, std::abs(a.m[i] - b.m[i]));
  return r;
}

double max_abs_diff(const QubitState& a, const QubitState& b) {
  return std::max(std::abs(a.amp[0] - b.amp[0]), std::abs(a.amp[1] - b.amp[1]));
}

PhaseMatch states_equal_up_to_phase(const QubitState& x, const QubitState& y, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  return match_arrays(x.amp, y.amp, tol);
}

PhaseMatch unitaries_equal_up_to_phase(const Unitary2& a, const Unitary2& b, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  return match_arrays(a.m, b.m, tol);
}

PauliCoeffs canonicalize(PauliCoeffs c) {
  double n = std::sqrt(c.norm_squared());
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("Pauli coefficients must be finite and nonzero");
  }
  c = {c.w0 / n, c.w1 / n, c.w2 / n, c.w3 / n};
  bool flip = false;
  if (std::abs(c.w0) > kCanonicalZeroTol) {
    flip = c.w0 < 0.0;
  } else {
    for (double w : {c.w1, c.w2, c.w3}) {
      if (std::abs(w) > kCanonicalZeroTol) {
        flip = w < 0.0;
        break;
      }
    }
  }
  if (flip) c = {-c.w0, -c.w1, -c.w2, -c.w3};
  if (c.w0 < 0.0) c.w0 = 0.0;
  // Adding +0.0 turns negative zeros into positive ones.
  return {c.w0 + 0.0, c.w1 + 0.0, c.w2 + 0.0, c.w3 + 0.0};
}

PauliCoeffs to_pauli_coeffs(const Unitary2& u) {
  if (!u.is_unitary()) {
    throw std::invalid_argument("to_pauli_coeffs requires a unitary matrix (residual " +
                                std::to_string(u.unitarity_residual()) + ")");
  }
  // Complex Pauli components c_j = tr(sigma_j u) / 2.
  Complex c0 = (u.m[0] + u.m[3]) / 2.0;
  Complex c1 = (u.m[1] + u.m[2]) / 2.0;
  Complex c2 = kI * (u.m[1] - u.m[2]) / 2.0;
  Complex c3 = (u.m[0] - u.m[3]) / 2.0;
  // u = e^{i phi} (w0 I + i w1 X - i w2 Y + i w3 Z) and det u = e^{2 i phi}.
  Complex phase = std::sqrt(u.det());
  phase /= std::abs(phase);
  Complex inv = std::conj(phase);
  PauliCoeffs w{(c0 * inv).real(), (-kI * c1 * inv).real(), (kI * c2 * inv).real(),
                (-kI * c3 * inv).real()};
  return canonicalize(w);
}

Unitary2 from_pauli_coeffs(const PauliCoeffs& c, double tol) {
  if (!(std::abs(c.norm_squared() - 1.0) <= tol)) {
    throw std::invalid_argument("Pauli coefficients are not normalized");
  }
  return Unitary2::from_entries(Complex{c.w0, c.w3}, Complex{-c.w2, c.w1},
                                Complex{c.w2, c.w1}, Complex{c.w0, -c.w3});
}

std::array<EigenPair, 2> eig_unitary(const Unitary2& u) {
  Complex half_tr = u.trace() / 2.0;
  Complex disc = std::sqrt(half_tr * half_tr - u.det());
  Complex lambda_hi = half_tr + disc;
  Complex lambda_lo = half_tr - disc;

  if (std::abs(lambda_hi - lambda_lo) < 1e-10) {
    QubitState e0 = QubitState::basis(0);
    QubitState e1 = QubitState::basis(1);
    return {EigenPair{inner(e0, apply(u, e0)), e0}, EigenPair{inner(e1, apply(u, e1)), e1}};
  }

  // Two null-vector candidates of (u - lambda I); keep the better conditioned.
  Complex va0 = u.m[1];
  Complex va1 = lambda_hi - u.m[0];
  Complex vb0 = lambda_hi - u.m[3];
  Complex vb1 = u.m[2];
  QubitState v = std::norm(va0) + std::norm(va1) >= std::norm(vb0) + std::norm(vb1)
                     ? QubitState::from_amplitudes(va0, va1)
                     : QubitState::from_amplitudes(vb0, vb1);
  // Unitaries are normal, so the second eigenvector is the orthogonal complement.
  QubitState w{{-std::conj(v.amp[1]), std::conj(v.amp[0])}};
  return {EigenPair{inner(v, apply(u, v)), v}, EigenPair{inner(w, apply(u, w)), w}};
}

double coeff_distance(const Unitary2& a, const Unitary2& b) {
  auto x = to_pauli_coeffs(a).as_array();
  auto y = to_pauli_coeffs(b).as_array();
  double d = 0.0;
  for (std::size_t i = 0; i < 4; ++i) d += std::abs(x[i] - y[i]);
  return d;
}

}  // namespace aqslab
