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

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gtest/gtest.h"

#include "aqslab/aqs.h"
#include "aqslab/detection.h"
#include "aqslab/forgery.h"
#include "aqslab/rng.h"

using namespace aqslab;

namespace {

const SchemeConfig kT{RotationFamily::UnbiasedZ4, preset(Preset::T)};
const SchemeConfig kWa{RotationFamily::UnbiasedZ4, preset(Preset::Wa)};

// Literal 256-term sum over explicitly multiplied Delta operators.
double naive_detection(const SchemeConfig& scheme, const Unitary2& q, const QubitState& m) {
  double sum = 0.0;
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k)
      for (int j2 = 0; j2 < 4; ++j2)
        for (int k2 = 0; k2 < 4; ++k2) {
          sum += 1.0 + std::norm(inner(m, delta(scheme, q, j, k, j2, k2) * m));
        }
  return 1.0 - sum / 512.0;
}

}  // namespace

TEST(Delta, IdentityAttackGivesIdentity) {
  for (int j = 0; j < 4; ++j)
    for (int k2 = 0; k2 < 4; ++k2) {
      EXPECT_LE(max_abs_diff(delta(kT, Unitary2::identity(), j, 1, 2, k2), Unitary2::identity()),
                1e-14);
    }
}

TEST(Delta, DiagonalIsIdentity) {
  Rng rng(60);
  Unitary2 q = haar_unitary(rng);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      EXPECT_LE(max_abs_diff(delta(kT, q, j, k, j, k), Unitary2::identity()), 1e-14);
    }
}

TEST(Delta, ExplicitProductAndUnitarity) {
  Unitary2 t = preset(Preset::T);
  Unitary2 q = pauli(3);
  // (0,0,1,0): T^dag Q^dag T  *  sigma_1 T^dag Q T sigma_1.
  Unitary2 expected = adjoint(t) * adjoint(q) * t * pauli(1) * adjoint(t) * q * t * pauli(1);
  Unitary2 d = delta(kT, q, 0, 0, 1, 0);
  EXPECT_LE(max_abs_diff(d, expected), 1e-14);
  EXPECT_LE(d.unitarity_residual(), 1e-12);
}

TEST(Delta, Errors) {
  SchemeConfig z2{RotationFamily::BiasedZ2, preset(Preset::T)};
  EXPECT_THROW(delta(z2, pauli(1), 0, 0, 0, 0), std::invalid_argument);
  EXPECT_THROW(delta(kT, pauli(1), 0, 4, 0, 0), std::out_of_range);
  EXPECT_THROW(delta(kT, pauli(1), -1, 0, 0, 0), std::out_of_range);
  EXPECT_THROW(detection_prob(z2, pauli(1), QubitState{}), std::invalid_argument);
}

TEST(DetectionProb, Examples) {
  Rng rng(61);
  for (int i = 0; i < 20; ++i) {
    EXPECT_NEAR(detection_prob(kT, Unitary2::identity(), haar_state(rng)), 0.0, 1e-15);
  }
  EXPECT_LE(detection_prob(kWa, pauli(3), QubitState::basis(0)), 1e-12);
  EXPECT_LE(detection_prob(kWa, pauli(3), QubitState::basis(1)), 1e-12);
  // Pinned against an independent dense-matrix evaluation: 20/81 and 8/81.
  EXPECT_NEAR(detection_prob(kT, pauli(1), QubitState::basis(0)), 20.0 / 81.0, 1e-12);
  EXPECT_NEAR(detection_prob(kT, pauli(3), QubitState::basis(0)), 8.0 / 81.0, 1e-12);
}

TEST(DetectionProb, MatchesNaiveSum) {
  Rng rng(62);
  for (int i = 0; i < 30; ++i) {
    Unitary2 q = haar_unitary(rng);
    QubitState m = haar_state(rng);
    SchemeConfig scheme{RotationFamily::UnbiasedZ4, i % 3 ? preset(Preset::T) : haar_unitary(rng)};
    EXPECT_NEAR(detection_prob(scheme, q, m), naive_detection(scheme, q, m), 1e-13);
  }
}

TEST(DetectionProb, PhaseInvariance) {
  Rng rng(63);
  for (int i = 0; i < 100; ++i) {
    Unitary2 q = haar_unitary(rng);
    QubitState m = haar_state(rng);
    Complex a = std::polar(1.0, 6.0 * rng.uniform());
    Complex b = std::polar(1.0, 6.0 * rng.uniform());
    QubitState mb{{m[0] * b, m[1] * b}};
    EXPECT_NEAR(detection_prob(kT, scale(q, a), mb), detection_prob(kT, q, m), 1e-13);
  }
}

TEST(DetectionProb, AdjointSymmetry) {
  Rng rng(64);
  for (int i = 0; i < 100; ++i) {
    Unitary2 q = haar_unitary(rng);
    QubitState m = haar_state(rng);
    EXPECT_NEAR(detection_prob(kT, adjoint(q), m), detection_prob(kT, q, m), 1e-13);
  }
}

TEST(DetectionProb, BoundedByDiagonalCap) {
  Rng rng(65);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    SchemeConfig scheme{RotationFamily::UnbiasedZ4, i % 2 ? preset(Preset::T) : haar_unitary(rng)};
    double p = detection_prob(scheme, haar_unitary(rng), haar_state(rng));
    EXPECT_GE(p, 0.0);
    worst = std::max(worst, p);
  }
  EXPECT_LE(worst, 15.0 / 32.0 + 1e-12);
}

TEST(DetectionProb, ForgeableMeansUndetectable) {
  Rng rng(66);
  int hits = 0;
  // Assistants from the Table 1 manifolds make every message forgeable.
  for (int i = 0; i < 50; ++i) {
    double t = 2.0 * std::numbers::pi * rng.uniform();
    Unitary2 w = from_pauli_coeffs(canonicalize({std::cos(t), 0.0, std::sin(t), 0.0}));
    SchemeConfig scheme{RotationFamily::UnbiasedZ4, w};
    for (int l = 1; l <= 3; ++l) {
      QubitState m = haar_state(rng);
      if (check_forgeable(scheme, m, pauli(l))) {
        ++hits;
        EXPECT_LE(detection_prob(scheme, pauli(l), m), 1e-9);
      }
    }
  }
  EXPECT_GT(hits, 0);
  if (auto w = check_forgeable(kWa, QubitState::basis(0), pauli(3))) {
    EXPECT_LE(detection_prob(kWa, w->attack, w->message), 1e-9);
  } else {
    ADD_FAILURE() << "basis state should be forgeable";
  }
}

TEST(Bloch, CanonicalFolding) {
  Rng rng(67);
  for (int i = 0; i < 200; ++i) {
    double th = -10.0 + 20.0 * rng.uniform();
    double ph = -10.0 + 20.0 * rng.uniform();
    BlochPoint p = BlochPoint::canonical(th, ph);
    EXPECT_GE(p.theta, 0.0);
    EXPECT_LE(p.theta, std::numbers::pi);
    EXPECT_GE(p.phi, 0.0);
    EXPECT_LT(p.phi, 2.0 * std::numbers::pi);
    EXPECT_TRUE(states_equal_up_to_phase(p.state(), QubitState::bloch(th, ph), 1e-12));
  }
}

TEST(MinDetection, IdentityAttack) {
  MinDetection m = min_detection_prob(kT, Unitary2::identity());
  EXPECT_EQ(m.p, 0.0);
  EXPECT_EQ(m.argmin.theta, 0.0);
  EXPECT_EQ(m.argmin.phi, 0.0);
}

TEST(MinDetection, WaSigma3AtPole) {
  MinDetection m = min_detection_prob(kWa, pauli(3));
  EXPECT_LE(m.p, 1e-12);
  double pole = std::min(m.argmin.theta, std::numbers::pi - m.argmin.theta);
  EXPECT_LE(pole, 1e-4);
}

TEST(MinDetection, TSigma1IsPositiveAndBeatsOracle) {
  MinDetection m = min_detection_prob(kT, pauli(1));
  EXPECT_GT(m.p, 1e-3);
  MinDetection oracle = grid_min_detection_prob(DetectionModel(kT, pauli(1)), {512, 1024});
  EXPECT_LE(m.p, oracle.p + 1e-8);
}

TEST(MinDetection, PaulisReachTheDip) {
  // T's coefficients are symmetric under cyclic permutation of the Paulis, so
  // all three share the minimum 8/81 attained by sigma_3 at |0>.
  for (int l = 1; l <= 3; ++l) EXPECT_NEAR(min_detection_prob(kT, pauli(l)).p, 8.0 / 81.0, 1e-9);
}

TEST(MinDetection, DominatesRandomProbes) {
  Rng rng(68);
  for (int i = 0; i < 10; ++i) {
    Unitary2 q = sample_attack(rng);
    MinDetection m = min_detection_prob(kT, q);
    EXPECT_NEAR(detection_prob(kT, q, m.argmin.state()), m.p, 1e-12);
    for (int probe = 0; probe < 100; ++probe) {
      EXPECT_LE(m.p, detection_prob(kT, q, haar_state(rng)) + 1e-12);
    }
  }
}

TEST(MinDetection, AgreesWithDenseGrid) {
  Rng rng(69);
  for (int i = 0; i < 5; ++i) {
    Unitary2 q = sample_attack(rng);
    MinDetection m = min_detection_prob(kT, q);
    MinDetection oracle = grid_min_detection_prob(DetectionModel(kT, q), {512, 1024});
    EXPECT_LE(m.p, oracle.p + 1e-8);
  }
}

TEST(MinDetection, Deterministic) {
  Rng rng(70);
  Unitary2 q = sample_attack(rng);
  MinDetection a = min_detection_prob(kT, q);
  MinDetection b = min_detection_prob(kT, q);
  EXPECT_EQ(a.p, b.p);
  EXPECT_EQ(a.argmin.theta, b.argmin.theta);
  EXPECT_EQ(a.argmin.phi, b.argmin.phi);
}

TEST(MinDetection, Errors) {
  EXPECT_THROW(min_detection_prob(kT, pauli(1), {8, 64}), std::invalid_argument);
  EXPECT_THROW(min_detection_prob(kT, pauli(1), {64, 16}), std::invalid_argument);
}

TEST(SampleAttack, NormalizedAndCanonical) {
  Rng rng(71);
  std::array<double, 4> mean{};
  double d_lo = 10.0, d_hi = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    Unitary2 q = sample_attack(rng);
    PauliCoeffs c = to_pauli_coeffs(q);
    EXPECT_NEAR(c.norm_squared(), 1.0, 1e-12);
    EXPECT_GE(c.w0, 0.0);
    auto arr = c.as_array();
    for (int k = 0; k < 4; ++k) mean[k] += arr[k] / n;
    double d = coeff_distance(Unitary2::identity(), q);
    d_lo = std::min(d_lo, d);
    d_hi = std::max(d_hi, d);
  }
  // Hemisphere centroid: E[w0] = 4 / (3 pi) for w0 >= 0 on S^3, other means 0.
  EXPECT_NEAR(mean[0], 4.0 / (3.0 * std::numbers::pi), 0.01);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(mean[k], 0.0, 0.01);
  EXPECT_LT(d_lo, 0.3);
  EXPECT_GT(d_hi, max_identity_distance() - 0.3);
  EXPECT_LE(d_hi, max_identity_distance() + 1e-12);
}

TEST(SampleAttack, SeedDeterminism) {
  Rng a = Rng::stream(5, 17);
  Rng b = Rng::stream(5, 17);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(max_abs_diff(sample_attack(a), sample_attack(b)), 0.0);
  }
}

TEST(Sweep, ForcedIdentityRecord) {
  SweepOptions opt;
  opt.n_samples = 1;
  opt.attack_override = [](std::int64_t) { return Unitary2::identity(); };
  auto recs = sweep(kT, opt);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].d_q, 0.0);
  EXPECT_EQ(recs[0].p_q, 0.0);
  EXPECT_EQ(recs[0].seed_index, 0);
}

TEST(Sweep, RecordInvariantsAndThreadIndependence) {
  SweepOptions opt;
  opt.n_samples = 40;
  opt.seed = 9;
  opt.injected = {pauli(1), pauli(3)};
  auto one = sweep(kT, opt);
  opt.threads = 3;
  auto three = sweep(kT, opt);
  ASSERT_EQ(one.size(), 42u);
  ASSERT_EQ(three.size(), 42u);
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].index, static_cast<std::int64_t>(i));
    EXPECT_EQ(one[i].p_q, three[i].p_q);
    EXPECT_EQ(one[i].argmin.theta, three[i].argmin.theta);
    EXPECT_EQ(one[i].attack_coeffs.w2, three[i].attack_coeffs.w2);
    Unitary2 q = from_pauli_coeffs(one[i].attack_coeffs);
    EXPECT_NEAR(one[i].d_q, coeff_distance(Unitary2::identity(), q), 1e-12);
    EXPECT_NEAR(one[i].p_q, detection_prob(kT, q, one[i].argmin.state()), 1e-12);
    EXPECT_LE(one[i].p_q, 15.0 / 32.0);
  }
  EXPECT_EQ(one[40].seed_index, -1);
  EXPECT_NEAR(one[40].d_q, 2.0, 1e-12);
  EXPECT_EQ(one[3].seed_index, 3);
}

TEST(Sweep, SampleDependsOnlyOnSeedAndIndex) {
  SweepOptions a;
  a.n_samples = 10;
  a.seed = 4;
  SweepOptions b = a;
  b.n_samples = 5;
  auto ra = sweep(kT, a);
  auto rb = sweep(kT, b);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(ra[i].p_q, rb[i].p_q);
}

TEST(Envelope, SingleRecord) {
  SweepRecord r;
  auto bins = envelope({r}, 100);
  ASSERT_EQ(bins.size(), 100u);
  EXPECT_EQ(bins[0].p_min, 0.0);
  EXPECT_EQ(bins[0].support_count, 1);
  for (int b = 1; b < 100; ++b) {
    EXPECT_EQ(bins[b].support_count, 0);
    EXPECT_TRUE(std::isnan(bins[b].p_min));
  }
  EXPECT_EQ(bins.back().d_hi, max_identity_distance());
}

TEST(Envelope, PerBinMinimum) {
  std::vector<SweepRecord> recs(4);
  recs[0].d_q = 2.0, recs[0].p_q = 0.3;
  recs[1].d_q = 2.001, recs[1].p_q = 0.1;
  recs[2].d_q = max_identity_distance(), recs[2].p_q = 0.2;
  recs[3].d_q = 0.5, recs[3].p_q = 0.05;
  auto bins = envelope(recs, 10);
  int b2 = envelope_bin_of(2.0, 10);
  EXPECT_EQ(bins[b2].p_min, 0.1);
  EXPECT_EQ(bins[b2].support_count, 2);
  EXPECT_EQ(bins[9].p_min, 0.2);
  EXPECT_LE(bins[b2].d_lo, 2.0);
  EXPECT_GT(bins[b2].d_hi, 2.0);
  EXPECT_THROW(envelope({}, 10), std::invalid_argument);
  EXPECT_THROW(envelope(recs, 1), std::invalid_argument);
}

TEST(Escape, GeometricDecay) {
  EXPECT_DOUBLE_EQ(escape_probability(0.5, 3), 0.125);
  int n = copies_for_escape(0.0027, 1e-6);
  EXPECT_LT(escape_probability(0.0027, n), 1e-6);
  EXPECT_GE(escape_probability(0.0027, n - 1), 1e-6);
  EXPECT_THROW(copies_for_escape(0.0, 1e-6), std::invalid_argument);
}
