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

#ifndef AQSLAB_DETECTION_H
#define AQSLAB_DETECTION_H

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "aqslab/aqs.h"
#include "aqslab/qcore.h"
#include "aqslab/rng.h"

namespace aqslab {

/// Upper end of d(I, Q) over all unitaries Q, 1 + sqrt(3).
double max_identity_distance();

struct BlochPoint {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)

  /// Folds arbitrary angles onto the canonical ranges; the state is unchanged
  /// up to global phase.
  static BlochPoint canonical(double theta, double phi);
  QubitState state() const { return QubitState::bloch(theta, phi); }
};

/// Delta_{jkj'k'} = C_{jk}^dagger C_{j'k'} with
/// C_{jk} = R_j^dagger W^dagger sigma_k Q sigma_k W R_j. Only defined for the
/// unbiased Z4 family; throws std::invalid_argument otherwise and
/// std::out_of_range for bad indices.
Unitary2 delta(const SchemeConfig& scheme, const Unitary2& attack, int j, int k, int j2, int k2);

/// Single-swap-test detection probability of `attack`, averaged over two
/// independently drawn keys:
///   P = 1 - (1/512) sum_{j,k,j',k'} (1 + |<M|Delta|M>|^2).
/// The 16 conjugated attacks are built once per model.
class DetectionModel {
 public:
  DetectionModel(const SchemeConfig& scheme, const Unitary2& attack);

  double probability(const QubitState& m) const;
  double probability(const BlochPoint& p) const { return probability(p.state()); }

  const Unitary2& conjugated(int j, int k) const { return ops_[4 * j + k]; }
  /// True when the attack is the identity up to phase, so P vanishes identically.
  bool trivial() const { return trivial_; }

 private:
  std::array<Unitary2, 16> ops_;
  bool trivial_ = false;
};

double detection_prob(const SchemeConfig& scheme, const Unitary2& attack, const QubitState& m);

struct GridSpec {
  int n_theta = 64;
  int n_phi = 128;
};

struct MinDetection {
  double p = 0.0;
  BlochPoint argmin;
};

/// Coarse Bloch-sphere grid scan (theta including both poles) followed by
/// Nelder-Mead refinement from the best grid local minima. Deterministic.
/// Throws std::invalid_argument if n_theta < 16 or n_phi < 32.
MinDetection min_detection_prob(const SchemeConfig& scheme, const Unitary2& attack,
                                const GridSpec& grid = {}, double refine_tol = 1e-8);

/// Brute-force grid minimum without refinement.
MinDetection grid_min_detection_prob(const DetectionModel& model, const GridSpec& grid);

/// Attack with coefficients uniform on the unit 3-sphere, folded onto q0 >= 0.
Unitary2 sample_attack(Rng& rng);

struct SweepRecord {
  std::int64_t index = 0;
  PauliCoeffs attack_coeffs;
  double d_q = 0.0;
  double p_q = 0.0;
  BlochPoint argmin;
  /// Counter used to derive the attack; -1 for injected attacks.
  std::int64_t seed_index = 0;
};

struct SweepOptions {
  int n_samples = 10000;
  std::uint64_t seed = 0;
  GridSpec grid;
  double refine_tol = 1e-8;
  unsigned threads = 1;
  /// Appended after the sampled records, in order.
  std::vector<Unitary2> injected;
  /// Replaces sample_attack for sample i when set.
  std::function<Unitary2(std::int64_t)> attack_override;
};

SweepRecord evaluate_attack(const SchemeConfig& scheme, const Unitary2& attack,
                            const GridSpec& grid, double refine_tol);

/// Sample i draws from Rng::stream(seed, i); results do not depend on the
/// number of threads.
std::vector<SweepRecord> sweep(const SchemeConfig& scheme, const SweepOptions& options);

struct EnvelopeBin {
  double d_lo = 0.0;
  double d_hi = 0.0;
  /// NaN when the bin is empty.
  double p_min = 0.0;
  int support_count = 0;
};

/// Uniform bins over [0, 1 + sqrt(3)]; the right edge belongs to the last bin.
std::vector<EnvelopeBin> envelope(const std::vector<SweepRecord>& records, int n_bins = 100);

/// Index of the bin holding distance d.
int envelope_bin_of(double d, int n_bins);

/// (1 - p)^n, the chance that n independent swap tests all miss the attack.
double escape_probability(double p, int n);
/// Smallest n with escape_probability(p, n) <= target. Throws for p <= 0.
int copies_for_escape(double p, double target);

}  // namespace aqslab

#endif  // AQSLAB_DETECTION_H
