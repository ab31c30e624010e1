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

#include "aqslab/detection.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace aqslab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kRefineStarts = 4;
constexpr int kMaxSimplexIterations = 1000;

void require_z4(const SchemeConfig& scheme) {
  if (scheme.rotations != RotationFamily::UnbiasedZ4) {
    throw std::invalid_argument("detection probability is defined for the z4 rotation family");
  }
}

std::array<double, 3> bloch_vector(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

struct Vertex {
  double theta;
  double phi;
  double f;
};

/// Nelder-Mead on (theta, phi). Angles are unconstrained; the Bloch map wraps them.
Vertex nelder_mead(const DetectionModel& model, Vertex start, double step_theta, double step_phi,
                   double refine_tol) {
  auto eval = [&](double t, double p) { return Vertex{t, p, model.probability(QubitState::bloch(t, p))}; };
  std::array<Vertex, 3> s{start, eval(start.theta + step_theta, start.phi),
                          eval(start.theta, start.phi + step_phi)};
  auto by_f = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

  for (int it = 0; it < kMaxSimplexIterations; ++it) {
    std::stable_sort(s.begin(), s.end(), by_f);
    double diameter = 0.0;
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        auto u = bloch_vector(s[a].theta, s[a].phi);
        auto v = bloch_vector(s[b].theta, s[b].phi);
        diameter = std::max(diameter, std::hypot(u[0] - v[0], u[1] - v[1], u[2] - v[2]));
      }
    }
    if (s[2].f - s[0].f <= 1e-3 * refine_tol && diameter <= 1e-5) break;

    double ct = 0.5 * (s[0].theta + s[1].theta);
    double cp = 0.5 * (s[0].phi + s[1].phi);
    Vertex r = eval(2.0 * ct - s[2].theta, 2.0 * cp - s[2].phi);
    if (r.f < s[0].f) {
      Vertex e = eval(3.0 * ct - 2.0 * s[2].theta, 3.0 * cp - 2.0 * s[2].phi);
      s[2] = e.f < r.f ? e : r;
    } else if (r.f < s[1].f) {
      s[2] = r;
    } else {
      bool outside = r.f < s[2].f;
      Vertex c = outside ? eval(ct + 0.5 * (r.theta - ct), cp + 0.5 * (r.phi - cp))
                         : eval(ct + 0.5 * (s[2].theta - ct), cp + 0.5 * (s[2].phi - cp));
      if (c.f < (outside ? r.f : s[2].f)) {
        s[2] = c;
      } else {
        for (int v = 1; v < 3; ++v) {
          s[v] = eval(s[0].theta + 0.5 * (s[v].theta - s[0].theta),
                      s[0].phi + 0.5 * (s[v].phi - s[0].phi));
        }
      }
    }
  }
  return *std::min_element(s.begin(), s.end(), by_f);
}

}  // namespace

double max_identity_distance() { return 1.0 + std::numbers::sqrt3; }

BlochPoint BlochPoint::canonical(double theta, double phi) {
  theta = std::fmod(theta, 2.0 * kPi);
  if (theta < 0.0) theta += 2.0 * kPi;
  if (theta > kPi) {
    // cos((2pi - t)/2) = -cos(t/2), sin((2pi - t)/2) = sin(t/2).
    theta = 2.0 * kPi - theta;
    phi += kPi;
  }
  phi = std::fmod(phi, 2.0 * kPi);
  if (phi < 0.0) phi += 2.0 * kPi;
  if (phi >= 2.0 * kPi) phi = 0.0;
  return {theta, phi};
}

Unitary2 delta(const SchemeConfig& scheme, const Unitary2& attack, int j, int k, int j2,
               int k2) {
  require_z4(scheme);
  for (int idx : {j, k, j2, k2}) {
    if (idx < 0 || idx > 3) throw std::out_of_range("delta indices must lie in 0..3");
  }
  DetectionModel model(scheme, attack);
  return adjoint(model.conjugated(j, k)) * model.conjugated(j2, k2);
}

DetectionModel::DetectionModel(const SchemeConfig& scheme, const Unitary2& attack) {
  require_z4(scheme);
  scheme.validate();
  if (!attack.is_unitary()) throw std::invalid_argument("attack is not unitary");
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      Unitary2 sig = scheme.signing_operator({j, k});
      ops_[4 * j + k] = adjoint(sig) * attack * sig;
    }
  }
  trivial_ = unitaries_equal_up_to_phase(attack, Unitary2::identity(), 1e-12).matched;
}

double DetectionModel::probability(const QubitState& m) const {
  std::array<QubitState, 16> v;
  for (std::size_t a = 0; a < 16; ++a) v[a] = ops_[a] * m;
  // sum over ordered pairs of |<v_a|v_b>|^2, using the symmetry in (a, b).
  double diag = 0.0;
  double off = 0.0;
  for (std::size_t a = 0; a < 16; ++a) {
    double n = std::norm(v[a][0]) + std::norm(v[a][1]);
    diag += n * n;
    for (std::size_t b = a + 1; b < 16; ++b) off += std::norm(inner(v[a], v[b]));
  }
  double p = 1.0 - (256.0 + diag + 2.0 * off) / 512.0;
  return std::max(p, 0.0);
}

double detection_prob(const SchemeConfig& scheme, const Unitary2& attack, const QubitState& m) {
  return DetectionModel(scheme, attack).probability(m);
}

MinDetection grid_min_detection_prob(const DetectionModel& model, const GridSpec& grid) {
  MinDetection best{std::numeric_limits<double>::infinity(), {}};
  for (int i = 0; i < grid.n_theta; ++i) {
    double theta = kPi * i / (grid.n_theta - 1);
    for (int j = 0; j < grid.n_phi; ++j) {
      double phi = 2.0 * kPi * j / grid.n_phi;
      double p = model.probability(QubitState::bloch(theta, phi));
      if (p < best.p) best = {p, {theta, phi}};
    }
  }
  return best;
}

MinDetection min_detection_prob(const SchemeConfig& scheme, const Unitary2& attack,
                                const GridSpec& grid, double refine_tol) {
  if (grid.n_theta < 16 || grid.n_phi < 32) {
    throw std::invalid_argument("grid must be at least 16 x 32");
  }
  if (!(refine_tol > 0.0)) throw std::invalid_argument("refine_tol must be positive");
  DetectionModel model(scheme, attack);
  if (model.trivial()) return {0.0, {0.0, 0.0}};

  const int nt = grid.n_theta;
  const int np = grid.n_phi;
  std::vector<double> values(static_cast<std::size_t>(nt) * np);
  auto at = [&](int i, int j) -> double& { return values[static_cast<std::size_t>(i) * np + j]; };
  auto theta_of = [&](int i) { return kPi * i / (nt - 1); };
  auto phi_of = [&](int j) { return 2.0 * kPi * j / np; };
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < np; ++j) at(i, j) = model.probability(QubitState::bloch(theta_of(i), phi_of(j)));
  }

  // Grid cells no larger than any neighbour; each pole counts once.
  struct Cell {
    double f;
    int i;
    int j;
  };
  std::vector<Cell> starts;
  for (int i = 0; i < nt; ++i) {
    bool pole = i == 0 || i == nt - 1;
    for (int j = 0; j < (pole ? 1 : np); ++j) {
      double f = at(i, j);
      bool local = true;
      for (int di = -1; di <= 1 && local; ++di) {
        int ii = i + di;
        if (ii < 0 || ii >= nt) continue;
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          if (at(ii, (j + dj + np) % np) < f) {
            local = false;
            break;
          }
        }
      }
      if (pole) {
        for (int jj = 0; jj < np && local; ++jj) local = at(i, jj) >= f;
      }
      if (local) starts.push_back({f, i, j});
    }
  }
  std::stable_sort(starts.begin(), starts.end(),
                   [](const Cell& a, const Cell& b) { return a.f < b.f; });
  if (starts.size() > kRefineStarts) starts.resize(kRefineStarts);

  MinDetection best{std::numeric_limits<double>::infinity(), {}};
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < np; ++j) {
      if (at(i, j) < best.p) best = {at(i, j), {theta_of(i), phi_of(j)}};
    }
  }
  const double step_theta = kPi / (nt - 1);
  const double step_phi = 2.0 * kPi / np;
  for (const Cell& c : starts) {
    Vertex v = nelder_mead(model, {theta_of(c.i), phi_of(c.j), c.f}, step_theta, step_phi,
                           refine_tol);
    if (v.f < best.p) best = {v.f, BlochPoint::canonical(v.theta, v.phi)};
  }
  return best;
}

Unitary2 sample_attack(Rng& rng) {
  PauliCoeffs q;
  double n2 = 0.0;
  do {
    q = {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    n2 = q.norm_squared();
  } while (n2 < 1e-300);
  return from_pauli_coeffs(canonicalize(q));
}

SweepRecord evaluate_attack(const SchemeConfig& scheme, const Unitary2& attack,
                            const GridSpec& grid, double refine_tol) {
  SweepRecord rec;
  rec.attack_coeffs = to_pauli_coeffs(attack);
  rec.d_q = coeff_distance(Unitary2::identity(), attack);
  MinDetection m = min_detection_prob(scheme, attack, grid, refine_tol);
  rec.p_q = m.p;
  rec.argmin = m.argmin;
  return rec;
}

std::vector<SweepRecord> sweep(const SchemeConfig& scheme, const SweepOptions& options) {
  require_z4(scheme);
  if (options.n_samples < 1) throw std::invalid_argument("sweep needs at least one sample");
  const std::int64_t n = options.n_samples;
  const std::int64_t total = n + static_cast<std::int64_t>(options.injected.size());
  std::vector<SweepRecord> out(static_cast<std::size_t>(total));

  auto work = [&](std::int64_t i) {
    Unitary2 attack;
    std::int64_t seed_index = -1;
    if (i < n) {
      seed_index = i;
      if (options.attack_override) {
        attack = options.attack_override(i);
      } else {
        Rng rng = Rng::stream(options.seed, static_cast<std::uint64_t>(i));
        attack = sample_attack(rng);
      }
    } else {
      attack = options.injected[static_cast<std::size_t>(i - n)];
    }
    SweepRecord rec = evaluate_attack(scheme, attack, options.grid, options.refine_tol);
    rec.index = i;
    rec.seed_index = seed_index;
    out[static_cast<std::size_t>(i)] = rec;
  };

  unsigned threads = std::max(1u, options.threads);
  if (threads == 1 || total == 1) {
    for (std::int64_t i = 0; i < total; ++i) work(i);
    return out;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::int64_t i = next++; i < total; i = next++) work(i);
    });
  }
  for (std::thread& t : pool) t.join();
  return out;
}

int envelope_bin_of(double d, int n_bins) {
  double width = max_identity_distance() / n_bins;
  int b = static_cast<int>(std::floor(d / width));
  return std::clamp(b, 0, n_bins - 1);
}

std::vector<EnvelopeBin> envelope(const std::vector<SweepRecord>& records, int n_bins) {
  if (n_bins < 2) throw std::invalid_argument("envelope needs at least two bins");
  if (records.empty()) throw std::invalid_argument("envelope of an empty record list");
  const double width = max_identity_distance() / n_bins;
  std::vector<EnvelopeBin> bins(static_cast<std::size_t>(n_bins));
  for (int b = 0; b < n_bins; ++b) {
    bins[b] = {b * width, b == n_bins - 1 ? max_identity_distance() : (b + 1) * width,
               std::numeric_limits<double>::quiet_NaN(), 0};
  }
  for (const SweepRecord& r : records) {
    EnvelopeBin& bin = bins[envelope_bin_of(r.d_q, n_bins)];
    bin.p_min = bin.support_count == 0 ? r.p_q : std::min(bin.p_min, r.p_q);
    ++bin.support_count;
  }
  return bins;
}

double escape_probability(double p, int n) { return std::pow(1.0 - p, n); }

int copies_for_escape(double p, double target) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("detection probability must be in (0, 1]");
  if (!(target > 0.0 && target < 1.0)) throw std::invalid_argument("target must be in (0, 1)");
  if (p == 1.0) return 1;
  return static_cast<int>(std::ceil(std::log(target) / std::log1p(-p)));
}

}  // namespace aqslab
