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

#include "aqslab/io.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace aqslab {

using nlohmann::json;

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string key_string(const KeyPair& key) {
  return std::to_string(key.j) + "," + std::to_string(key.k);
}

KeyPair parse_key_string(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("key must look like 'j,k'");
  try {
    std::size_t used = 0;
    KeyPair key{std::stoi(s.substr(0, comma), &used), 0};
    if (used != comma) throw std::invalid_argument("");
    std::string rest = s.substr(comma + 1);
    key.k = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("");
    return key;
  } catch (const std::logic_error&) {
    throw std::invalid_argument("key must look like 'j,k', got '" + s + "'");
  }
}

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json key_map(const std::map<KeyPair, double>& m) {
  json out = json::object();
  for (const auto& [key, v] : m) out[key_string(key)] = v;
  return out;
}

std::map<KeyPair, double> key_map_from_json(const json& j) {
  std::map<KeyPair, double> out;
  for (const auto& [k, v] : j.items()) out[parse_key_string(k)] = v.get<double>();
  return out;
}

}  // namespace

json state_to_json(const QubitState& s) {
  return json::array({complex_to_json(s[0]), complex_to_json(s[1])});
}

json matrix_to_json(const Unitary2& u) {
  json out = json::array();
  for (const Complex& z : u.m) out.push_back(complex_to_json(z));
  return out;
}

QubitState state_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("state needs two amplitudes");
  return QubitState{{complex_from_json(j.at(0)), complex_from_json(j.at(1))}};
}

Unitary2 matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw std::invalid_argument("matrix needs four entries");
  Unitary2 u;
  for (std::size_t i = 0; i < 4; ++i) u.m[i] = complex_from_json(j.at(i));
  return u;
}

json to_json(const ForgeryWitness& w) {
  json out{{"rotations", std::string(to_string(w.rotations))},
           {"message", state_to_json(w.message)},
           {"attack", matrix_to_json(w.attack)},
           {"replacement", matrix_to_json(w.replacement)},
           {"phases", key_map(w.phases)},
           {"residuals", key_map(w.residuals)}};
  if (w.alternate_replacement) out["alternate_replacement"] = matrix_to_json(*w.alternate_replacement);
  return out;
}

ForgeryWitness witness_from_json(const json& j) {
  ForgeryWitness w;
  std::string rot = j.at("rotations").get<std::string>();
  if (rot == "z2") {
    w.rotations = RotationFamily::BiasedZ2;
  } else if (rot == "z4") {
    w.rotations = RotationFamily::UnbiasedZ4;
  } else {
    throw std::invalid_argument("unknown rotation family '" + rot + "'");
  }
  w.message = state_from_json(j.at("message"));
  w.attack = matrix_from_json(j.at("attack"));
  w.replacement = matrix_from_json(j.at("replacement"));
  w.phases = key_map_from_json(j.at("phases"));
  if (j.contains("residuals")) w.residuals = key_map_from_json(j.at("residuals"));
  if (j.contains("alternate_replacement")) {
    w.alternate_replacement = matrix_from_json(j.at("alternate_replacement"));
  }
  return w;
}

json to_json(const PauliCoeffs& c) { return json::array({c.w0, c.w1, c.w2, c.w3}); }

json to_json(const Table1Classification& c) {
  json conds = json::array();
  for (const ConditionPair& p : c.conditions) {
    conds.push_back({{"pauli", p.pauli},
                     {"pair", p.pair},
                     {"first", p.first},
                     {"second", p.second},
                     {"residual", p.residual()},
                     {"satisfied", p.satisfied}});
  }
  return {{"forging_paulis", c.forging_paulis}, {"conditions", conds}};
}

json to_json(const UniformForgeryResult& r) {
  json out{{"exists", r.exists}, {"max_residual", r.max_residual}};
  if (r.replacement) out["replacement"] = matrix_to_json(*r.replacement);
  return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  out << kSweepCsvHeader << '\n';
  for (const SweepRecord& r : records) {
    out << r.index << ',' << format_g17(r.attack_coeffs.w0) << ','
        << format_g17(r.attack_coeffs.w1) << ',' << format_g17(r.attack_coeffs.w2) << ','
        << format_g17(r.attack_coeffs.w3) << ',' << format_g17(r.d_q) << ','
        << format_g17(r.p_q) << ',' << format_g17(r.argmin.theta) << ','
        << format_g17(r.argmin.phi) << '\n';
  }
}

void write_envelope_csv(std::ostream& out, const std::vector<EnvelopeBin>& bins) {
  out << kEnvelopeCsvHeader << '\n';
  for (const EnvelopeBin& b : bins) {
    out << format_g17(b.d_lo) << ',' << format_g17(b.d_hi) << ',' << format_g17(b.p_min) << ','
        << b.support_count << '\n';
  }
}

json to_json(const SweepRecord& r) {
  return {{"index", r.index},
          {"q", to_json(r.attack_coeffs)},
          {"d_q", r.d_q},
          {"p_q", r.p_q},
          {"theta_min", r.argmin.theta},
          {"phi_min", r.argmin.phi}};
}

json to_json(const EnvelopeBin& b) {
  json p = std::isnan(b.p_min) ? json(nullptr) : json(b.p_min);
  return {{"d_lo", b.d_lo}, {"d_hi", b.d_hi}, {"p_min", p}, {"count", b.support_count}};
}

}  // namespace aqslab
