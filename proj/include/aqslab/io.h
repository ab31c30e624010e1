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

#ifndef AQSLAB_IO_H
#define AQSLAB_IO_H

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aqslab/detection.h"
#include "aqslab/forgery.h"

namespace aqslab {

inline constexpr const char* kSweepCsvHeader = "index,q0,q1,q2,q3,d_q,p_q,theta_min,phi_min";
inline constexpr const char* kEnvelopeCsvHeader = "d_lo,d_hi,p_min,count";

/// printf("%.17g").
std::string format_g17(double x);

/// Key encoding "j,k".
std::string key_string(const KeyPair& key);
KeyPair parse_key_string(const std::string& s);

// Witness document:
//   {"rotations": "z2", "message": [[re, im], [re, im]],
//    "attack": [[re, im] x 4], "replacement": [[re, im] x 4],
//    "phases": {"j,k": theta}, "residuals": {"j,k": r},
//    "alternate_replacement": [[re, im] x 4]   (optional)}
nlohmann::json state_to_json(const QubitState& s);
nlohmann::json matrix_to_json(const Unitary2& u);
QubitState state_from_json(const nlohmann::json& j);
Unitary2 matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ForgeryWitness& w);
/// Throws nlohmann::json::exception or std::invalid_argument on malformed input.
ForgeryWitness witness_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PauliCoeffs& c);
nlohmann::json to_json(const Table1Classification& c);
nlohmann::json to_json(const UniformForgeryResult& r);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records);
void write_envelope_csv(std::ostream& out, const std::vector<EnvelopeBin>& bins);
nlohmann::json to_json(const SweepRecord& r);
nlohmann::json to_json(const EnvelopeBin& b);

}  // namespace aqslab

#endif  // AQSLAB_IO_H
