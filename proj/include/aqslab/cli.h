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

#ifndef AQSLAB_CLI_H
#define AQSLAB_CLI_H

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "aqslab/aqs.h"
#include "aqslab/qcore.h"

namespace aqslab::cli {

enum ExitCode : int {
  kOk = 0,
  kRefuted = 1,
  kBadInput = 2,
  kIoFailure = 3,
};

/// Runs one command line (without the program name) and returns its exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "wa", "t", "identity", or four comma-separated coefficients w0,w1,w2,w3
/// (normalized within 1e-6, then canonicalized). Throws std::invalid_argument.
Unitary2 parse_assistant(std::string_view text);

/// "s0".."s3", a preset name, or four coefficients.
Unitary2 parse_operator(std::string_view text);

RotationFamily parse_rotations(std::string_view text);

/// Sweep worker count: the requested value (0 = hardware concurrency), capped
/// by AQSLAB_THREADS when set.
unsigned resolve_threads(unsigned requested);

}  // namespace aqslab::cli

#endif  // AQSLAB_CLI_H
