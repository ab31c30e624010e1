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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "gtest/gtest.h"

#include "aqslab/cli.h"
#include "aqslab/io.h"

using namespace aqslab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("aqslab_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

}  // namespace

TEST(Parse, Assistant) {
  EXPECT_EQ(max_abs_diff(cli::parse_assistant("wa"), preset(Preset::Wa)), 0.0);
  Unitary2 u = cli::parse_assistant("0,0.6,0,0.8");
  EXPECT_TRUE(unitaries_equal_up_to_phase(u, from_pauli_coeffs({0, 0.6, 0, 0.8}), 1e-15));
  // Negative w0 is canonicalized to the same operator up to phase.
  EXPECT_TRUE(unitaries_equal_up_to_phase(cli::parse_assistant("-0.6,0,0.8,0"),
                                          from_pauli_coeffs({0.6, 0, -0.8, 0}), 1e-15));
  EXPECT_THROW(cli::parse_assistant("0.5,0.5,0.5,0.6"), std::invalid_argument);
  EXPECT_THROW(cli::parse_assistant("1,0,0"), std::invalid_argument);
  EXPECT_THROW(cli::parse_assistant("nope"), std::invalid_argument);
}

TEST(Parse, OperatorAndRotations) {
  EXPECT_EQ(max_abs_diff(cli::parse_operator("s2"), pauli(2)), 0.0);
  EXPECT_THROW(cli::parse_operator("s4"), std::invalid_argument);
  EXPECT_EQ(cli::parse_rotations("z4"), RotationFamily::UnbiasedZ4);
  EXPECT_THROW(cli::parse_rotations("z3"), std::invalid_argument);
}

TEST(Parse, ThreadCap) {
  ::setenv("AQSLAB_THREADS", "2", 1);
  EXPECT_EQ(cli::resolve_threads(8), 2u);
  EXPECT_EQ(cli::resolve_threads(1), 1u);
  ::unsetenv("AQSLAB_THREADS");
  EXPECT_EQ(cli::resolve_threads(3), 3u);
  EXPECT_GE(cli::resolve_threads(0), 1u);
}

TEST(CheckEncryption, Presets) {
  for (std::string a : {"wa", "identity", "t"}) {
    Result r = run_cli({"check-encryption", "--assistant", a});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_LE(json::parse(r.out).at("max_residual").get<double>(), 1e-12);
  }
}

TEST(CheckEncryption, NotNormalized) {
  Result r = run_cli({"check-encryption", "--assistant", "0.5,0.5,0.5,0.6"});
  EXPECT_EQ(r.code, cli::kBadInput);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(FindForgeable, WaMessage) {
  Result r = run_cli({"find-forgeable", "--assistant", "wa"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  json j = json::parse(r.out);
  QubitState m = state_from_json(j.at("witness").at("message"));
  double norm = std::numbers::sqrt2 * std::sqrt(3.0 - std::sqrt(3.0));
  QubitState expected{{(std::sqrt(3.0) - 1.0) / norm, std::numbers::sqrt2 / norm}};
  EXPECT_TRUE(states_equal_up_to_phase(m, expected, 1e-9));
  EXPECT_TRUE(j.at("verification").at("passed").get<bool>());
  EXPECT_EQ(j.at("verification").at("per_key").size(), 8u);
  // The embedded witness parses back through the documented schema.
  EXPECT_EQ(to_json(witness_from_json(j.at("witness"))), j.at("witness"));
}

TEST(FindForgeable, IdentityAndRandom) {
  Result id = run_cli({"find-forgeable", "--assistant", "identity"});
  ASSERT_EQ(id.code, cli::kOk);
  QubitState m = state_from_json(json::parse(id.out).at("witness").at("message"));
  EXPECT_LE(max_abs_diff(m, QubitState::basis(0)), 1e-15);
  for (std::string seed : {"1", "2", "3"}) {
    EXPECT_EQ(run_cli({"find-forgeable", "--assistant", "random", "--seed", seed}).code, cli::kOk);
  }
  EXPECT_EQ(run_cli({"find-forgeable", "--assistant", "t", "--eigen", "2"}).code, cli::kOk);
}

TEST(Classify, Presets) {
  Result id = run_cli({"classify", "--assistant", "identity"});
  ASSERT_EQ(id.code, cli::kOk);
  EXPECT_EQ(json::parse(id.out).at("classification").at("forging_paulis"),
            json::array({1, 2, 3}));
  Result t = run_cli({"classify", "--assistant", "t"});
  EXPECT_TRUE(json::parse(t.out).at("classification").at("forging_paulis").empty());
  Result wa = run_cli({"classify", "--assistant", "wa", "--cross-check"});
  ASSERT_EQ(wa.code, cli::kOk) << wa.out;
  json rows = json::parse(wa.out).at("cross_check");
  ASSERT_EQ(rows.size(), 3u);
  for (const json& row : rows) EXPECT_TRUE(row.at("consistent").get<bool>());
}

TEST(UniformForgery, Examples) {
  Result id = run_cli({"uniform-forgery", "--assistant", "identity", "--attack", "s1",
                       "--rotations", "z2", "--expect", "exists"});
  ASSERT_EQ(id.code, cli::kOk);
  json j = json::parse(id.out);
  EXPECT_TRUE(j.at("result").at("exists").get<bool>());
  EXPECT_TRUE(unitaries_equal_up_to_phase(matrix_from_json(j.at("result").at("replacement")),
                                          pauli(1), 1e-9));
  for (std::string l : {"s1", "s2", "s3"}) {
    Result wa = run_cli({"uniform-forgery", "--assistant", "wa", "--attack", l, "--rotations",
                         "z2", "--expect", "absent"});
    EXPECT_EQ(wa.code, cli::kOk);
    EXPECT_FALSE(json::parse(wa.out).at("result").at("exists").get<bool>());
  }
  Result t = run_cli({"uniform-forgery", "--assistant", "t", "--attack", "s3", "--rotations", "z4"});
  EXPECT_FALSE(json::parse(t.out).at("result").at("exists").get<bool>());
  // A refuted expectation is reported through the exit code.
  EXPECT_EQ(run_cli({"uniform-forgery", "--assistant", "identity", "--attack", "s1",
                     "--expect", "absent"})
                .code,
            cli::kRefuted);
}

TEST(UniformForgery, MissingAttack) {
  EXPECT_EQ(run_cli({"uniform-forgery", "--assistant", "wa"}).code, cli::kBadInput);
}

TEST(Sweep, DeterministicAcrossRunsAndThreads) {
  TempDir dir;
  auto base = [&](const std::string& name, const std::string& threads) {
    return run_cli({"sweep", "--assistant", "t", "--n", "40", "--seed", "42", "--grid", "32x64",
                    "--threads", threads, "--out", (dir / name).string()});
  };
  ASSERT_EQ(base("a.csv", "1").code, cli::kOk);
  ASSERT_EQ(base("b.csv", "1").code, cli::kOk);
  ASSERT_EQ(base("c.csv", "3").code, cli::kOk);
  std::string a = slurp(dir / "a.csv");
  EXPECT_EQ(a, slurp(dir / "b.csv"));
  EXPECT_EQ(a, slurp(dir / "c.csv"));
  EXPECT_EQ(slurp(dir / "a_envelope.csv"), slurp(dir / "c_envelope.csv"));
  EXPECT_EQ(a.substr(0, a.find('\n')), kSweepCsvHeader);
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 41);
  std::string env = slurp(dir / "a_envelope.csv");
  EXPECT_EQ(env.substr(0, env.find('\n')), kEnvelopeCsvHeader);
}

TEST(Sweep, SummaryAndInjectedPaulis) {
  TempDir dir;
  Result r = run_cli({"sweep", "--assistant", "wa", "--n", "20", "--grid", "32x64",
                      "--include-paulis", "--format", "json", "--out", (dir / "s.json").string()});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  json summary = json::parse(r.out);
  EXPECT_EQ(summary.at("records").get<int>(), 23);
  json doc = json::parse(slurp(dir / "s.json"));
  bool dip = false;
  for (const json& rec : doc.at("records")) {
    if (std::abs(rec.at("d_q").get<double>() - 2.0) < 1e-9 && rec.at("p_q").get<double>() <= 1e-9) {
      dip = true;
    }
  }
  EXPECT_TRUE(dip);
  EXPECT_EQ(summary.at("pauli_bin").at("index").get<int>(), envelope_bin_of(2.0, 100));
}

TEST(Sweep, Errors) {
  TempDir dir;
  EXPECT_EQ(run_cli({"sweep", "--rotations", "z2", "--n", "2", "--out", (dir / "x.csv").string()})
                .code,
            cli::kBadInput);
  EXPECT_EQ(run_cli({"sweep", "--n", "2", "--grid", "8x8", "--out", (dir / "x.csv").string()}).code,
            cli::kBadInput);
  EXPECT_EQ(run_cli({"sweep", "--n", "2", "--grid", "32x64", "--out",
                     (dir / "missing" / "x.csv").string()})
                .code,
            cli::kIoFailure);
  EXPECT_EQ(run_cli({"sweep", "--format", "xml"}).code, cli::kBadInput);
}

TEST(DemoSign, Honest) {
  Result r = run_cli({"demo-sign", "--theta", "1.0", "--phi", "0.5", "--key", "1,2"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("exact verdict: valid"), std::string::npos);
  Result amp = run_cli({"demo-sign", "--amplitudes", "1,0,0,1", "--copies", "10"});
  ASSERT_EQ(amp.code, cli::kOk);
  EXPECT_NE(amp.out.find("sampled verdict (10 swap tests): accept"), std::string::npos);
}

TEST(DemoSign, PauliEncryptionWeakness) {
  Result r = run_cli({"demo-sign", "--assistant", "identity", "--tamper", "s1", "--theta", "0.7"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("WARNING"), std::string::npos);
  EXPECT_NE(r.out.find("exact verdict: valid"), std::string::npos);
}

TEST(DemoSign, TamperedTSchemeRejected) {
  Result r = run_cli({"demo-sign", "--tamper", "s1", "--assistant", "t", "--rotations", "z4",
                      "--copies", "200", "--seed", "7", "--theta", "1.3", "--phi", "0.4"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("key-averaged detection probability"), std::string::npos);
  EXPECT_NE(r.out.find("exact verdict: invalid"), std::string::npos);
  EXPECT_NE(r.out.find("reject"), std::string::npos);
}

TEST(DemoSign, InvalidKey) {
  EXPECT_EQ(run_cli({"demo-sign", "--key", "2,0"}).code, cli::kBadInput);
  EXPECT_EQ(run_cli({"demo-sign", "--key", "zz"}).code, cli::kBadInput);
}

TEST(Top, HelpAndUnknown) {
  EXPECT_EQ(run_cli({"--help"}).code, cli::kOk);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kBadInput);
  EXPECT_EQ(run_cli({}).code, cli::kBadInput);
}
