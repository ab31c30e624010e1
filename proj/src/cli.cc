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

#include "aqslab/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "aqslab/aqs.h"
#include "aqslab/detection.h"
#include "aqslab/forgery.h"
#include "aqslab/io.h"
#include "aqslab/rng.h"

namespace aqslab::cli {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(std::string_view text) {
  std::vector<double> out;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("not a number: '" + item + "'");
    }
    if (used != item.size() || !std::isfinite(v)) {
      throw std::invalid_argument("not a finite number: '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

Unitary2 parse_coefficients(std::string_view text) {
  std::vector<double> v = parse_numbers(text);
  if (v.size() != 4) throw std::invalid_argument("expected four coefficients w0,w1,w2,w3");
  PauliCoeffs c{v[0], v[1], v[2], v[3]};
  if (std::abs(std::sqrt(c.norm_squared()) - 1.0) > 1e-6) {
    throw std::invalid_argument("coefficients " + std::string(text) +
                                " are not normalized within 1e-6");
  }
  return from_pauli_coeffs(canonicalize(c));
}

struct CommonArgs {
  std::string assistant = "wa";
  std::string rotations = "z2";
  std::uint64_t seed = 0;
  double tol = kAnalyticTol;
};

Unitary2 resolve_assistant(const CommonArgs& a) {
  if (a.assistant == "random") {
    Rng rng = Rng::stream(a.seed, 0);
    return haar_unitary(rng);
  }
  return parse_assistant(a.assistant);
}

json coeffs_json(const Unitary2& u) { return to_json(to_pauli_coeffs(u)); }

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::string state_text(const QubitState& s) {
  std::ostringstream os;
  os << "(" << format_g17(s[0].real()) << (s[0].imag() < 0 ? "" : "+") << format_g17(s[0].imag())
     << "i)|0> + (" << format_g17(s[1].real()) << (s[1].imag() < 0 ? "" : "+")
     << format_g17(s[1].imag()) << "i)|1>";
  return os.str();
}

// check-encryption --------------------------------------------------------

int cmd_check_encryption(const CommonArgs& a, int n, std::ostream& out) {
  if (n < 1) throw UsageError("--n must be at least 1");
  Unitary2 w = resolve_assistant(a);
  Rng rng(a.seed);
  double worst = encryption_completeness(w, DensityMatrix::maximally_mixed());
  for (int i = 1; i < n; ++i) {
    DensityMatrix rho = DensityMatrix::pure(haar_state(rng));
    if (i % 2 == 0) {
      rho = DensityMatrix::mixture(rho, DensityMatrix::pure(haar_state(rng)), rng.uniform());
    }
    worst = std::max(worst, encryption_completeness(w, rho));
  }
  bool pass = worst <= 1e-10;
  emit(out, {{"command", "check-encryption"},
             {"assistant", coeffs_json(w)},
             {"samples", n},
             {"max_residual", worst},
             {"threshold", 1e-10},
             {"pass", pass}});
  return pass ? kOk : kRefuted;
}

// find-forgeable ----------------------------------------------------------

int cmd_find_forgeable(const CommonArgs& a, int eigen_pauli, std::ostream& out) {
  Unitary2 w = resolve_assistant(a);
  ForgeryWitness witness =
      eigen_pauli == 0 ? construct_witness(w) : witness_via_eigenstate(w, eigen_pauli);
  SchemeConfig scheme{RotationFamily::BiasedZ2, w};
  WitnessCheck check =
      certify(scheme, witness.message, witness.attack, witness.replacement, a.tol);
  json per_key = json::object();
  for (const auto& [key, theta] : check.phases) {
    per_key[key_string(key)] = {{"theta", theta}, {"residual", check.residuals.at(key)}};
  }
  AbcTriple t = abc(w);
  emit(out, {{"command", "find-forgeable"},
             {"assistant", coeffs_json(w)},
             {"abc", {{"alpha", t.alpha}, {"beta", t.beta}, {"gamma", t.gamma}}},
             {"construction", eigen_pauli == 0 ? "closed-form" : "eigenstate"},
             {"witness", to_json(witness)},
             {"verification",
              {{"tol", a.tol},
               {"max_residual", check.max_residual},
               {"per_key", per_key},
               {"passed", check.valid}}}});
  return check.valid ? kOk : kRefuted;
}

// classify ----------------------------------------------------------------

int cmd_classify(const CommonArgs& a, bool cross_check, int n_messages, std::ostream& out) {
  Unitary2 w = resolve_assistant(a);
  Table1Classification c = classify_table1(w, a.tol);
  json doc{{"command", "classify"}, {"assistant", coeffs_json(w)}, {"classification", to_json(c)}};
  bool consistent = true;
  if (cross_check) {
    SchemeConfig scheme{RotationFamily::UnbiasedZ4, w};
    Rng rng(a.seed);
    json rows = json::array();
    for (int l = 1; l <= 3; ++l) {
      Rng sub = rng.split();
      int hits = count_forgeable_messages(scheme, pauli(l), n_messages, sub, a.tol);
      bool uniform = uniform_forgery(scheme, pauli(l), a.tol).exists;
      bool reported = c.forges(l);
      bool ok = reported == uniform && (reported ? hits == n_messages : hits < n_messages);
      consistent = consistent && ok;
      rows.push_back({{"pauli", l},
                      {"reported", reported},
                      {"uniform_forgery", uniform},
                      {"forgeable_messages", hits},
                      {"messages", n_messages},
                      {"consistent", ok}});
    }
    doc["cross_check"] = rows;
  }
  emit(out, doc);
  return consistent ? kOk : kRefuted;
}

// uniform-forgery ---------------------------------------------------------

int cmd_uniform_forgery(const CommonArgs& a, const std::string& attack_text,
                        const std::string& expect, std::ostream& out) {
  Unitary2 w = resolve_assistant(a);
  Unitary2 q = parse_operator(attack_text);
  SchemeConfig scheme{parse_rotations(a.rotations), w};
  UniformForgeryResult r = uniform_forgery(scheme, q, a.tol);
  json doc{{"command", "uniform-forgery"},
           {"assistant", coeffs_json(w)},
           {"attack", coeffs_json(q)},
           {"rotations", std::string(to_string(scheme.rotations))},
           {"result", to_json(r)}};
  if (r.replacement) doc["replacement_coeffs"] = coeffs_json(*r.replacement);
  emit(out, doc);
  if (expect == "exists" && !r.exists) return kRefuted;
  if (expect == "absent" && r.exists) return kRefuted;
  return kOk;
}

// sweep -------------------------------------------------------------------

GridSpec parse_grid(const std::string& text) {
  auto x = text.find('x');
  if (x == std::string::npos) throw UsageError("--grid must look like 64x128");
  try {
    std::size_t u1 = 0;
    std::size_t u2 = 0;
    std::string a = text.substr(0, x);
    std::string b = text.substr(x + 1);
    GridSpec g{std::stoi(a, &u1), std::stoi(b, &u2)};
    if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument("");
    if (g.n_theta < 16 || g.n_phi < 32) throw UsageError("--grid must be at least 16x32");
    return g;
  } catch (const std::logic_error&) {
    throw UsageError("--grid must look like 64x128");
  }
}

std::string envelope_path_for(const std::string& out_path) {
  const std::string ext = ".csv";
  if (out_path.size() > ext.size() &&
      out_path.compare(out_path.size() - ext.size(), ext.size(), ext) == 0) {
    return out_path.substr(0, out_path.size() - ext.size()) + "_envelope.csv";
  }
  return out_path + "_envelope.csv";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

struct SweepArgs {
  int n = 10000;
  std::string grid = "64x128";
  double refine_tol = 1e-8;
  int bins = 100;
  std::string out_path = "sweep.csv";
  std::string envelope_out;
  std::string format = "csv";
  bool include_paulis = false;
  unsigned threads = 0;
};

int cmd_sweep(const CommonArgs& a, const SweepArgs& s, std::ostream& out) {
  RotationFamily family = parse_rotations(a.rotations);
  if (family != RotationFamily::UnbiasedZ4) throw UsageError("sweep requires --rotations z4");
  if (s.n < 1) throw UsageError("--n must be at least 1");
  if (s.bins < 2) throw UsageError("--bins must be at least 2");
  if (!(s.refine_tol > 0.0)) throw UsageError("--tol must be positive");
  SchemeConfig scheme{family, resolve_assistant(a)};

  SweepOptions opt;
  opt.n_samples = s.n;
  opt.seed = a.seed;
  opt.grid = parse_grid(s.grid);
  opt.refine_tol = s.refine_tol;
  opt.threads = resolve_threads(s.threads);
  if (s.include_paulis) opt.injected = {pauli(1), pauli(2), pauli(3)};

  std::vector<SweepRecord> records = sweep(scheme, opt);
  std::vector<EnvelopeBin> bins = envelope(records, s.bins);

  std::string env_path = s.envelope_out.empty() ? envelope_path_for(s.out_path) : s.envelope_out;
  if (s.format == "csv") {
    std::ostringstream rec_csv;
    write_sweep_csv(rec_csv, records);
    std::ostringstream env_csv;
    write_envelope_csv(env_csv, bins);
    write_file(s.out_path, rec_csv.str());
    write_file(env_path, env_csv.str());
  } else {
    json doc{{"records", json::array()}, {"envelope", json::array()}};
    for (const SweepRecord& r : records) doc["records"].push_back(to_json(r));
    for (const EnvelopeBin& b : bins) doc["envelope"].push_back(to_json(b));
    write_file(s.out_path, doc.dump() + "\n");
  }

  double min_far = std::numeric_limits<double>::infinity();
  for (const SweepRecord& r : records) {
    if (r.d_q >= 0.1) min_far = std::min(min_far, r.p_q);
  }
  int dip = envelope_bin_of(2.0, s.bins);
  auto p_or_null = [&](int b) -> json {
    if (b < 0 || b >= s.bins || bins[b].support_count == 0) return nullptr;
    return bins[b].p_min;
  };
  json summary{{"command", "sweep"},
               {"assistant", coeffs_json(scheme.assistant)},
               {"records", records.size()},
               {"threads", opt.threads},
               {"sweep_out", s.out_path},
               {"min_p_q_for_d_ge_0.1", std::isfinite(min_far) ? json(min_far) : json(nullptr)},
               {"pauli_bin",
                {{"index", dip},
                 {"d_lo", bins[dip].d_lo},
                 {"d_hi", bins[dip].d_hi},
                 {"p_min", p_or_null(dip)},
                 {"left_p_min", p_or_null(dip - 1)},
                 {"right_p_min", p_or_null(dip + 1)}}}};
  if (s.format == "csv") summary["envelope_out"] = env_path;
  emit(out, summary);
  return kOk;
}

// demo-sign ---------------------------------------------------------------

struct DemoArgs {
  std::string key = "0,0";
  std::optional<double> theta;
  std::optional<double> phi;
  std::string amplitudes;
  std::string tamper;
  int copies = 0;
};

int cmd_demo_sign(const CommonArgs& a, const DemoArgs& d, std::ostream& out) {
  SchemeConfig scheme{parse_rotations(a.rotations), resolve_assistant(a)};
  KeyPair key = parse_key_string(d.key);
  scheme.check_key(key);
  if (d.copies < 0) throw UsageError("--copies must be non-negative");

  QubitState m;
  if (!d.amplitudes.empty()) {
    if (d.theta || d.phi) throw UsageError("give either --amplitudes or --theta/--phi");
    std::vector<double> v = parse_numbers(d.amplitudes);
    if (v.size() != 4) throw UsageError("--amplitudes needs re0,im0,re1,im1");
    m = QubitState::from_amplitudes({v[0], v[1]}, {v[2], v[3]});
  } else {
    m = QubitState::bloch(d.theta.value_or(0.0), d.phi.value_or(0.0));
  }

  out << "scheme: rotations=" << to_string(scheme.rotations) << " assistant="
      << coeffs_json(scheme.assistant).dump() << " key=(" << key_string(key) << ")\n";
  out << "message  |M>  = " << state_text(m) << "\n";
  QubitState s = sign(scheme, key, m);
  out << "signature |S> = " << state_text(s) << "\n";

  QubitState sent_message = m;
  QubitState sent_signature = s;
  std::optional<Unitary2> attack;
  if (!d.tamper.empty()) {
    attack = parse_operator(d.tamper);
    sent_signature = *attack * s;
    out << "tamper: Q = " << coeffs_json(*attack).dump() << " applied to the signature\n";
    UniformForgeryResult uf = uniform_forgery(scheme, *attack, a.tol);
    if (uf.exists) {
      sent_message = *uf.replacement * m;
      out << "tamper: uniform forgery exists for this scheme; message replaced by U|M>\n";
      out << "WARNING: key-independent U makes every message forgeable "
             "(known weakness of Pauli-only encryption)\n";
    } else if (auto w = check_forgeable(scheme, m, *attack, a.tol)) {
      sent_message = w->replacement * m;
      out << "tamper: this particular message is forgeable; message replaced by U|M>\n";
    } else {
      out << "tamper: no key-independent replacement; message forwarded unchanged\n";
    }
    out << "sent message |M'> = " << state_text(sent_message) << "\n";
  }

  QubitState recovered = recover(scheme, key, sent_signature);
  out << "recovered R^dag E^dag |S'> = " << state_text(recovered) << "\n";
  PhaseMatch exact = verify_exact(scheme, key, sent_message, sent_signature, a.tol);
  out << "exact verdict: " << (exact.matched ? "valid" : "invalid")
      << " (residual " << format_g17(exact.residual) << ", theta "
      << format_g17(exact.matched ? exact.theta : 0.0) << ")\n";
  if (attack && exact.matched) {
    out << "NOTE: tampered pair passes exact verification\n";
  }

  if (d.copies > 0) {
    double p_key = 1.0 - swap_pass_probability(sent_message, recovered);
    out << "single-test detection probability for this key: " << format_g17(p_key) << "\n";
    if (attack && scheme.rotations == RotationFamily::UnbiasedZ4) {
      out << "key-averaged detection probability: "
          << format_g17(detection_prob(scheme, *attack, m)) << "\n";
    }
    Rng rng(a.seed);
    bool accepted = verify_sampled(scheme, key, sent_message, sent_signature, d.copies, rng);
    out << "sampled verdict (" << d.copies << " swap tests): "
        << (accepted ? "accept" : "reject") << "\n";
    out << "expected acceptance probability (1-P)^n: "
        << format_g17(escape_probability(p_key, d.copies)) << "\n";
  }
  return kOk;
}

}  // namespace

Unitary2 parse_assistant(std::string_view text) {
  if (text == "wa" || text == "t" || text == "identity") return preset(parse_preset(text));
  return parse_coefficients(text);
}

Unitary2 parse_operator(std::string_view text) {
  if (text.size() == 2 && text[0] == 's' && text[1] >= '0' && text[1] <= '3') {
    return pauli(text[1] - '0');
  }
  return parse_assistant(text);
}

RotationFamily parse_rotations(std::string_view text) {
  if (text == "z2") return RotationFamily::BiasedZ2;
  if (text == "z4") return RotationFamily::UnbiasedZ4;
  throw std::invalid_argument("--rotations must be z2 or z4");
}

unsigned resolve_threads(unsigned requested) {
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  if (const char* cap = std::getenv("AQSLAB_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(cap, &end, 10);
    if (end != cap && *end == '\0' && v > 0) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for single-qubit arbitrated quantum signatures", "aqslab"};
  app.require_subcommand(1);

  // One argument block per subcommand so each keeps its own defaults.
  std::map<const CLI::App*, CommonArgs> common;
  auto add_common = [&](CLI::App* sub, const std::string& default_assistant,
                        const std::string& default_rotations) {
    CommonArgs& c = common[sub];
    c.assistant = default_assistant;
    c.rotations = default_rotations;
    sub->add_option("--assistant", c.assistant, "wa | t | identity | random | w0,w1,w2,w3")
        ->capture_default_str();
    sub->add_option("--rotations", c.rotations, "z2 | z4")->capture_default_str();
    sub->add_option("--seed", c.seed, "64-bit seed")->capture_default_str();
    sub->add_option("--tol", c.tol, "equality tolerance")->capture_default_str();
  };

  int n_rho = 1000;
  auto* enc = app.add_subcommand("check-encryption", "Key-averaged encryption residual");
  enc->add_option("--n", n_rho, "number of sampled density matrices")->capture_default_str();

  int eigen_pauli = 0;
  auto* find = app.add_subcommand("find-forgeable", "Construct and certify a forgeable message");
  find->add_option("--eigen", eigen_pauli, "use the eigenstate construction with Pauli 1..3")
      ->check(CLI::Range(1, 3));

  bool cross_check = false;
  int n_messages = 50;
  auto* cls = app.add_subcommand("classify", "Evaluate the all-messages-forgeable conditions");
  cls->add_flag("--cross-check", cross_check, "certify against random messages");
  cls->add_option("--n", n_messages, "messages per Pauli for --cross-check")
      ->capture_default_str();

  std::string attack_text;
  std::string expect = "none";
  auto* uni = app.add_subcommand("uniform-forgery", "Search for a key-independent forgery U");
  uni->add_option("--attack", attack_text, "s0..s3 | preset | q0,q1,q2,q3")->required();
  uni->add_option("--expect", expect, "exit 1 unless the outcome matches")
      ->check(CLI::IsMember({"none", "exists", "absent"}));

  SweepArgs sw;
  auto* swp = app.add_subcommand("sweep", "Monte-Carlo (d_Q, P_Q) sweep");
  swp->add_option("--n", sw.n, "number of random attacks")->capture_default_str();
  swp->add_option("--grid", sw.grid, "Bloch grid TxP")->capture_default_str();
  swp->add_option("--refine-tol", sw.refine_tol, "optimizer tolerance")->capture_default_str();
  swp->add_option("--bins", sw.bins, "envelope bins")->capture_default_str();
  swp->add_option("--out", sw.out_path, "sweep output path")->capture_default_str();
  swp->add_option("--envelope-out", sw.envelope_out, "envelope CSV path");
  swp->add_option("--format", sw.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  swp->add_flag("--include-paulis", sw.include_paulis, "append the three Pauli attacks");
  swp->add_option("--threads", sw.threads, "worker threads (0 = all cores)");

  DemoArgs demo;
  double theta = 0.0;
  double phi = 0.0;
  auto* dem = app.add_subcommand("demo-sign", "Sign, optionally tamper, and verify one message");
  dem->add_option("--key", demo.key, "j,k")->capture_default_str();
  auto* theta_opt = dem->add_option("--theta", theta, "Bloch polar angle");
  auto* phi_opt = dem->add_option("--phi", phi, "Bloch azimuth");
  dem->add_option("--amplitudes", demo.amplitudes, "re0,im0,re1,im1");
  dem->add_option("--tamper", demo.tamper, "attack applied to the signature");
  dem->add_option("--copies", demo.copies, "swap tests for the sampled verdict");

  add_common(enc, "wa", "z2");
  add_common(find, "wa", "z2");
  add_common(cls, "wa", "z4");
  add_common(uni, "wa", "z2");
  add_common(swp, "t", "z4");
  add_common(dem, "wa", "z2");

  // CLI11 consumes the argument vector back to front.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }

  try {
    if (enc->parsed()) return cmd_check_encryption(common[enc], n_rho, out);
    if (find->parsed()) return cmd_find_forgeable(common[find], eigen_pauli, out);
    if (cls->parsed()) return cmd_classify(common[cls], cross_check, n_messages, out);
    if (uni->parsed()) return cmd_uniform_forgery(common[uni], attack_text, expect, out);
    if (swp->parsed()) return cmd_sweep(common[swp], sw, out);
    if (dem->parsed()) {
      if (theta_opt->count() > 0) demo.theta = theta;
      if (phi_opt->count() > 0) demo.phi = phi;
      return cmd_demo_sign(common[dem], demo, out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace aqslab::cli
