// Copyright 2026 The conekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "conekit/io.hpp"

namespace conekit {

constexpr const char* kVersion = "0.3.0";

/** Residual allowance for replaying float certificates (Kraus lists, Dykstra output). */
constexpr double kReplayTol = 1e-9;

/** Subcommand names, "group verb" (for example "cone member"). */
const std::vector<std::string>& command_names();

/** FNV-1a 64-bit hash of a string, as 16 lowercase hex digits. */
std::string fnv1a_hex(const std::string& s);
/** Digest of the canonical (key-sorted, compact) dump. */
std::string json_digest(const Json& j);

/**
 * One run: inputs, options, verdict, result payload and a replayable
 * certificate. The report digest covers every other field.
 */
struct RunReport {
  std::string command;
  SolveOptions options;
  Json inputs;
  Outcome verdict = Outcome::Unknown;
  Json result;
  Json certificate;
  double timing_ms = 0;

  Json to_json() const;
  static RunReport from_json(const Json& j);
};

/** Process exit code of a verdict: yes 0, no 1, unknown 2. Errors use 3. */
int exit_code(Outcome o);
constexpr int kExitError = 3;

/** Dispatches a subcommand; throws conekit::Error on bad input. */
RunReport run_command(const std::string& command, const Json& inputs, const SolveOptions& opt);

struct VerifyResult {
  bool ok = false;
  bool digest_ok = false;
  bool certificate_ok = false;
  std::string reason;
};

/**
 * Replays a stored report: digests first, then the certificate against the
 * stored inputs. Certificates are re-checked, never re-solved; the only
 * recomputed quantities are deterministic constructions of the input cones.
 */
VerifyResult verify_report(const Json& report);

/** Re-checks only the certificate, ignoring digests. */
bool verify_certificate(const RunReport& r, std::string* why = nullptr);

/** Input schemas, printed by `--help`. */
std::string schema_text();

}  // namespace conekit
