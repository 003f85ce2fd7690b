// Copyright 2026 The mfake Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace mfake::cli {

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  bool unsafe_print_key = false;
};

struct RcSetupOptions {
  std::size_t n = 64;
  double d = 0.25;
  std::string group = "bls12-381-g1";
  std::string out = "rc.dir";
  bool force = false;
};

// Shared by register-user and the self-provisioning session commands: where
// the enrolment template comes from.
struct TemplateOptions {
  std::string features;  // CSV; empty means synthetic
  std::string label;
  double inter_sigma = 1.0;
};

struct RegisterUserOptions {
  std::string rc = "rc.dir";
  std::string out = "user.rec";
  std::string template_out;  // defaults to <out>.template.csv
  std::optional<std::uint64_t> uid;
  TemplateOptions tmpl;
};

struct RegisterSpOptions {
  std::string rc = "rc.dir";
  std::string out = "sp.rec";
  std::optional<std::uint64_t> sid;
};

struct RevokeOptions {
  std::string rc = "rc.dir";
  std::string list;  // defaults to <rc>/revoked.txt
  std::string user;
  std::string com_u;  // hex
  bool check = false;
};

struct SessionFiles {
  std::string rc = "rc.dir";
  std::string user = "user.rec";
  std::string sp = "sp.rec";
  std::string reading;  // defaults to the user's template file
  std::string label;
  double noise = 0.0;
  bool no_revocation = false;
};

struct RunSessionOptions {
  SessionFiles files;
  std::string transport = "mem";
  std::string listen;
  std::string connect;
  std::uint32_t timeout_ms = 30000;
};

struct TamperOptions {
  // With no --rc the command provisions a throwaway RC, user and SP.
  std::string rc;
  SessionFiles files;
  std::size_t n = 16;
  double d = 0.25;
  bool all_bytes = false;
  std::size_t random = 0;
  std::string report;
  bool quiet = false;
};

struct RateSweepOptions {
  std::size_t n = 64;
  std::size_t identities = 1000;
  double inter_sigma = 1.0;
  double noise_sigma = 0.02;
  double d_min = 0.05;
  double d_max = 0.5;
  std::size_t points = 10;
  std::size_t pairs = 10000;
  std::string features;
  std::string out;
};

struct TimingOptions {
  std::size_t n = 1024;
  double d = 0.25;
  std::size_t sessions = 5;
  std::string group = "bls12-381-g1";
};

int cmd_rc_setup(const GlobalOptions& g, const RcSetupOptions& o);
int cmd_register_user(const GlobalOptions& g, const RegisterUserOptions& o);
int cmd_register_sp(const GlobalOptions& g, const RegisterSpOptions& o);
int cmd_revoke(const GlobalOptions& g, const RevokeOptions& o);
int cmd_run_session(const GlobalOptions& g, const RunSessionOptions& o);
int cmd_tamper_test(const GlobalOptions& g, const TamperOptions& o);
int cmd_rate_sweep(const GlobalOptions& g, const RateSweepOptions& o);
int cmd_timing(const GlobalOptions& g, const TimingOptions& o);

}  // namespace mfake::cli
