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

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "common.hpp"
#include "config.hpp"
#include "mfake/io.hpp"

namespace {

using namespace mfake::cli;

bool given_on_command_line(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin() + 1, args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

// Appends `--key value` for every config entry the command line does not
// already set. Keys are looked up on the chosen subcommand, then globally.
void merge_config(CLI::App& app, std::vector<std::string>& args, const std::string& path) {
  const auto text = mfake::read_file(path);
  const auto entries = parse_config(std::string(text.begin(), text.end()));

  CLI::App* sub = nullptr;
  for (std::size_t i = 1; i < args.size() && !sub; ++i) {
    sub = app.get_subcommand_no_throw(args[i]);
  }
  std::vector<std::string> extra;
  for (const auto& e : entries) {
    const std::string flag = "--" + e.key;
    const CLI::Option* opt = sub ? sub->get_option_no_throw(flag) : nullptr;
    if (!opt) opt = app.get_option_no_throw(flag);
    if (!opt) {
      throw mfake::ParameterError(path + ":" + std::to_string(e.line) + ": unknown key '" +
                                  e.key + "'");
    }
    if (given_on_command_line(args, flag)) continue;
    // `--key=value` works for flags too (true/false, 1/0, on/off).
    extra.push_back(flag + "=" + e.value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
}

void add_session_files(CLI::App* sub, SessionFiles& f) {
  sub->add_option("--rc", f.rc, "RC directory (params.bin, revoked.txt)");
  sub->add_option("--user", f.user, "user device record");
  sub->add_option("--sp", f.sp, "service provider secret");
  sub->add_option("--reading", f.reading, "feature CSV for the fresh reading (default: user template)");
  sub->add_option("--label", f.label, "row label to use from the reading CSV");
  sub->add_option("--noise", f.noise, "Gaussian noise sigma added to the reading")
      ->check(CLI::NonNegativeNumber);
  sub->add_flag("--no-revocation", f.no_revocation, "skip the revocation list");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-factor fuzzy extractor and authenticated key exchange"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  std::string config_help;
  app.add_option("--seed", global.seed, "fix every random stream");
  app.add_flag("--unsafe-print-key", global.unsafe_print_key, "print full session keys");
  app.add_option("--config", config_help, "flat key=value file; flags on the command line win");

  RcSetupOptions rc_setup;
  auto* s_rc = app.add_subcommand("rc-setup", "create a registration center");
  s_rc->add_option("--n", rc_setup.n, "feature dimension")->check(CLI::PositiveNumber);
  s_rc->add_option("--d", rc_setup.d, "basis length")->check(CLI::PositiveNumber);
  s_rc->add_option("--group", rc_setup.group, "bls12-381-g1 or toy-101");
  s_rc->add_option("--out", rc_setup.out, "output directory");
  s_rc->add_flag("--force", rc_setup.force, "replace an existing RC");

  RegisterUserOptions reg_user;
  auto* s_ru = app.add_subcommand("register-user", "enrol a user with the RC");
  s_ru->add_option("--rc", reg_user.rc, "RC directory");
  s_ru->add_option("--out", reg_user.out, "user device record");
  s_ru->add_option("--template-out", reg_user.template_out, "where to write the template CSV");
  s_ru->add_option("--uid", reg_user.uid, "requested user id");
  s_ru->add_option("--features", reg_user.tmpl.features, "template from a feature CSV");
  s_ru->add_option("--label", reg_user.tmpl.label, "row label in the feature CSV");
  s_ru->add_option("--template-sigma", reg_user.tmpl.inter_sigma, "synthetic template spread")
      ->check(CLI::PositiveNumber);

  RegisterSpOptions reg_sp;
  auto* s_rs = app.add_subcommand("register-sp", "register a service provider");
  s_rs->add_option("--rc", reg_sp.rc, "RC directory");
  s_rs->add_option("--out", reg_sp.out, "SP secret file");
  s_rs->add_option("--sid", reg_sp.sid, "requested server id");

  RevokeOptions revoke;
  auto* s_rv = app.add_subcommand("revoke", "revoke a user commitment");
  s_rv->add_option("--rc", revoke.rc, "RC directory");
  s_rv->add_option("--list", revoke.list, "revocation list file");
  s_rv->add_option("--user", revoke.user, "user device record to revoke");
  s_rv->add_option("--com-u", revoke.com_u, "commitment in hex");
  s_rv->add_flag("--check", revoke.check, "only report; exit 0 if revoked");

  RunSessionOptions run;
  auto* s_run = app.add_subcommand("run-session", "run one authenticated key exchange");
  add_session_files(s_run, run.files);
  s_run->add_option("--transport", run.transport, "mem or tcp")
      ->check(CLI::IsMember({"mem", "tcp"}));
  s_run->add_option("--listen", run.listen, "HOST:PORT; act as the SP");
  s_run->add_option("--connect", run.connect, "HOST:PORT; act as the user");
  s_run->add_option("--timeout-ms", run.timeout_ms, "socket timeout");

  TamperOptions tamper;
  auto* s_tt = app.add_subcommand("tamper-test", "flip bytes in flight and check every session aborts");
  add_session_files(s_tt, tamper.files);
  s_tt->remove_option(s_tt->get_option("--rc"));
  s_tt->add_option("--rc", tamper.rc, "RC directory (default: throwaway deployment)");
  s_tt->add_option("--n", tamper.n, "dimension of the throwaway deployment")
      ->check(CLI::PositiveNumber);
  s_tt->add_option("--d", tamper.d, "basis length of the throwaway deployment")
      ->check(CLI::PositiveNumber);
  s_tt->add_flag("--all-bytes", tamper.all_bytes, "flip every payload byte once");
  s_tt->add_option("--random", tamper.random, "additional random flips");
  s_tt->add_option("--report", tamper.report, "write the per-position CSV here");
  s_tt->add_flag("--quiet", tamper.quiet, "print only the summary");

  RateSweepOptions sweep;
  auto* s_sw = app.add_subcommand("rate-sweep", "FMR/FNMR over a grid of basis lengths");
  s_sw->add_option("--n", sweep.n, "feature dimension")->check(CLI::PositiveNumber);
  s_sw->add_option("--identities", sweep.identities, "synthetic identities");
  s_sw->add_option("--inter-sigma", sweep.inter_sigma, "template spread");
  s_sw->add_option("--noise-sigma", sweep.noise_sigma, "reading noise");
  s_sw->add_option("--d-min", sweep.d_min, "first grid point")->check(CLI::PositiveNumber);
  s_sw->add_option("--d-max", sweep.d_max, "last grid point")->check(CLI::PositiveNumber);
  s_sw->add_option("--points", sweep.points, "grid points");
  s_sw->add_option("--pairs", sweep.pairs, "genuine and impostor pairs per point");
  s_sw->add_option("--features", sweep.features, "use a labelled feature CSV instead");
  s_sw->add_option("--out", sweep.out, "write CSV here instead of stdout");

  TimingOptions timing;
  auto* s_tm = app.add_subcommand("timing", "wall-clock per protocol phase");
  s_tm->add_option("--n", timing.n, "feature dimension")->check(CLI::PositiveNumber);
  s_tm->add_option("--d", timing.d, "basis length")->check(CLI::PositiveNumber);
  s_tm->add_option("--sessions", timing.sessions, "sessions to average");
  s_tm->add_option("--group", timing.group, "bls12-381-g1 or toy-101");

  std::vector<std::string> args(argv, argv + argc);
  try {
    const std::string config = extract_config_path(args);
    if (!config.empty()) merge_config(app, args, config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (s_rc->parsed()) return cmd_rc_setup(global, rc_setup);
    if (s_ru->parsed()) return cmd_register_user(global, reg_user);
    if (s_rs->parsed()) return cmd_register_sp(global, reg_sp);
    if (s_rv->parsed()) return cmd_revoke(global, revoke);
    if (s_run->parsed()) return cmd_run_session(global, run);
    if (s_tt->parsed()) return cmd_tamper_test(global, tamper);
    if (s_sw->parsed()) return cmd_rate_sweep(global, sweep);
    if (s_tm->parsed()) return cmd_timing(global, timing);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
