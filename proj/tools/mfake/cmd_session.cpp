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

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "common.hpp"
#include "mfake/biosim/biosim.hpp"
#include "mfake/harness/runner.hpp"
#include "mfake/io.hpp"
#include "mfake/pki/pki.hpp"
#include "mfake/pki/revocation.hpp"

namespace mfake::cli {

namespace {

using protocol::abort_reason_name;
using protocol::Phase;

template <class G>
struct Loaded {
  pki::SystemParams<G> params;
  std::optional<pki::UserDeviceRecord<G>> device;
  std::optional<pki::SpSecret<G>> secret;
  std::vector<double> reading;
  std::optional<pki::RevocationList> revocations;
};

// The user and SP files are only decoded when `need_user` / `need_sp` ask for
// them, so each side of a split TCP run can start with its own files alone.
template <class G>
std::unique_ptr<Loaded<G>> load_files(const SessionFiles& f, const Bytes& params_bytes,
                                      bool need_user, bool need_sp, Rng& noise_rng) {
  const RcDir dir{f.rc};
  auto params = pki::decode_params<G>(params_bytes);
  std::optional<pki::UserDeviceRecord<G>> device;
  std::optional<pki::SpSecret<G>> secret;
  std::vector<double> reading;
  if (need_user) {
    device = pki::decode_user_record<G>(read_file(f.user));
    const std::string path = f.reading.empty() ? f.user + ".template.csv" : f.reading;
    reading = add_noise(load_reading(path, f.label), f.noise, noise_rng);
  }
  if (need_sp) secret = pki::decode_sp_secret<G>(read_file(f.sp));
  auto out = std::unique_ptr<Loaded<G>>(new Loaded<G>{std::move(params), std::move(device),
                                                      std::move(secret), std::move(reading),
                                                      std::nullopt});
  if (!f.no_revocation) out->revocations = pki::RevocationList::load(dir.revoked());
  return out;
}

std::string describe_party(Phase phase, protocol::AbortReason reason) {
  if (phase == Phase::kAborted) return "aborted (" + std::string(abort_reason_name(reason)) + ")";
  return std::string(protocol::phase_name(phase));
}

void print_party(const char* who, Phase phase, protocol::AbortReason reason,
                 const std::optional<protocol::SessionKey>& key, bool unsafe) {
  std::cout << who << ": " << describe_party(phase, reason);
  if (key) std::cout << " key=" << fingerprint(*key, unsafe);
  std::cout << "\n";
}

const char* aborting_party(const harness::SessionOutcome& o) {
  const bool u = o.user_phase == Phase::kAborted;
  const bool s = o.sp_phase == Phase::kAborted;
  if (u && s) return "both";
  if (u) return "user";
  if (s) return "sp";
  return "none";
}

constexpr const char* kFrameNames[] = {"MU1", "MS1", "MU2", "MS2"};

}  // namespace

int cmd_run_session(const GlobalOptions& g, const RunSessionOptions& o) {
  if (o.transport != "mem" && o.transport != "tcp") {
    throw ParameterError("--transport must be mem or tcp");
  }
  if (o.transport == "mem" && (!o.listen.empty() || !o.connect.empty())) {
    throw ParameterError("--listen/--connect need --transport tcp");
  }
  if (!o.listen.empty() && !o.connect.empty()) {
    throw ParameterError("--listen and --connect are exclusive");
  }
  const bool need_user = o.listen.empty();
  const bool need_sp = o.connect.empty();
  const Bytes params_bytes = read_file(RcDir{o.files.rc}.params());
  const RngSource rngs(g.seed);
  const auto timeout = std::chrono::milliseconds(o.timeout_ms);

  return with_group(pki::peek_group(params_bytes), [&]<class G>() {
    auto noise_rng = rngs.make("reading-noise");
    auto f = load_files<G>(o.files, params_bytes, need_user, need_sp, *noise_rng);
    const pki::RevocationList* rl = f->revocations ? &*f->revocations : nullptr;
    auto user_rng = rngs.make("user-session");
    auto sp_rng = rngs.make("sp-session");
    auto user_in = [&] {
      return harness::UserInputs<G>{f->params, *f->device, f->reading, rl, *user_rng};
    };
    auto sp_in = [&] { return harness::SpInputs<G>{f->params, *f->secret, rl, *sp_rng}; };

    if (!o.listen.empty()) {
      const auto hp = parse_host_port(o.listen);
      harness::TcpListener listener(hp.host, hp.port);
      std::cout << "listening on " << hp.host << ":" << listener.port() << std::endl;
      auto ep = listener.accept(timeout);
      const auto r = harness::run_sp_side<G>(sp_in(), ep);
      print_party("sp", r.phase, r.reason, r.key, g.unsafe_print_key);
      if (!r.error.empty()) std::cerr << "transport: " << r.error << "\n";
      return r.phase == Phase::kAccepted ? kExitOk : kExitRejected;
    }
    if (!o.connect.empty()) {
      const auto hp = parse_host_port(o.connect);
      auto ep = harness::TcpEndpoint::connect(hp.host, hp.port, timeout);
      const auto r = harness::run_user_side<G>(user_in(), ep);
      print_party("user", r.phase, r.reason, r.key, g.unsafe_print_key);
      if (!r.error.empty()) std::cerr << "transport: " << r.error << "\n";
      return r.phase == Phase::kAccepted ? kExitOk : kExitRejected;
    }

    harness::SessionOutcome out;
    if (o.transport == "tcp") {
      auto pair = harness::tcp_loopback_pair(timeout);
      out = harness::run_session<G>(user_in(), sp_in(), pair.user, pair.sp);
    } else {
      harness::MemoryLink link;
      out = harness::run_session<G>(user_in(), sp_in(), link.user_end(), link.sp_end());
    }
    print_party("user", out.user_phase, out.user_reason, out.user_key, g.unsafe_print_key);
    print_party("sp", out.sp_phase, out.sp_reason, out.sp_key, g.unsafe_print_key);
    std::cout << "frames=" << out.frames_sent << " payload_bytes=" << out.payload_bytes
              << " stop=" << harness::stop_point_name(out.stop) << "\n";
    if (!out.error.empty()) std::cerr << "transport: " << out.error << "\n";
    if (!out.keys_match()) return kExitRejected;
    std::cout << "keys match\n";
    return kExitOk;
  });
}

int cmd_tamper_test(const GlobalOptions& g, const TamperOptions& o) {
  if (!o.all_bytes && o.random == 0) throw ParameterError("give --all-bytes and/or --random N");
  const RngSource rngs(g.seed);

  auto body = [&]<class G>(std::unique_ptr<Loaded<G>> f) {
    const pki::RevocationList* rl = f->revocations ? &*f->revocations : nullptr;
    using Sizes = harness::PayloadSize<G>;
    const std::size_t sizes[] = {Sizes::kMu1, Sizes::kMs1, Sizes::kMu2, Sizes::kMs2};

    struct Position {
      std::size_t frame, offset;
      std::uint8_t mask;
    };
    std::vector<Position> positions;
    if (o.all_bytes) {
      for (std::size_t fr = 0; fr < 4; ++fr) {
        for (std::size_t off = 0; off < sizes[fr]; ++off) positions.push_back({fr, off, 0x01});
      }
    }
    if (o.random > 0) {
      auto pick = rngs.make("tamper-positions");
      std::uniform_int_distribution<std::size_t> any(0, Sizes::kTotal - 1);
      std::uniform_int_distribution<int> mask(1, 255);
      for (std::size_t i = 0; i < o.random; ++i) {
        std::size_t at = any(*pick), fr = 0;
        while (at >= sizes[fr]) at -= sizes[fr++];
        positions.push_back({fr, at, static_cast<std::uint8_t>(mask(*pick))});
      }
    }

    std::ofstream report_file;
    if (!o.report.empty()) {
      report_file.open(o.report);
      if (!report_file) throw IoError("cannot write " + o.report);
    }
    std::ostream* report = o.report.empty() ? (o.quiet ? nullptr : &std::cout) : &report_file;
    if (report) *report << "frame,offset,mask,aborting_party,user,sp,key_exposed\n";

    auto user_rng = rngs.make("user-session");
    auto sp_rng = rngs.make("sp-session");
    const harness::UserInputs<G> user_in{f->params, *f->device, f->reading, rl, *user_rng};
    const harness::SpInputs<G> sp_in{f->params, *f->secret, rl, *sp_rng};

    std::size_t aborted = 0, exposed = 0;
    for (const auto& p : positions) {
      harness::Interceptor icpt;
      icpt.on(p.frame, harness::Action::flip(p.offset, p.mask));
      const auto out = harness::run_session<G>(user_in, sp_in, &icpt);
      const bool ok = out.any_aborted() && !out.key_exposed();
      aborted += out.any_aborted();
      exposed += out.key_exposed();
      if (report) {
        std::ostringstream mask;
        mask << "0x" << std::hex << std::setw(2) << std::setfill('0') << int(p.mask);
        *report << kFrameNames[p.frame] << "," << p.offset << "," << mask.str() << ","
                << aborting_party(out) << "," << describe_party(out.user_phase, out.user_reason)
                << "," << describe_party(out.sp_phase, out.sp_reason) << ","
                << (out.key_exposed() ? "yes" : "no") << (ok ? "" : ",FAILED") << "\n";
      }
    }
    std::cout << "tampered sessions: " << positions.size() << " aborted: " << aborted
              << " keys exposed: " << exposed << " coverage: "
              << (positions.empty() ? 0.0 : 100.0 * double(aborted) / double(positions.size()))
              << "%\n";
    return (aborted == positions.size() && exposed == 0) ? kExitOk : kExitRejected;
  };

  if (!o.rc.empty()) {
    SessionFiles files = o.files;
    files.rc = o.rc;
    const Bytes params_bytes = read_file(RcDir{files.rc}.params());
    return with_group(pki::peek_group(params_bytes), [&]<class G>() {
      auto noise_rng = rngs.make("reading-noise");
      return body.template operator()<G>(
          load_files<G>(files, params_bytes, true, true, *noise_rng));
    });
  }

  // Throwaway deployment: honest reading equals the template plus optional noise.
  using G = group::Bls12381G1;
  auto rng = rngs.make("tamper-setup");
  auto rc = pki::rc_setup<G>(o.n, o.d, *rng);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> x0(o.n);
  for (auto& v : x0) v = dist(*rng);
  auto device = pki::enroll_user<G>(rc, x0, *rng);
  auto secret = pki::enroll_sp<G>(rc, *rng);
  auto reading = add_noise(x0, o.files.noise, *rng);
  return body.template operator()<G>(std::unique_ptr<Loaded<G>>(
      new Loaded<G>{rc.params(), std::move(device), std::move(secret), std::move(reading),
                    std::nullopt}));
}

int cmd_timing(const GlobalOptions& g, const TimingOptions& o) {
  if (o.sessions == 0) throw ParameterError("--sessions must be positive");
  const RngSource rngs(g.seed);
  const auto id = group::parse_group_id(o.group);
  return with_group(id, [&]<class G>() {
    using clock = std::chrono::steady_clock;
    auto rng = rngs.make("timing");
    auto rc = pki::rc_setup<G>(o.n, o.d, id, *rng);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> x0(o.n);
    for (auto& v : x0) v = dist(*rng);

    const auto t0 = clock::now();
    auto device = pki::enroll_user<G>(rc, x0, *rng);
    const double enroll = std::chrono::duration<double>(clock::now() - t0).count();
    auto secret = pki::enroll_sp<G>(rc, *rng);

    const harness::UserInputs<G> user_in{rc.params(), device, x0, nullptr, *rng};
    const harness::SpInputs<G> sp_in{rc.params(), secret, nullptr, *rng};
    double user = 0, sp = 0;
    for (std::size_t i = 0; i < o.sessions; ++i) {
      const auto out = harness::run_session<G>(user_in, sp_in);
      if (!out.keys_match()) {
        std::cerr << "session " << i << " did not complete\n";
        return kExitRejected;
      }
      user += out.user_seconds;
      sp += out.sp_seconds;
    }
    const double k = double(o.sessions);
    std::cout << std::fixed << std::setprecision(6) << "group=" << group::group_name(id)
              << " n=" << o.n << " sessions=" << o.sessions << "\n"
              << "registration (user side, incl. Gen): " << enroll << " s\n"
              << "user phase per session: " << user / k << " s\n"
              << "sp phase per session:   " << sp / k << " s\n";
    return kExitOk;
  });
}

}  // namespace mfake::cli
