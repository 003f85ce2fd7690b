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

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mfake/harness/codec.hpp"
#include "mfake/harness/interceptor.hpp"
#include "mfake/harness/transport.hpp"
#include "mfake/protocol/session.hpp"

namespace mfake::harness {

template <group::PrimeOrderGroup G>
struct UserInputs {
  const pki::SystemParams<G>& params;
  const pki::UserDeviceRecord<G>& device;
  std::vector<double> reading;  // the fresh biometric sample x1
  const pki::RevocationList* revocations = nullptr;
  Rng& rng;
};

template <group::PrimeOrderGroup G>
struct SpInputs {
  const pki::SystemParams<G>& params;
  const pki::SpSecret<G>& secret;
  const pki::RevocationList* revocations = nullptr;
  Rng& rng;
};

enum class StopPoint { kCompleted, kUserAborted, kSpAborted, kMessageLost, kTransportError };
std::string_view stop_point_name(StopPoint s);

struct SessionOutcome {
  protocol::Phase user_phase = protocol::Phase::kInit;
  protocol::Phase sp_phase = protocol::Phase::kInit;
  protocol::AbortReason user_reason = protocol::AbortReason::kNone;
  protocol::AbortReason sp_reason = protocol::AbortReason::kNone;
  // Released only when both parties accepted. A party that accepted while its
  // peer aborted keeps its key inside the session.
  std::optional<protocol::SessionKey> user_key;
  std::optional<protocol::SessionKey> sp_key;
  StopPoint stop = StopPoint::kCompleted;
  std::size_t frames_sent = 0;
  std::size_t payload_bytes = 0;  // payloads as sent by honest parties
  std::string error;
  double user_seconds = 0;
  double sp_seconds = 0;

  bool both_accepted() const {
    return user_phase == protocol::Phase::kAccepted && sp_phase == protocol::Phase::kAccepted;
  }
  bool any_aborted() const {
    return user_phase == protocol::Phase::kAborted || sp_phase == protocol::Phase::kAborted;
  }
  bool key_exposed() const { return user_key.has_value() || sp_key.has_value(); }
  bool keys_match() const { return both_accepted() && user_key && sp_key && *user_key == *sp_key; }
  // Everything except wall-clock timings.
  bool same_result(const SessionOutcome& o) const {
    return user_phase == o.user_phase && sp_phase == o.sp_phase && user_reason == o.user_reason &&
           sp_reason == o.sp_reason && user_key == o.user_key && sp_key == o.sp_key &&
           stop == o.stop && frames_sent == o.frames_sent && payload_bytes == o.payload_bytes;
  }
};

template <group::PrimeOrderGroup G>
using SessionInspector =
    std::function<void(const protocol::UserSession<G>&, const protocol::SpSession<G>&)>;

namespace detail {

class Stopwatch {
 public:
  explicit Stopwatch(double& sink) : sink_(sink), start_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    sink_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  double& sink_;
  std::chrono::steady_clock::time_point start_;
};

// Receives one frame and unpacks the expected variant; on failure aborts the
// session with the matching reason and returns nullopt.
template <group::PrimeOrderGroup G, class M, class Session>
std::optional<M> receive_as(Endpoint& ep, Session& s, bool& lost) {
  auto frame = ep.receive();
  if (!frame) {
    lost = true;
    s.abort(protocol::AbortReason::kTimeout);
    return std::nullopt;
  }
  try {
    auto msg = decode<G>(*frame);
    if (auto* m = std::get_if<M>(&msg)) return *m;
    s.abort(protocol::AbortReason::kUnexpectedMessage);
  } catch (const DecodeError&) {
    s.abort(protocol::AbortReason::kMalformed);
  }
  return std::nullopt;
}

}  // namespace detail

// Drives both parties through the four messages in one thread. Transport
// failures end the run with StopPoint::kTransportError instead of throwing.
template <group::PrimeOrderGroup G>
SessionOutcome run_session(const UserInputs<G>& user_in, const SpInputs<G>& sp_in,
                           Endpoint& user_end, Endpoint& sp_end,
                           const Interceptor* interceptor = nullptr,
                           const SessionInspector<G>& inspect = {}) {
  protocol::UserSession<G> user(user_in.params, user_in.device);
  protocol::SpSession<G> sp(sp_in.params, sp_in.secret);
  SessionOutcome out;
  std::vector<Bytes> history;
  bool lost = false;

  auto transmit = [&](Endpoint& from, const protocol::WireMessage<G>& msg) {
    history.push_back(encode<G>(msg));
    out.payload_bytes += history.back().size() - kFrameHeaderBytes;
    ++out.frames_sent;
    const auto frame =
        interceptor ? interceptor->apply(history.size() - 1, history) : std::optional(history.back());
    if (frame) from.send(*frame);
  };

  try {
    [&] {
      {
        detail::Stopwatch t(out.user_seconds);
        transmit(user_end, user.start());
      }
      std::optional<protocol::Ms1<G>> ms1;
      {
        auto mu1 = detail::receive_as<G, protocol::Mu1<G>>(sp_end, sp, lost);
        if (!mu1) return;
        detail::Stopwatch t(out.sp_seconds);
        ms1 = sp.on_mu1(*mu1, sp_in.revocations, sp_in.rng);
        if (!ms1) return;
        transmit(sp_end, *ms1);
      }
      {
        auto got = detail::receive_as<G, protocol::Ms1<G>>(user_end, user, lost);
        if (!got) return;
        detail::Stopwatch t(out.user_seconds);
        auto mu2 = user.on_ms1(*got, user_in.reading, user_in.revocations, user_in.rng);
        if (!mu2) return;
        transmit(user_end, *mu2);
      }
      {
        auto got = detail::receive_as<G, protocol::Mu2<G>>(sp_end, sp, lost);
        if (!got) return;
        detail::Stopwatch t(out.sp_seconds);
        auto ms2 = sp.on_mu2(*got);
        if (!ms2) return;
        transmit(sp_end, *ms2);
      }
      {
        auto got = detail::receive_as<G, protocol::Ms2>(user_end, user, lost);
        if (!got) return;
        detail::Stopwatch t(out.user_seconds);
        user.on_ms2(*got);
      }
    }();
  } catch (const IoError& e) {
    out.stop = StopPoint::kTransportError;
    out.error = e.what();
    user.abort(protocol::AbortReason::kTimeout);
    sp.abort(protocol::AbortReason::kTimeout);
  }

  if (inspect) inspect(user, sp);
  out.user_phase = user.phase();
  out.sp_phase = sp.phase();
  out.user_reason = user.abort_reason();
  out.sp_reason = sp.abort_reason();
  if (out.stop != StopPoint::kTransportError) {
    if (lost) {
      out.stop = StopPoint::kMessageLost;
    } else if (user.aborted()) {
      out.stop = StopPoint::kUserAborted;
    } else if (sp.aborted()) {
      out.stop = StopPoint::kSpAborted;
    }
  }
  if (out.both_accepted()) {
    out.user_key = user.session_key();
    out.sp_key = sp.session_key();
  }
  return out;
}

// Convenience overload over a fresh in-memory link.
template <group::PrimeOrderGroup G>
SessionOutcome run_session(const UserInputs<G>& user_in, const SpInputs<G>& sp_in,
                           const Interceptor* interceptor = nullptr,
                           const SessionInspector<G>& inspect = {}) {
  MemoryLink link;
  return run_session<G>(user_in, sp_in, link.user_end(), link.sp_end(), interceptor, inspect);
}

// One party's view when the two sides run in separate processes.
struct PartyOutcome {
  protocol::Phase phase = protocol::Phase::kInit;
  protocol::AbortReason reason = protocol::AbortReason::kNone;
  std::optional<protocol::SessionKey> key;
  std::string error;
  double seconds = 0;
};

template <group::PrimeOrderGroup G>
PartyOutcome run_user_side(const UserInputs<G>& in, Endpoint& ep) {
  protocol::UserSession<G> user(in.params, in.device);
  PartyOutcome out;
  bool lost = false;
  try {
    {
      detail::Stopwatch t(out.seconds);
      ep.send(encode<G>(user.start()));
    }
    if (auto ms1 = detail::receive_as<G, protocol::Ms1<G>>(ep, user, lost)) {
      std::optional<protocol::Mu2<G>> mu2;
      {
        detail::Stopwatch t(out.seconds);
        mu2 = user.on_ms1(*ms1, in.reading, in.revocations, in.rng);
      }
      if (mu2) {
        ep.send(encode<G>(*mu2));
        if (auto ms2 = detail::receive_as<G, protocol::Ms2>(ep, user, lost)) {
          detail::Stopwatch t(out.seconds);
          user.on_ms2(*ms2);
        }
      }
    }
  } catch (const IoError& e) {
    out.error = e.what();
    user.abort(protocol::AbortReason::kTimeout);
  }
  out.phase = user.phase();
  out.reason = user.abort_reason();
  out.key = user.session_key();
  return out;
}

template <group::PrimeOrderGroup G>
PartyOutcome run_sp_side(const SpInputs<G>& in, Endpoint& ep) {
  protocol::SpSession<G> sp(in.params, in.secret);
  PartyOutcome out;
  bool lost = false;
  try {
    if (auto mu1 = detail::receive_as<G, protocol::Mu1<G>>(ep, sp, lost)) {
      std::optional<protocol::Ms1<G>> ms1;
      {
        detail::Stopwatch t(out.seconds);
        ms1 = sp.on_mu1(*mu1, in.revocations, in.rng);
      }
      if (ms1) {
        ep.send(encode<G>(*ms1));
        if (auto mu2 = detail::receive_as<G, protocol::Mu2<G>>(ep, sp, lost)) {
          std::optional<protocol::Ms2> ms2;
          {
            detail::Stopwatch t(out.seconds);
            ms2 = sp.on_mu2(*mu2);
          }
          if (ms2) ep.send(encode<G>(*ms2));
        }
      }
    }
  } catch (const IoError& e) {
    out.error = e.what();
    sp.abort(protocol::AbortReason::kTimeout);
  }
  out.phase = sp.phase();
  out.reason = sp.abort_reason();
  out.key = sp.session_key();
  return out;
}

}  // namespace mfake::harness
