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
#include <variant>

#include "mfake/bytes.hpp"
#include "mfake/error.hpp"
#include "mfake/protocol/messages.hpp"

namespace mfake::harness {

using protocol::MessageType;

// Frame: type(1) || payload length(2, big-endian) || payload.
inline constexpr std::size_t kFrameHeaderBytes = 3;

template <group::PrimeOrderGroup G>
struct PayloadSize {
  static constexpr std::size_t kMu1 = 8 + G::kElementBytes + crypto::kSignatureBytes;
  static constexpr std::size_t kMs1 = 8 + 3 * G::kElementBytes + crypto::kSignatureBytes;
  static constexpr std::size_t kMu2 = G::kElementBytes + group::kScalarBytes;
  static constexpr std::size_t kMs2 = group::kScalarBytes;
  static constexpr std::size_t kTotal = kMu1 + kMs1 + kMu2 + kMs2;

  static constexpr std::size_t of(MessageType t) {
    switch (t) {
      case MessageType::kMu1:
        return kMu1;
      case MessageType::kMs1:
        return kMs1;
      case MessageType::kMu2:
        return kMu2;
      case MessageType::kMs2:
        return kMs2;
    }
    return 0;
  }
};

// Bit lengths behind the communication cost: identifiers, group elements,
// scalars/tags and signatures.
struct SizeParams {
  unsigned id_bits = 64;
  unsigned element_bits = 384;
  unsigned scalar_bits = 256;
  unsigned signature_bits = 512;
};

// 5 elements + 2 scalars + 2 signatures + 2 identifiers, in bytes.
std::size_t mutual_auth_bytes(const SizeParams& p = {});
// Client-only authentication: 5 elements + 1 scalar + 1 signature + 1 identifier.
std::size_t unilateral_auth_bytes(const SizeParams& p = {});

template <group::PrimeOrderGroup G>
MessageType type_of(const protocol::WireMessage<G>& m) {
  return static_cast<MessageType>(m.index() + 1);
}

template <group::PrimeOrderGroup G>
Bytes encode_payload(const protocol::WireMessage<G>& msg) {
  ByteWriter w;
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, protocol::Mu1<G>>) {
          w.u64(m.uid);
          w.raw(m.com_u);
          w.raw(m.sigma_ru);
        } else if constexpr (std::is_same_v<M, protocol::Ms1<G>>) {
          w.u64(m.sid);
          w.raw(m.com_s);
          w.raw(m.h_gamma);
          w.raw(m.sigma_rs);
          w.raw(m.s);
        } else if constexpr (std::is_same_v<M, protocol::Mu2<G>>) {
          w.raw(m.u);
          w.raw(m.auth_u);
        } else {
          w.raw(m.auth_s);
        }
      },
      msg);
  return std::move(w).bytes();
}

template <group::PrimeOrderGroup G>
Bytes encode(const protocol::WireMessage<G>& msg) {
  const auto payload = encode_payload<G>(msg);
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(type_of<G>(msg)));
  w.u16(static_cast<std::uint16_t>(payload.size()));
  w.raw(payload);
  return std::move(w).bytes();
}

// Purely syntactic: checks the type byte, the declared and actual lengths,
// and splits fields. Element and scalar validity is left to the handlers.
template <group::PrimeOrderGroup G>
protocol::WireMessage<G> decode(ByteSpan frame) {
  ByteReader r(frame);
  const std::uint8_t type = r.u8();
  if (type < 0x01 || type > 0x04) throw DecodeError("unknown message type " + std::to_string(type));
  const auto t = static_cast<MessageType>(type);
  const std::uint16_t len = r.u16();
  if (len != PayloadSize<G>::of(t)) throw DecodeError("payload length does not match message type");
  if (r.remaining() != len) throw DecodeError("frame length mismatch");
  switch (t) {
    case MessageType::kMu1: {
      protocol::Mu1<G> m;
      m.uid = r.u64();
      m.com_u = r.array<G::kElementBytes>();
      m.sigma_ru = r.array<crypto::kSignatureBytes>();
      return m;
    }
    case MessageType::kMs1: {
      protocol::Ms1<G> m;
      m.sid = r.u64();
      m.com_s = r.array<G::kElementBytes>();
      m.h_gamma = r.array<G::kElementBytes>();
      m.sigma_rs = r.array<crypto::kSignatureBytes>();
      m.s = r.array<G::kElementBytes>();
      return m;
    }
    case MessageType::kMu2: {
      protocol::Mu2<G> m;
      m.u = r.array<G::kElementBytes>();
      m.auth_u = r.array<group::kScalarBytes>();
      return m;
    }
    case MessageType::kMs2:
      return protocol::Ms2{r.array<group::kScalarBytes>()};
  }
  throw DecodeError("unreachable");
}

}  // namespace mfake::harness
