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

#include "mfake/crypto/ecdsa.hpp"
#include "mfake/group/group.hpp"

namespace mfake::protocol {

// Wire messages carry raw encodings; nothing here is validated. The session
// handlers decode group elements and scalars and abort on bad input.
template <group::PrimeOrderGroup G>
struct Mu1 {
  std::uint64_t uid = 0;
  typename G::Encoded com_u{};
  crypto::Signature sigma_ru{};
  friend bool operator==(const Mu1&, const Mu1&) = default;
};

template <group::PrimeOrderGroup G>
struct Ms1 {
  std::uint64_t sid = 0;
  typename G::Encoded com_s{};
  typename G::Encoded h_gamma{};
  crypto::Signature sigma_rs{};
  typename G::Encoded s{};
  friend bool operator==(const Ms1&, const Ms1&) = default;
};

template <group::PrimeOrderGroup G>
struct Mu2 {
  typename G::Encoded u{};
  group::ScalarBytes auth_u{};
  friend bool operator==(const Mu2&, const Mu2&) = default;
};

struct Ms2 {
  group::ScalarBytes auth_s{};
  friend bool operator==(const Ms2&, const Ms2&) = default;
};

template <group::PrimeOrderGroup G>
using WireMessage = std::variant<Mu1<G>, Ms1<G>, Mu2<G>, Ms2>;

enum class MessageType : std::uint8_t { kMu1 = 0x01, kMs1 = 0x02, kMu2 = 0x03, kMs2 = 0x04 };

}  // namespace mfake::protocol
