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

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mfake/bytes.hpp"
#include "mfake/crypto/primitives.hpp"
#include "mfake/error.hpp"
#include "mfake/group/bls12_381.hpp"
#include "mfake/group/toy_group.hpp"

namespace mfake::group {

// Scalars always travel as 32-byte big-endian integers, whatever the group.
inline constexpr std::size_t kScalarBytes = 32;
using ScalarBytes = std::array<std::uint8_t, kScalarBytes>;

template <class G>
concept PrimeOrderGroup = requires(const typename G::Element& e, const typename G::Scalar& s,
                                   ByteSpan bytes, std::string_view tag, Rng& rng) {
  { G::kElementBytes } -> std::convertible_to<std::size_t>;
  { G::kName } -> std::convertible_to<std::string_view>;
  { G::identity() } -> std::same_as<typename G::Element>;
  { G::generator() } -> std::convertible_to<typename G::Element>;
  { G::decode(bytes) } -> std::same_as<std::optional<typename G::Element>>;
  { G::hash_to_group(tag) } -> std::same_as<typename G::Element>;
  { e * e } -> std::same_as<typename G::Element>;
  { e / e } -> std::same_as<typename G::Element>;
  { e.pow(s) } -> std::same_as<typename G::Element>;
  { e.inverse() } -> std::same_as<typename G::Element>;
  { e.encode() } -> std::same_as<typename G::Encoded>;
  { e == e } -> std::convertible_to<bool>;
  { G::Scalar::random(rng) } -> std::same_as<typename G::Scalar>;
  { G::Scalar::from_bytes_reduce(bytes) } -> std::same_as<typename G::Scalar>;
  { s * s } -> std::same_as<typename G::Scalar>;
  { s + s } -> std::same_as<typename G::Scalar>;
};

static_assert(PrimeOrderGroup<Bls12381G1>);
static_assert(PrimeOrderGroup<ToyGroup101>);

// The collision-resistant hash into Z_q: SHA3-256 of the element encoding,
// reduced mod q.
template <PrimeOrderGroup G>
typename G::Scalar hash_to_scalar(const typename G::Element& e) {
  const auto enc = e.encode();
  return G::Scalar::from_bytes_reduce(crypto::sha3_256(enc));
}

template <PrimeOrderGroup G>
ScalarBytes scalar_bytes(const typename G::Scalar& s) {
  return s.template to_bytes<kScalarBytes>();
}

template <PrimeOrderGroup G>
std::optional<typename G::Scalar> scalar_from_bytes(ByteSpan bytes) {
  if (bytes.size() != kScalarBytes) return std::nullopt;
  return G::Scalar::from_bytes_canonical(bytes);
}

// Throws DecodeError naming `what` when the bytes are not a valid element.
template <PrimeOrderGroup G>
typename G::Element decode_element(ByteSpan bytes, std::string_view what) {
  auto e = G::decode(bytes);
  if (!e) throw DecodeError(std::string(what) + ": invalid group element");
  return *e;
}

template <PrimeOrderGroup G>
typename G::Scalar decode_scalar(ByteSpan bytes, std::string_view what) {
  auto s = scalar_from_bytes<G>(bytes);
  if (!s) throw DecodeError(std::string(what) + ": scalar out of range");
  return *s;
}

enum class GroupId : std::uint8_t {
  kBls12381G1 = 1,
  kToy101 = 2,
};

template <PrimeOrderGroup G>
constexpr GroupId group_id_of() {
  if constexpr (std::is_same_v<G, Bls12381G1>) {
    return GroupId::kBls12381G1;
  } else {
    static_assert(std::is_same_v<G, ToyGroup101>);
    return GroupId::kToy101;
  }
}

std::string_view group_name(GroupId id);
// Accepts the names printed by group_name(); throws ParameterError otherwise.
GroupId parse_group_id(std::string_view name);
GroupId group_id_from_byte(std::uint8_t b);

}  // namespace mfake::group
