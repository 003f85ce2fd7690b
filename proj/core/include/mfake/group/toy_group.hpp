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

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "mfake/bytes.hpp"
#include "mfake/group/mont_field.hpp"

namespace mfake::group {

struct Toy607Params {
  static constexpr limbs::Limbs<1> kModulus = {607};
};
struct Toy101Params {
  static constexpr limbs::Limbs<1> kModulus = {101};
};

// Order-101 subgroup of Z_607^* (607 - 1 = 2 * 3 * 101). Cryptographically
// meaningless; it exists so statistical properties of the extractor can be
// measured exhaustively over a small key space.
class ToyGroup101 {
 public:
  using Scalar = MontField<Toy101Params>;
  using Base = MontField<Toy607Params>;
  static constexpr std::size_t kElementBytes = 2;
  static constexpr std::uint64_t kOrder = 101;
  static constexpr std::uint64_t kModulus = 607;
  static constexpr std::string_view kName = "toy-101";
  using Encoded = std::array<std::uint8_t, kElementBytes>;

  class Element {
   public:
    Element() : v_(Base::one()) {}

    friend Element operator*(const Element& a, const Element& b) { return Element(a.v_ * b.v_); }
    friend Element operator/(const Element& a, const Element& b) { return a * b.inverse(); }
    Element& operator*=(const Element& b) { return *this = *this * b; }
    friend bool operator==(const Element& a, const Element& b) { return a.v_ == b.v_; }

    Element inverse() const { return Element(v_.inverse()); }
    Element pow(const Scalar& s) const { return Element(v_.pow(s.to_canonical())); }
    bool is_identity() const { return v_ == Base::one(); }
    std::uint64_t value() const { return v_.to_canonical()[0]; }

    Encoded encode() const {
      const auto v = value();
      return {static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
    }

   private:
    friend class ToyGroup101;
    explicit Element(const Base& v) : v_(v) {}
    Base v_;
  };

  static Element identity() { return Element(); }
  static const Element& generator();
  static std::optional<Element> decode(ByteSpan bytes);
  static Element hash_to_group(std::string_view domain_tag);
  // Any residue; returns nullopt unless it lies in the order-101 subgroup.
  static std::optional<Element> from_value(std::uint64_t v);
};

}  // namespace mfake::group
