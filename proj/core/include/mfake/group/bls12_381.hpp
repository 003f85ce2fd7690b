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

struct Bls12381FpParams {
  static constexpr limbs::Limbs<6> kModulus = {
      0xb9feffffffffaaabULL, 0x1eabfffeb153ffffULL, 0x6730d2a0f6b0f624ULL,
      0x64774b84f38512bfULL, 0x4b1ba7b6434bacd7ULL, 0x1a0111ea397fe69aULL};
};

struct Bls12381FrParams {
  static constexpr limbs::Limbs<4> kModulus = {0xffffffff00000001ULL, 0x53bda402fffe5bfeULL,
                                               0x3339d80809a1d805ULL, 0x73eda753299d7d48ULL};
};

using Bls12381Fp = MontField<Bls12381FpParams>;
using Bls12381Fr = MontField<Bls12381FrParams>;

// The prime-order subgroup G1 of BLS12-381 (y^2 = x^3 + 4 over Fp), written
// multiplicatively to match the protocol notation: `a * b` is the group
// operation and `a.pow(s)` is scalar multiplication. Points serialize in the
// 48-byte compressed form used by Zcash and the IETF pairing drafts.
class Bls12381G1 {
 public:
  using Scalar = Bls12381Fr;
  static constexpr std::size_t kElementBytes = 48;
  static constexpr std::string_view kName = "bls12-381-g1";
  using Encoded = std::array<std::uint8_t, kElementBytes>;

  class Element {
   public:
    // Identity element.
    Element() = default;

    friend Element operator*(const Element& a, const Element& b);
    friend Element operator/(const Element& a, const Element& b) { return a * b.inverse(); }
    Element& operator*=(const Element& b) { return *this = *this * b; }
    friend bool operator==(const Element& a, const Element& b);

    Element inverse() const;
    Element squared() const;
    Element pow(const Scalar& s) const;
    template <std::size_t M>
    Element pow_limbs(const limbs::Limbs<M>& e) const;

    bool is_identity() const { return z_.is_zero(); }
    Encoded encode() const;

    // Affine coordinates; only meaningful for non-identity elements.
    std::pair<Bls12381Fp, Bls12381Fp> affine() const;

   private:
    friend class Bls12381G1;
    Element(const Bls12381Fp& x, const Bls12381Fp& y, const Bls12381Fp& z) : x_(x), y_(y), z_(z) {}

    // Jacobian coordinates: (X/Z^2, Y/Z^3); Z = 0 is the identity.
    Bls12381Fp x_, y_, z_;
  };

  static Element identity() { return Element(); }
  static const Element& generator();

  // Rejects off-curve points, points outside the order-q subgroup, and
  // non-canonical encodings.
  static std::optional<Element> decode(ByteSpan bytes);

  // Try-and-increment hash onto the curve followed by cofactor clearing.
  // Never returns the identity.
  static Element hash_to_group(std::string_view domain_tag);

  // Affine point without subgroup membership check, exposed for tests.
  static std::optional<Element> from_affine_unchecked(const Bls12381Fp& x, const Bls12381Fp& y);
  static bool in_subgroup(const Element& e);
};

}  // namespace mfake::group
