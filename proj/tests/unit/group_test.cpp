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

#include "mfake/group/group.hpp"

#include <gtest/gtest.h>

#include <set>

#include "mfake/rng.hpp"

namespace mfake::group {
namespace {

using G1 = Bls12381G1;
using Fp = Bls12381Fp;
using Fr = Bls12381Fr;

std::string hex_of(const auto& arr) { return to_hex(ByteSpan(arr.data(), arr.size())); }

// Reference values computed with Python big integers.
constexpr std::string_view kGenerator =
    "97f1d3a73197d7942695638c4fa9ac0fc3688c4f9774b905a14e3a3f171bac586c55e83ff97a1aeffb3af00adb22c6bb";
constexpr std::string_view kTwoG =
    "a572cbea904d67468808c8eb50a9450c9721db309128012543902d0ac358a62ae28f75bb8f1c7c42c39a8c5529bf0f4e";
constexpr std::string_view kThreeG =
    "89ece308f9d1f0131765212deca99697b112d61f9be9a5f1f3780a51335b3ff981747a0b2ca2179b96d2c0c9024e5224";
constexpr std::string_view kMinusG =
    "b7f1d3a73197d7942695638c4fa9ac0fc3688c4f9774b905a14e3a3f171bac586c55e83ff97a1aeffb3af00adb22c6bb";
constexpr std::string_view kScalarK = "0123456789abcdef0123456789abcdef0123456789abcdef0123456789abcdef";
constexpr std::string_view kScalarKG =
    "86b50179774296419b7e8375118823ddb06940d9a28ea045ab418c7ecbe6da84d416cb55406eec6393db97ac26e38bd4";

TEST(MontFieldTest, DerivedConstantsMatchReference) {
  EXPECT_EQ(Fp::kInv, 0x89f3fffcfffcfffdULL);
  EXPECT_EQ(Fr::kInv, 0xfffffffeffffffffULL);
  const limbs::Limbs<6> r_mod_p = {0x760900000002fffdULL, 0xebf4000bc40c0002ULL,
                                   0x5f48985753c758baULL, 0x77ce585370525745ULL,
                                   0x5c071a97a256ec6dULL, 0x15f65ec3fa80e493ULL};
  const limbs::Limbs<6> r2_mod_p = {0xf4df1f341c341746ULL, 0x0a76e6a609d104f1ULL,
                                    0x8de5476c4c95b6d5ULL, 0x67eb88a9939d83c0ULL,
                                    0x9a793e85b519952dULL, 0x11988fe592cae3aaULL};
  EXPECT_EQ(Fp::kR, r_mod_p);
  EXPECT_EQ(Fp::kR2, r2_mod_p);
  EXPECT_EQ(Fp::kBits, 381u);
  EXPECT_EQ(Fr::kBits, 255u);
}

TEST(MontFieldTest, ReductionMatchesReference) {
  Bytes b(64);
  for (int i = 0; i < 64; ++i) b[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i + 1);
  EXPECT_EQ(to_hex(Fp::from_bytes_reduce(b).to_bytes<48>()),
            "16a7eb375f886b331653889e2da6a368f1853fed8ba9dc8ee3721f2a01a270a367d5d0ef2be7023070cb5ffd22ee9bfb");
  const Bytes ones(32, 0xff);
  EXPECT_EQ(to_hex(Fr::from_bytes_reduce(ones).to_bytes<32>()),
            "1824b159acc5056f998c4fefecbc4ff55884b7fa0003480200000001fffffffd");
}

TEST(MontFieldTest, FieldAxioms) {
  SeededRng rng(7);
  for (int i = 0; i < 200; ++i) {
    const Fp a = Fp::random(rng), b = Fp::random(rng), c = Fp::random(rng);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a - b) + b, a);
    EXPECT_EQ(a + (-a), Fp::zero());
    if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), Fp::one());
    EXPECT_EQ(*Fp::from_canonical(a.to_canonical()), a);
  }
}

TEST(MontFieldTest, SignedConversions) {
  EXPECT_EQ(Fr::from_i64(-1), Fr::zero() - Fr::one());
  EXPECT_EQ(Fr::from_i64(-1).to_i64_symmetric(), -1);
  EXPECT_EQ(Fr::from_i64(INT64_MIN).to_i64_symmetric(), INT64_MIN);
  EXPECT_EQ(Fr::from_i64(INT64_MAX).to_i64_symmetric(), INT64_MAX);
  using F101 = ToyGroup101::Scalar;
  EXPECT_EQ(F101::from_i64(-1).to_canonical()[0], 100u);
  EXPECT_EQ(F101::from_i64(50).to_i64_symmetric(), 50);
  EXPECT_EQ(F101::from_i64(51).to_i64_symmetric(), -50);
}

TEST(MontFieldTest, CanonicalBytesRejectModulus) {
  const auto q = Fr::kModulus;
  Fr minus_one = Fr::zero() - Fr::one();
  auto bytes = minus_one.to_bytes<32>();
  EXPECT_TRUE(Fr::from_bytes_canonical(bytes).has_value());
  bytes[31] += 1;  // q itself
  (void)q;
  EXPECT_FALSE(Fr::from_bytes_canonical(bytes).has_value());
}

TEST(MontFieldTest, RandomScalarsAreInRangeAndVary) {
  SeededRng rng(1);
  std::set<std::string> seen;
  for (int i = 0; i < 100; ++i) {
    const Fr s = Fr::random(rng);
    EXPECT_LT(limbs::compare(s.to_canonical(), Fr::kModulus), 0);
    seen.insert(hex_of(s.to_bytes<32>()));
  }
  EXPECT_EQ(seen.size(), 100u);
}

TEST(Bls12381Test, GeneratorEncodingMatchesReference) {
  EXPECT_EQ(hex_of(G1::generator().encode()), kGenerator);
  const auto g = G1::generator();
  EXPECT_EQ(hex_of(g.squared().encode()), kTwoG);
  EXPECT_EQ(hex_of((g * g).encode()), kTwoG);
  EXPECT_EQ(hex_of((g * g * g).encode()), kThreeG);
  EXPECT_EQ(hex_of(g.inverse().encode()), kMinusG);
  EXPECT_EQ(hex_of(g.pow(Fr::from_u64(3)).encode()), kThreeG);
  EXPECT_EQ(hex_of(g.pow(Fr::zero() - Fr::one()).encode()), kMinusG);
  const auto k = Fr::from_bytes_reduce(from_hex(kScalarK));
  EXPECT_EQ(hex_of(g.pow(k).encode()), kScalarKG);
}

TEST(Bls12381Test, IdentityEncoding) {
  const auto id = G1::identity().encode();
  EXPECT_EQ(id[0], 0xc0);
  auto decoded = G1::decode(id);
  ASSERT_TRUE(decoded.has_value());
  EXPECT_TRUE(decoded->is_identity());
  auto bad = id;
  bad[0] = 0xe0;  // infinity with sign bit
  EXPECT_FALSE(G1::decode(bad).has_value());
  bad = id;
  bad[47] = 1;
  EXPECT_FALSE(G1::decode(bad).has_value());
}

TEST(Bls12381Test, GroupLaws) {
  SeededRng rng(11);
  const auto g = G1::generator();
  for (int i = 0; i < 10; ++i) {
    const Fr a = Fr::random(rng), b = Fr::random(rng);
    EXPECT_EQ(g.pow(a) * g.pow(b), g.pow(a + b));
    EXPECT_EQ(g.pow(a).pow(b), g.pow(a * b));
    EXPECT_EQ(g.pow(a) / g.pow(a), G1::identity());
    EXPECT_EQ(g.pow(a) * G1::identity(), g.pow(a));
  }
  EXPECT_TRUE(g.pow(Fr::zero()).is_identity());
  EXPECT_TRUE(G1::in_subgroup(g));
}

TEST(Bls12381Test, DecodeRoundTrip) {
  SeededRng rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto p = G1::generator().pow(Fr::random(rng));
    const auto enc = p.encode();
    const auto back = G1::decode(enc);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, p);
    EXPECT_EQ(back->encode(), enc);
  }
}

TEST(Bls12381Test, DecodeRejectsMalformedPoints) {
  auto enc = G1::generator().encode();
  auto uncompressed = enc;
  uncompressed[0] &= 0x7f;
  EXPECT_FALSE(G1::decode(uncompressed).has_value());
  EXPECT_FALSE(G1::decode(ByteSpan(enc.data(), 47)).has_value());

  // x = p is non-canonical.
  auto big = Fp::kModulus;
  std::array<std::uint8_t, 48> xp{};
  for (std::size_t i = 0; i < 48; ++i) xp[47 - i] = static_cast<std::uint8_t>(big[i / 8] >> (8 * (i % 8)));
  xp[0] |= 0x80;
  EXPECT_FALSE(G1::decode(xp).has_value());

  // Some x has no curve point: scan small x values for a rejection.
  int off_curve = 0;
  for (std::uint64_t x = 1; x < 20; ++x) {
    std::array<std::uint8_t, 48> b{};
    b[0] = 0x80;
    b[47] = static_cast<std::uint8_t>(x);
    if (!G1::decode(b)) ++off_curve;
  }
  EXPECT_GT(off_curve, 0);
}

TEST(Bls12381Test, DecodeRejectsPointsOutsideSubgroup) {
  // Points on the curve with small x almost never lie in G1.
  int found = 0;
  for (std::uint64_t xv = 1; xv < 50 && found < 3; ++xv) {
    const Fp x = Fp::from_u64(xv);
    const Fp rhs = x.square() * x + Fp::from_u64(4);
    const limbs::Limbs<6> e = [] {
      auto v = Fp::kModulus;
      limbs::Limbs<6> one{};
      one[0] = 1;
      limbs::add(v, one);
      limbs::shift_right(v, 2);
      return v;
    }();
    const Fp y = rhs.pow(e);
    if (!(y.square() == rhs)) continue;
    auto p = G1::from_affine_unchecked(x, y);
    ASSERT_TRUE(p.has_value());
    EXPECT_FALSE(G1::in_subgroup(*p));
    EXPECT_FALSE(G1::decode(p->encode()).has_value());
    ++found;
  }
  EXPECT_GT(found, 0);
}

TEST(Bls12381Test, HashToGroupIsDeterministicAndDomainSeparated) {
  const auto h1 = G1::hash_to_group("mfake/h/v1");
  EXPECT_EQ(h1, G1::hash_to_group("mfake/h/v1"));
  EXPECT_FALSE(h1 == G1::hash_to_group("mfake/a/v1"));
  EXPECT_FALSE(h1.is_identity());
  EXPECT_FALSE(h1 == G1::generator());
  EXPECT_TRUE(G1::in_subgroup(h1));
}

TEST(ToyGroupTest, GeneratorHasOrder101) {
  using T = ToyGroup101;
  auto g = T::generator();
  EXPECT_FALSE(g.is_identity());
  EXPECT_TRUE(g.pow(T::Scalar::from_u64(101)).is_identity());
  std::set<std::uint64_t> elements;
  auto acc = T::identity();
  for (int i = 0; i < 101; ++i) {
    elements.insert(acc.value());
    acc = acc * g;
  }
  EXPECT_EQ(elements.size(), 101u);
  EXPECT_TRUE(acc.is_identity());
}

TEST(ToyGroupTest, DecodeRequiresSubgroupMembership) {
  using T = ToyGroup101;
  int members = 0;
  for (std::uint64_t v = 0; v < 700; ++v) {
    const std::array<std::uint8_t, 2> b = {static_cast<std::uint8_t>(v >> 8),
                                           static_cast<std::uint8_t>(v)};
    if (T::decode(b)) ++members;
  }
  EXPECT_EQ(members, 101);
  const auto h = T::hash_to_group("mfake/h/v1");
  EXPECT_FALSE(h.is_identity());
  EXPECT_EQ(T::decode(h.encode()), h);
}

TEST(GroupIdTest, ParsesKnownNames) {
  EXPECT_EQ(parse_group_id("bls12-381-g1"), GroupId::kBls12381G1);
  EXPECT_EQ(parse_group_id("toy-101"), GroupId::kToy101);
  EXPECT_THROW(parse_group_id("secp256k1"), ParameterError);
  EXPECT_EQ(group_name(GroupId::kToy101), "toy-101");
}

}  // namespace
}  // namespace mfake::group
