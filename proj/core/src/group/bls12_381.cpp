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

#include "mfake/group/bls12_381.hpp"

#include "mfake/crypto/primitives.hpp"

namespace mfake::group {
namespace {

using Fp = Bls12381Fp;
using Element = Bls12381G1::Element;

const Fp& curve_b() {
  static const Fp b = Fp::from_u64(4);
  return b;
}

constexpr limbs::Limbs<6> sqrt_exponent() {
  // (p + 1) / 4, valid because p = 3 mod 4.
  auto e = Bls12381FpParams::kModulus;
  limbs::Limbs<6> one{};
  one[0] = 1;
  limbs::add(e, one);
  limbs::shift_right(e, 2);
  return e;
}

constexpr limbs::Limbs<6> half_modulus() {
  auto e = Bls12381FpParams::kModulus;
  limbs::shift_right(e, 1);
  return e;
}

// h = (x - 1)^2 / 3 for the BLS parameter x = -0xd201000000010000.
constexpr limbs::Limbs<2> kCofactor = {0x8c00aaab0000aaabULL, 0x396c8c005555e156ULL};

std::optional<Fp> sqrt(const Fp& a) {
  const Fp root = a.pow(sqrt_exponent());
  if (root.square() == a) return root;
  return std::nullopt;
}

// y is "lexicographically largest" when its canonical value exceeds (p-1)/2.
bool is_large(const Fp& y) { return limbs::compare(y.to_canonical(), half_modulus()) > 0; }

Element make_generator() {
  static constexpr std::array<std::uint8_t, 48> kX = {
      0x17, 0xf1, 0xd3, 0xa7, 0x31, 0x97, 0xd7, 0x94, 0x26, 0x95, 0x63, 0x8c, 0x4f, 0xa9, 0xac, 0x0f,
      0xc3, 0x68, 0x8c, 0x4f, 0x97, 0x74, 0xb9, 0x05, 0xa1, 0x4e, 0x3a, 0x3f, 0x17, 0x1b, 0xac, 0x58,
      0x6c, 0x55, 0xe8, 0x3f, 0xf9, 0x7a, 0x1a, 0xef, 0xfb, 0x3a, 0xf0, 0x0a, 0xdb, 0x22, 0xc6, 0xbb};
  static constexpr std::array<std::uint8_t, 48> kY = {
      0x08, 0xb3, 0xf4, 0x81, 0xe3, 0xaa, 0xa0, 0xf1, 0xa0, 0x9e, 0x30, 0xed, 0x74, 0x1d, 0x8a, 0xe4,
      0xfc, 0xf5, 0xe0, 0x95, 0xd5, 0xd0, 0x0a, 0xf6, 0x00, 0xdb, 0x18, 0xcb, 0x2c, 0x04, 0xb3, 0xed,
      0xd0, 0x3c, 0xc7, 0x44, 0xa2, 0x88, 0x8a, 0xe4, 0x0c, 0xaa, 0x23, 0x29, 0x46, 0xc5, 0xe7, 0xe1};
  auto p = Bls12381G1::from_affine_unchecked(*Fp::from_bytes_canonical(kX),
                                             *Fp::from_bytes_canonical(kY));
  return *p;
}

}  // namespace

const Element& Bls12381G1::generator() {
  static const Element g = make_generator();
  return g;
}

Element Bls12381G1::Element::squared() const {
  if (is_identity()) return *this;
  // dbl-2009-l for a = 0.
  const Fp a = x_.square();
  const Fp b = y_.square();
  const Fp c = b.square();
  const Fp d = ((x_ + b).square() - a - c).doubled();
  const Fp e = a.doubled() + a;
  const Fp f = e.square();
  const Fp x3 = f - d.doubled();
  const Fp y3 = e * (d - x3) - c.doubled().doubled().doubled();
  const Fp z3 = (y_ * z_).doubled();
  return Element(x3, y3, z3);
}

Element operator*(const Element& p, const Element& q) {
  if (p.is_identity()) return q;
  if (q.is_identity()) return p;
  // add-2007-bl.
  const Fp z1z1 = p.z_.square();
  const Fp z2z2 = q.z_.square();
  const Fp u1 = p.x_ * z2z2;
  const Fp u2 = q.x_ * z1z1;
  const Fp s1 = p.y_ * q.z_ * z2z2;
  const Fp s2 = q.y_ * p.z_ * z1z1;
  const Fp h = u2 - u1;
  const Fp r = (s2 - s1).doubled();
  if (h.is_zero()) {
    if (r.is_zero()) return p.squared();
    return Element();
  }
  const Fp i = h.doubled().square();
  const Fp j = h * i;
  const Fp v = u1 * i;
  const Fp x3 = r.square() - j - v.doubled();
  const Fp y3 = r * (v - x3) - (s1 * j).doubled();
  const Fp z3 = ((p.z_ + q.z_).square() - z1z1 - z2z2) * h;
  return Element(x3, y3, z3);
}

bool operator==(const Element& a, const Element& b) {
  if (a.is_identity() || b.is_identity()) return a.is_identity() && b.is_identity();
  const Fp z1z1 = a.z_.square();
  const Fp z2z2 = b.z_.square();
  if (!(a.x_ * z2z2 == b.x_ * z1z1)) return false;
  return a.y_ * b.z_ * z2z2 == b.y_ * a.z_ * z1z1;
}

Element Bls12381G1::Element::inverse() const { return Element(x_, -y_, z_); }

template <std::size_t M>
Element Bls12381G1::Element::pow_limbs(const limbs::Limbs<M>& e) const {
  // Fixed 4-bit window, most significant window first.
  std::array<Element, 16> table;
  table[1] = *this;
  for (std::size_t i = 2; i < table.size(); ++i) table[i] = table[i - 1] * *this;
  const unsigned bits = limbs::bit_length(e);
  const unsigned windows = (bits + 3) / 4;
  Element acc;
  for (unsigned w = windows; w-- > 0;) {
    acc = acc.squared().squared().squared().squared();
    unsigned digit = 0;
    for (unsigned b = 0; b < 4; ++b) {
      const unsigned idx = 4 * w + b;
      if (idx < 64 * M && limbs::bit(e, idx)) digit |= 1u << b;
    }
    if (digit != 0) acc = acc * table[digit];
  }
  return acc;
}

template Element Bls12381G1::Element::pow_limbs<2>(const limbs::Limbs<2>&) const;
template Element Bls12381G1::Element::pow_limbs<4>(const limbs::Limbs<4>&) const;

Element Bls12381G1::Element::pow(const Scalar& s) const { return pow_limbs(s.to_canonical()); }

std::pair<Fp, Fp> Bls12381G1::Element::affine() const {
  const Fp zinv = z_.inverse();
  const Fp zinv2 = zinv.square();
  return {x_ * zinv2, y_ * zinv2 * zinv};
}

Bls12381G1::Encoded Bls12381G1::Element::encode() const {
  Encoded out{};
  if (is_identity()) {
    out[0] = 0xc0;
    return out;
  }
  const auto [x, y] = affine();
  out = x.to_bytes<48>();
  out[0] |= 0x80;
  if (is_large(y)) out[0] |= 0x20;
  return out;
}

std::optional<Element> Bls12381G1::from_affine_unchecked(const Fp& x, const Fp& y) {
  if (!(y.square() == x.square() * x + curve_b())) return std::nullopt;
  return Element(x, y, Fp::one());
}

bool Bls12381G1::in_subgroup(const Element& e) {
  return e.pow_limbs(Bls12381FrParams::kModulus).is_identity();
}

std::optional<Element> Bls12381G1::decode(ByteSpan bytes) {
  if (bytes.size() != kElementBytes) return std::nullopt;
  const std::uint8_t flags = bytes[0];
  const bool compressed = (flags & 0x80) != 0;
  const bool infinity = (flags & 0x40) != 0;
  const bool large = (flags & 0x20) != 0;
  if (!compressed) return std::nullopt;
  if (infinity) {
    if (large || (flags & 0x1f) != 0) return std::nullopt;
    for (std::size_t i = 1; i < bytes.size(); ++i) {
      if (bytes[i] != 0) return std::nullopt;
    }
    return Element();
  }
  Encoded xb{};
  std::copy(bytes.begin(), bytes.end(), xb.begin());
  xb[0] &= 0x1f;
  const auto x = Fp::from_bytes_canonical(xb);
  if (!x) return std::nullopt;
  const auto y = sqrt(x->square() * *x + curve_b());
  if (!y) return std::nullopt;
  const Fp y_sel = is_large(*y) == large ? *y : -*y;
  // y = 0 has no sign choice; then the large flag must be clear.
  if (y_sel.is_zero() && large) return std::nullopt;
  Element p(*x, y_sel, Fp::one());
  if (!in_subgroup(p)) return std::nullopt;
  return p;
}

Element Bls12381G1::hash_to_group(std::string_view domain_tag) {
  for (std::uint32_t counter = 0;; ++counter) {
    Bytes wide;
    for (std::uint8_t half = 0; half < 2; ++half) {
      ByteWriter w;
      w.raw(as_bytes("mfake/hash-to-g1/v1"));
      w.u8(0);
      w.raw(as_bytes(domain_tag));
      w.u32(counter);
      w.u8(half);
      const auto d = crypto::sha3_256(w.bytes());
      wide.insert(wide.end(), d.begin(), d.end());
    }
    const Fp x = Fp::from_bytes_reduce(wide);
    const auto y = sqrt(x.square() * x + curve_b());
    if (!y) continue;
    const bool want_large = (wide.back() & 1) != 0;
    const Fp y_sel = is_large(*y) == want_large ? *y : -*y;
    const Element p(x, y_sel, Fp::one());
    const Element q = p.pow_limbs(kCofactor);
    if (!q.is_identity()) return q;
  }
}

}  // namespace mfake::group
