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
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "mfake/bytes.hpp"
#include "mfake/rng.hpp"

namespace mfake::group {

// Little-endian multi-precision helpers, usable in constant expressions.
namespace limbs {

template <std::size_t N>
using Limbs = std::array<std::uint64_t, N>;

template <std::size_t N>
constexpr int compare(const Limbs<N>& a, const Limbs<N>& b) {
  for (std::size_t i = N; i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

template <std::size_t N>
constexpr std::uint64_t add(Limbs<N>& a, const Limbs<N>& b) {
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < N; ++i) {
    const auto s = static_cast<unsigned __int128>(a[i]) + b[i] + carry;
    a[i] = static_cast<std::uint64_t>(s);
    carry = static_cast<std::uint64_t>(s >> 64);
  }
  return carry;
}

template <std::size_t N>
constexpr std::uint64_t sub(Limbs<N>& a, const Limbs<N>& b) {
  std::uint64_t borrow = 0;
  for (std::size_t i = 0; i < N; ++i) {
    const auto d = static_cast<unsigned __int128>(a[i]) - b[i] - borrow;
    a[i] = static_cast<std::uint64_t>(d);
    borrow = static_cast<std::uint64_t>(d >> 64) & 1;
  }
  return borrow;
}

template <std::size_t N>
constexpr void shift_right(Limbs<N>& a, unsigned bits) {
  for (std::size_t i = 0; i < N; ++i) {
    a[i] >>= bits;
    if (i + 1 < N) a[i] |= a[i + 1] << (64 - bits);
  }
}

template <std::size_t N>
constexpr bool is_zero(const Limbs<N>& a) {
  for (auto x : a) {
    if (x != 0) return false;
  }
  return true;
}

template <std::size_t N>
constexpr unsigned bit_length(const Limbs<N>& a) {
  for (std::size_t i = N; i-- > 0;) {
    if (a[i] != 0) return static_cast<unsigned>(64 * i + 64 - std::countl_zero(a[i]));
  }
  return 0;
}

template <std::size_t N>
constexpr bool bit(const Limbs<N>& a, unsigned i) {
  return ((a[i / 64] >> (i % 64)) & 1) != 0;
}

// 2^(64 * N * times) mod m by repeated doubling; only used for constants.
template <std::size_t N>
constexpr Limbs<N> pow2_mod(const Limbs<N>& m, unsigned exponent) {
  Limbs<N> acc{};
  acc[0] = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    Limbs<N> doubled = acc;
    const auto carry = add(doubled, acc);
    if (carry != 0 || compare(doubled, m) >= 0) sub(doubled, m);
    acc = doubled;
  }
  return acc;
}

// -m^{-1} mod 2^64 via Newton iteration.
constexpr std::uint64_t neg_inverse64(std::uint64_t m) {
  std::uint64_t inv = 1;
  for (int i = 0; i < 7; ++i) inv *= 2 - m * inv;
  return ~inv + 1;
}

}  // namespace limbs

// Prime field in Montgomery representation. `Params` supplies the modulus as
// N little-endian 64-bit limbs; the modulus must be odd and leave at least one
// spare bit in the top limb. All other constants are derived at compile time.
template <class Params>
class MontField {
 public:
  static constexpr std::size_t kLimbs = Params::kModulus.size();
  using Limbs = limbs::Limbs<kLimbs>;

  static constexpr Limbs kModulus = Params::kModulus;
  static constexpr unsigned kBits = limbs::bit_length(kModulus);
  static_assert((kModulus[0] & 1) == 1, "modulus must be odd");
  static_assert(kBits < 64 * kLimbs, "modulus needs a spare top bit");

  static constexpr std::uint64_t kInv = limbs::neg_inverse64(kModulus[0]);
  static constexpr Limbs kR = limbs::pow2_mod(kModulus, 64 * kLimbs);
  static constexpr Limbs kR2 = limbs::pow2_mod(kModulus, 128 * kLimbs);

  constexpr MontField() = default;

  static constexpr MontField zero() { return MontField(); }
  static constexpr MontField one() { return from_raw(kR); }

  static MontField from_u64(std::uint64_t v) {
    Limbs a{};
    a[0] = v;
    return from_raw(mont_mul(a, kR2));
  }

  // Signed integers reduce into [0, p): -1 maps to p - 1.
  static MontField from_i64(std::int64_t v) {
    if (v >= 0) return from_u64(static_cast<std::uint64_t>(v));
    const auto magnitude = static_cast<std::uint64_t>(-(v + 1)) + 1;
    return -from_u64(magnitude);
  }

  static std::optional<MontField> from_canonical(const Limbs& a) {
    if (limbs::compare(a, kModulus) >= 0) return std::nullopt;
    return from_raw(mont_mul(a, kR2));
  }

  // Big-endian bytes of any length, reduced modulo p.
  static MontField from_bytes_reduce(ByteSpan be) {
    const MontField base = from_raw(mont_mul(limbs::pow2_mod(kModulus, 64), kR2));  // 2^64
    MontField acc;
    std::size_t i = 0;
    const std::size_t head = be.size() % 8;
    std::uint64_t word = 0;
    for (; i < head; ++i) word = (word << 8) | be[i];
    if (head != 0) acc = from_u64(word);
    while (i < be.size()) {
      word = 0;
      for (int k = 0; k < 8; ++k, ++i) word = (word << 8) | be[i];
      acc = acc * base + from_u64(word);
    }
    return acc;
  }

  // Big-endian bytes that must encode an integer strictly below p.
  static std::optional<MontField> from_bytes_canonical(ByteSpan be) {
    Limbs a{};
    for (std::size_t i = 0; i < be.size(); ++i) {
      const std::size_t byte_index = be.size() - 1 - i;  // significance
      if (byte_index >= 8 * kLimbs) {
        if (be[i] != 0) return std::nullopt;
        continue;
      }
      a[byte_index / 8] |= static_cast<std::uint64_t>(be[i]) << (8 * (byte_index % 8));
    }
    return from_canonical(a);
  }

  // Uniform sample by rejection from 256-bit (or wider) strings masked to the
  // bit length of p.
  static MontField random(Rng& rng) {
    constexpr std::size_t kWidth = kLimbs * 8 > 32 ? kLimbs * 8 : 32;
    std::array<std::uint8_t, kWidth> buf{};
    for (;;) {
      rng.fill(buf);
      mask_to_bits(buf);
      if (auto v = from_bytes_canonical(buf)) {
        secure_zero(buf);
        return *v;
      }
    }
  }

  Limbs to_canonical() const {
    Limbs one_limb{};
    one_limb[0] = 1;
    return mont_mul(value_, one_limb);
  }

  // Big-endian encoding left-padded to `Width` bytes.
  template <std::size_t Width = kLimbs * 8>
  std::array<std::uint8_t, Width> to_bytes() const {
    static_assert(Width * 8 >= kBits, "width too small for the modulus");
    const Limbs c = to_canonical();
    std::array<std::uint8_t, Width> out{};
    for (std::size_t i = 0; i < Width; ++i) {
      const std::size_t sig = Width - 1 - i;
      if (sig < 8 * kLimbs) out[i] = static_cast<std::uint8_t>(c[sig / 8] >> (8 * (sig % 8)));
    }
    return out;
  }

  // Lifts to the symmetric residue range (-p/2, p/2] when it fits in int64.
  std::optional<std::int64_t> to_i64_symmetric() const {
    Limbs c = to_canonical();
    Limbs half = kModulus;
    limbs::shift_right(half, 1);
    bool negative = false;
    if (limbs::compare(c, half) > 0) {
      Limbs m = kModulus;
      limbs::sub(m, c);
      c = m;
      negative = true;
    }
    for (std::size_t i = 1; i < kLimbs; ++i) {
      if (c[i] != 0) return std::nullopt;
    }
    constexpr auto kMaxMagnitude = static_cast<std::uint64_t>(INT64_MAX);
    if (negative && c[0] == kMaxMagnitude + 1) return INT64_MIN;
    if (c[0] > kMaxMagnitude) return std::nullopt;
    const auto mag = static_cast<std::int64_t>(c[0]);
    return negative ? -mag : mag;
  }

  bool is_zero() const { return limbs::is_zero(value_); }

  friend bool operator==(const MontField& a, const MontField& b) { return a.value_ == b.value_; }

  friend MontField operator+(MontField a, const MontField& b) {
    const auto carry = limbs::add(a.value_, b.value_);
    if (carry != 0 || limbs::compare(a.value_, kModulus) >= 0) limbs::sub(a.value_, kModulus);
    return a;
  }

  friend MontField operator-(MontField a, const MontField& b) {
    if (limbs::sub(a.value_, b.value_) != 0) limbs::add(a.value_, kModulus);
    return a;
  }

  MontField operator-() const { return zero() - *this; }

  friend MontField operator*(const MontField& a, const MontField& b) {
    return from_raw(mont_mul(a.value_, b.value_));
  }

  MontField& operator+=(const MontField& b) { return *this = *this + b; }
  MontField& operator-=(const MontField& b) { return *this = *this - b; }
  MontField& operator*=(const MontField& b) { return *this = *this * b; }

  MontField square() const { return *this * *this; }
  MontField doubled() const { return *this + *this; }

  // Exponent given as canonical little-endian limbs of any width.
  template <std::size_t M>
  MontField pow(const limbs::Limbs<M>& exponent) const {
    MontField acc = one();
    for (unsigned i = limbs::bit_length(exponent); i-- > 0;) {
      acc = acc.square();
      if (limbs::bit(exponent, i)) acc = acc * *this;
    }
    return acc;
  }

  // Fermat inversion; the inverse of zero is zero.
  MontField inverse() const {
    Limbs e = kModulus;
    Limbs two{};
    two[0] = 2;
    limbs::sub(e, two);
    return pow(e);
  }

  const Limbs& montgomery_limbs() const { return value_; }

 private:
  static constexpr MontField from_raw(const Limbs& v) {
    MontField f;
    f.value_ = v;
    return f;
  }

  template <std::size_t W>
  static void mask_to_bits(std::array<std::uint8_t, W>& buf) {
    // Clear every bit above kBits in the big-endian buffer.
    for (std::size_t i = 0; i < W; ++i) {
      const std::size_t sig_byte = W - 1 - i;
      const std::size_t low_bit = sig_byte * 8;
      if (low_bit >= kBits) {
        buf[i] = 0;
      } else if (low_bit + 8 > kBits) {
        buf[i] &= static_cast<std::uint8_t>((1u << (kBits - low_bit)) - 1);
      }
    }
  }

  // CIOS Montgomery multiplication: a * b * R^{-1} mod p.
  static constexpr Limbs mont_mul(const Limbs& a, const Limbs& b) {
    constexpr std::size_t N = kLimbs;
    std::array<std::uint64_t, N + 2> t{};
#pragma GCC unroll 8
    for (std::size_t i = 0; i < N; ++i) {
      std::uint64_t carry = 0;
#pragma GCC unroll 8
      for (std::size_t j = 0; j < N; ++j) {
        const auto s = static_cast<unsigned __int128>(a[j]) * b[i] + t[j] + carry;
        t[j] = static_cast<std::uint64_t>(s);
        carry = static_cast<std::uint64_t>(s >> 64);
      }
      auto s = static_cast<unsigned __int128>(t[N]) + carry;
      t[N] = static_cast<std::uint64_t>(s);
      t[N + 1] = static_cast<std::uint64_t>(s >> 64);

      const std::uint64_t m = t[0] * kInv;
      s = static_cast<unsigned __int128>(m) * kModulus[0] + t[0];
      carry = static_cast<std::uint64_t>(s >> 64);
#pragma GCC unroll 8
      for (std::size_t j = 1; j < N; ++j) {
        s = static_cast<unsigned __int128>(m) * kModulus[j] + t[j] + carry;
        t[j - 1] = static_cast<std::uint64_t>(s);
        carry = static_cast<std::uint64_t>(s >> 64);
      }
      s = static_cast<unsigned __int128>(t[N]) + carry;
      t[N - 1] = static_cast<std::uint64_t>(s);
      t[N] = t[N + 1] + static_cast<std::uint64_t>(s >> 64);
    }
    Limbs out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = t[i];
    if (t[N] != 0 || limbs::compare(out, kModulus) >= 0) limbs::sub(out, kModulus);
    return out;
  }

  Limbs value_{};
};

}  // namespace mfake::group
