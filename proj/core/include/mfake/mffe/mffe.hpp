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

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mfake/bytes.hpp"
#include "mfake/crypto/primitives.hpp"
#include "mfake/error.hpp"
#include "mfake/group/group.hpp"
#include "mfake/lattice/lattice.hpp"
#include "mfake/rng.hpp"

namespace mfake::mffe {

// Centers must satisfy |c| < 2^31 so they survive the mod-q round trip.
inline constexpr std::int64_t kCenterBound = std::int64_t{1} << 31;
inline constexpr std::uint8_t kSketchVersion = 1;

template <group::PrimeOrderGroup G>
struct PublicParams {
  lattice::LatticeBasis basis;

  std::size_t n() const { return basis.n(); }
  static constexpr group::GroupId group_id() { return group::group_id_of<G>(); }
};

template <group::PrimeOrderGroup G>
struct UhSeed {
  std::vector<typename G::Scalar> seed;  // n + 1 entries

  static UhSeed random(std::size_t n, Rng& rng) {
    UhSeed out;
    out.seed.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) out.seed.push_back(G::Scalar::random(rng));
    return out;
  }
  friend bool operator==(const UhSeed&, const UhSeed&) = default;
};

// Public helper data: sketch delta (basis coordinates), w = g^r, and the
// universal-hash seed.
template <group::PrimeOrderGroup G>
struct SketchPackage {
  std::vector<double> delta;
  typename G::Element w;
  UhSeed<G> uh;
};

template <group::PrimeOrderGroup G>
struct ExtractedKey {
  typename G::Scalar beta;
  friend bool operator==(const ExtractedKey&, const ExtractedKey&) = default;
};

template <group::PrimeOrderGroup G>
struct SecretBinding {
  typename G::Scalar alpha;
  typename G::Element z;

  static SecretBinding random(Rng& rng) {
    const auto a = G::Scalar::random(rng);
    return {a, G::generator().pow(a)};
  }
};

template <group::PrimeOrderGroup G>
struct GenResult {
  ExtractedKey<G> key;
  SketchPackage<G> sketch;
};

// Everything Rep computed on the way to beta; used by tests and diagnostics.
template <group::PrimeOrderGroup G>
struct RepTrace {
  crypto::SymmetricKey k{};
  lattice::LatticePoint cv;            // CV(B^{-1} x1 - delta), the encrypted centers
  std::vector<std::int64_t> centers;   // after removing the keystream
  ExtractedKey<G> key;
};

// Throws ParameterError when `id` does not name G or the lattice parameters are invalid.
template <group::PrimeOrderGroup G>
PublicParams<G> setup(std::size_t n, double d, group::GroupId id = group::group_id_of<G>()) {
  if (id != group::group_id_of<G>()) {
    throw ParameterError("group mismatch: parameters built for " +
                         std::string(group::group_name(group::group_id_of<G>())));
  }
  return {lattice::build_triangular_basis(n, d)};
}

template <group::PrimeOrderGroup G>
typename G::Scalar universal_hash(const UhSeed<G>& uh, std::span<const typename G::Scalar> c) {
  if (uh.seed.size() != c.size()) throw DimensionError("universal hash", uh.seed.size(), c.size());
  auto acc = G::Scalar::zero();
  for (std::size_t i = 0; i < c.size(); ++i) acc = acc + uh.seed[i] * c[i];
  return acc;
}

template <group::PrimeOrderGroup G>
std::vector<typename G::Scalar> encode_centers(std::span<const std::int64_t> v) {
  std::vector<typename G::Scalar> out;
  out.reserve(v.size() + 1);
  for (auto c : v) {
    if (c <= -kCenterBound || c >= kCenterBound) {
      throw ParameterError("center coordinate " + std::to_string(c) + " exceeds 2^31");
    }
    out.push_back(G::Scalar::from_i64(c));
  }
  return out;
}

// Inverse of encode_centers via the symmetric residue. Throws DecodeError when
// an entry does not fit in int64.
template <group::PrimeOrderGroup G>
std::vector<std::int64_t> decode_centers(std::span<const typename G::Scalar> c) {
  std::vector<std::int64_t> out;
  out.reserve(c.size());
  for (const auto& s : c) {
    const auto v = s.to_i64_symmetric();
    if (!v) throw DecodeError("center does not fit in 64 bits");
    out.push_back(*v);
  }
  return out;
}

// e_i = v_i + s_i with s a signed 32-bit keystream from AES-256-CTR under k.
std::vector<std::int64_t> stream_encrypt_ints(const crypto::SymmetricKey& k,
                                              std::span<const std::int64_t> v);
std::vector<std::int64_t> stream_decrypt_ints(const crypto::SymmetricKey& k,
                                              std::span<const std::int64_t> e);
// The raw keystream, exposed for tests.
std::vector<std::int32_t> int_keystream(const crypto::SymmetricKey& k, std::size_t n);

namespace detail {

template <group::PrimeOrderGroup G>
crypto::SymmetricKey derive_stream_key(const typename G::Element& w,
                                       const typename G::Element& shared) {
  crypto::Sha3_256 h;
  h.update(w.encode()).update(shared.encode());
  return h.finish();
}

template <group::PrimeOrderGroup G>
std::vector<std::int64_t> floor_coords(std::span<const double> xb) {
  std::vector<std::int64_t> out(xb.size());
  for (std::size_t i = 0; i < xb.size(); ++i) {
    const double f = std::floor(xb[i]);
    if (!(std::fabs(f) < static_cast<double>(kCenterBound))) {
      throw ParameterError("feature vector too large for the center encoding");
    }
    out[i] = static_cast<std::int64_t>(f);
  }
  return out;
}

template <group::PrimeOrderGroup G>
ExtractedKey<G> extract(const UhSeed<G>& uh, std::span<const std::int64_t> centers,
                        const typename G::Element& z) {
  std::vector<typename G::Scalar> c;
  c.reserve(centers.size() + 1);
  for (auto v : centers) c.push_back(G::Scalar::from_i64(v));
  c.push_back(group::hash_to_scalar<G>(z));
  return {universal_hash<G>(uh, c)};
}

}  // namespace detail

// Gen with the randomness supplied by the caller.
template <group::PrimeOrderGroup G>
GenResult<G> gen_derandomized(const PublicParams<G>& pp, std::span<const double> x,
                              const typename G::Element& z, UhSeed<G> uh,
                              const typename G::Scalar& r) {
  const std::size_t n = pp.n();
  if (x.size() != n) throw DimensionError("gen", n, x.size());
  if (uh.seed.size() != n + 1) throw DimensionError("gen seed", n + 1, uh.seed.size());

  const auto xb = lattice::to_basis_coords(pp.basis, x).coords;
  const auto centers = detail::floor_coords<G>(xb);
  auto c = encode_centers<G>(centers);
  c.push_back(group::hash_to_scalar<G>(z));
  const ExtractedKey<G> key{universal_hash<G>(uh, c)};

  const auto w = G::generator().pow(r);
  auto k = detail::derive_stream_key<G>(w, z.pow(r));
  const auto e = stream_encrypt_ints(k, centers);
  secure_zero(k);

  SketchPackage<G> sketch{std::vector<double>(n), w, std::move(uh)};
  for (std::size_t i = 0; i < n; ++i) sketch.delta[i] = xb[i] - static_cast<double>(e[i]);
  return {key, std::move(sketch)};
}

template <group::PrimeOrderGroup G>
GenResult<G> gen(const PublicParams<G>& pp, std::span<const double> x,
                 const typename G::Element& z, Rng& rng) {
  auto uh = UhSeed<G>::random(pp.n(), rng);
  const auto r = G::Scalar::random(rng);
  return gen_derandomized<G>(pp, x, z, std::move(uh), r);
}

template <group::PrimeOrderGroup G>
RepTrace<G> rep_with_trace(const PublicParams<G>& pp, std::span<const double> x1,
                           const typename G::Scalar& alpha, const SketchPackage<G>& sketch) {
  const std::size_t n = pp.n();
  if (x1.size() != n) throw DimensionError("rep", n, x1.size());
  if (sketch.delta.size() != n) throw DimensionError("rep sketch", n, sketch.delta.size());
  if (sketch.uh.seed.size() != n + 1) throw DimensionError("rep seed", n + 1, sketch.uh.seed.size());

  RepTrace<G> t;
  t.k = detail::derive_stream_key<G>(sketch.w, sketch.w.pow(alpha));
  auto xb = lattice::to_basis_coords(pp.basis, x1);
  for (std::size_t i = 0; i < n; ++i) xb.coords[i] -= sketch.delta[i];
  t.cv = lattice::closest_vector(pp.basis, xb);
  t.centers = stream_decrypt_ints(t.k, t.cv.coords);
  t.key = detail::extract<G>(sketch.uh, t.centers, G::generator().pow(alpha));
  return t;
}

// Never reports a mismatch: wrong inputs simply yield an unrelated key.
template <group::PrimeOrderGroup G>
ExtractedKey<G> rep(const PublicParams<G>& pp, std::span<const double> x1,
                    const typename G::Scalar& alpha, const SketchPackage<G>& sketch) {
  auto t = rep_with_trace<G>(pp, x1, alpha, sketch);
  secure_zero(t.k);
  return t.key;
}

// version(1) || group id(1) || n(u32) || delta (n x f64 LE) || w || uh ((n+1) x 32 bytes)
template <group::PrimeOrderGroup G>
Bytes encode_sketch(const SketchPackage<G>& s) {
  ByteWriter out;
  out.u8(kSketchVersion);
  out.u8(static_cast<std::uint8_t>(group::group_id_of<G>()));
  out.u32(static_cast<std::uint32_t>(s.delta.size()));
  for (double v : s.delta) out.f64_le(v);
  out.raw(s.w.encode());
  for (const auto& u : s.uh.seed) out.raw(group::scalar_bytes<G>(u));
  return std::move(out).bytes();
}

template <group::PrimeOrderGroup G>
SketchPackage<G> read_sketch(ByteReader& in) {
  if (in.u8() != kSketchVersion) throw DecodeError("sketch: unsupported version");
  if (in.u8() != static_cast<std::uint8_t>(group::group_id_of<G>())) {
    throw DecodeError("sketch: group mismatch");
  }
  const std::uint32_t n = in.u32();
  if (n == 0 || in.remaining() < std::size_t{n} * 8) throw DecodeError("sketch: bad dimension");
  SketchPackage<G> s;
  s.delta.resize(n);
  for (auto& v : s.delta) {
    v = in.f64_le();
    if (!std::isfinite(v)) throw DecodeError("sketch: non-finite delta");
  }
  auto w = G::decode(in.raw(G::kElementBytes));
  if (!w) throw DecodeError("sketch: invalid helper element");
  s.w = *w;
  s.uh.seed.reserve(n + 1);
  for (std::uint32_t i = 0; i <= n; ++i) {
    auto u = group::scalar_from_bytes<G>(in.raw(group::kScalarBytes));
    if (!u) throw DecodeError("sketch: non-canonical hash seed");
    s.uh.seed.push_back(*u);
  }
  return s;
}

template <group::PrimeOrderGroup G>
SketchPackage<G> decode_sketch(ByteSpan bytes) {
  ByteReader in(bytes);
  auto s = read_sketch<G>(in);
  in.expect_end("sketch");
  return s;
}

}  // namespace mfake::mffe
