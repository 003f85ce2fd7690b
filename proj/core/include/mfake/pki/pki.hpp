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
#include <memory>
#include <mutex>
#include <optional>
#include <span>

#include "mfake/bytes.hpp"
#include "mfake/crypto/ecdsa.hpp"
#include "mfake/group/group.hpp"
#include "mfake/mffe/mffe.hpp"
#include "mfake/rng.hpp"

namespace mfake::pki {

inline constexpr std::uint8_t kFormatVersion = 1;
inline constexpr std::string_view kTagH = "mfake/h/v1";
inline constexpr std::string_view kTagA = "mfake/a/v1";
inline constexpr std::string_view kTagB = "mfake/b/v1";

// Public system parameters: the MFFE parameters, second generator h, the AKE
// constants a and b, and the RC verification key. h, a, b are hashed to the
// group from fixed tags, so nobody knows their discrete logs.
template <group::PrimeOrderGroup G>
struct SystemParams {
  mffe::PublicParams<G> mffe;
  typename G::Element h, a, b;
  crypto::PublicKey vk{};

  std::size_t n() const { return mffe.n(); }
  double d() const { return mffe.basis.d(); }
  crypto::Verifier verifier() const { return crypto::Verifier(vk); }
};

template <group::PrimeOrderGroup G>
SystemParams<G> make_system_params(std::size_t n, double d, const crypto::PublicKey& vk) {
  return {mffe::setup<G>(n, d), G::hash_to_group(kTagH), G::hash_to_group(kTagA),
          G::hash_to_group(kTagB), vk};
}

template <group::PrimeOrderGroup G>
struct UserCredential {
  std::uint64_t uid = 0;
  typename G::Element com_u;
  crypto::Signature sigma{};

  static constexpr std::size_t kEncodedBytes = 8 + G::kElementBytes + crypto::kSignatureBytes;

  Bytes signed_message() const {
    ByteWriter w;
    w.u64(uid);
    w.raw(com_u.encode());
    return std::move(w).bytes();
  }
  bool verify(const crypto::Verifier& vk) const { return vk.verify(signed_message(), sigma); }

  // uid || com_u || sigma
  Bytes encode() const {
    Bytes out = signed_message();
    out.insert(out.end(), sigma.begin(), sigma.end());
    return out;
  }
  static UserCredential read(ByteReader& in) {
    UserCredential c;
    c.uid = in.u64();
    c.com_u = group::decode_element<G>(in.raw(G::kElementBytes), "user credential");
    c.sigma = in.array<crypto::kSignatureBytes>();
    return c;
  }
};

template <group::PrimeOrderGroup G>
struct SpCredential {
  std::uint64_t sid = 0;
  typename G::Element com_s;    // g^gamma
  typename G::Element h_gamma;  // h^gamma
  crypto::Signature sigma{};

  static constexpr std::size_t kEncodedBytes = 8 + 2 * G::kElementBytes + crypto::kSignatureBytes;

  Bytes signed_message() const {
    ByteWriter w;
    w.u64(sid);
    w.raw(com_s.encode());
    w.raw(h_gamma.encode());
    return std::move(w).bytes();
  }
  bool verify(const crypto::Verifier& vk) const { return vk.verify(signed_message(), sigma); }

  Bytes encode() const {
    Bytes out = signed_message();
    out.insert(out.end(), sigma.begin(), sigma.end());
    return out;
  }
  static SpCredential read(ByteReader& in) {
    SpCredential c;
    c.sid = in.u64();
    c.com_s = group::decode_element<G>(in.raw(G::kElementBytes), "sp credential");
    c.h_gamma = group::decode_element<G>(in.raw(G::kElementBytes), "sp credential");
    c.sigma = in.array<crypto::kSignatureBytes>();
    return c;
  }
};

// What the user's device keeps after registration. beta is not stored.
template <group::PrimeOrderGroup G>
struct UserDeviceRecord {
  typename G::Scalar alpha;
  std::uint64_t uid = 0;
  mffe::SketchPackage<G> sketch;
  UserCredential<G> credential;
};

template <group::PrimeOrderGroup G>
struct SpSecret {
  typename G::Scalar gamma;
  SpCredential<G> credential;
};

template <group::PrimeOrderGroup G>
struct UserRegistration {
  UserCredential<G> credential;
  mffe::SketchPackage<G> sketch;
  // Only for instrumented callers; the RC itself discards it.
  mffe::ExtractedKey<G> beta;
};

// Registration center: signing key plus uid/sid counters. Issuance is
// serialized by an internal mutex.
template <group::PrimeOrderGroup G>
class RcState {
 public:
  RcState(SystemParams<G> params, crypto::Signer signer, std::uint64_t next_uid = 1,
          std::uint64_t next_sid = 1)
      : params_(std::move(params)),
        signer_(std::move(signer)),
        next_uid_(next_uid),
        next_sid_(next_sid),
        mu_(std::make_unique<std::mutex>()) {
    if (signer_.public_key() != params_.vk) throw ParameterError("signing key does not match vk");
  }

  const SystemParams<G>& params() const { return params_; }
  const crypto::Signer& signer() const { return signer_; }
  std::uint64_t next_uid() const { return next_uid_; }
  std::uint64_t next_sid() const { return next_sid_; }

  // Uses the requested id when given, otherwise the next counter value. The
  // counter always moves past the id that was issued.
  std::uint64_t allocate_uid(std::optional<std::uint64_t> requested) {
    std::lock_guard lock(*mu_);
    return allocate(next_uid_, requested);
  }
  std::uint64_t allocate_sid(std::optional<std::uint64_t> requested) {
    std::lock_guard lock(*mu_);
    return allocate(next_sid_, requested);
  }

 private:
  static std::uint64_t allocate(std::uint64_t& counter, std::optional<std::uint64_t> requested) {
    const std::uint64_t id = requested.value_or(counter);
    if (id >= counter) counter = id + 1;
    return id;
  }

  SystemParams<G> params_;
  crypto::Signer signer_;
  std::uint64_t next_uid_;
  std::uint64_t next_sid_;
  std::unique_ptr<std::mutex> mu_;
};

template <group::PrimeOrderGroup G>
RcState<G> rc_setup(std::size_t n, double d, Rng& rng) {
  auto signer = crypto::Signer::generate(rng);
  auto params = make_system_params<G>(n, d, signer.public_key());
  return RcState<G>(std::move(params), std::move(signer));
}

// Runtime-selected variant; throws ParameterError if `id` is not G.
template <group::PrimeOrderGroup G>
RcState<G> rc_setup(std::size_t n, double d, group::GroupId id, Rng& rng) {
  if (id != group::group_id_of<G>()) throw ParameterError("rc_setup: group mismatch");
  return rc_setup<G>(n, d, rng);
}

// RC side of user registration: Gen, commit, sign. Nothing is retained.
template <group::PrimeOrderGroup G>
UserRegistration<G> register_user(RcState<G>& rc, std::optional<std::uint64_t> uid_request,
                                  const typename G::Element& z, std::span<const double> x0,
                                  Rng& rng) {
  const auto& pp = rc.params();
  if (x0.size() != pp.n()) throw DimensionError("register_user", pp.n(), x0.size());
  auto gen = mffe::gen<G>(pp.mffe, x0, z, rng);
  UserRegistration<G> out;
  out.credential.uid = rc.allocate_uid(uid_request);
  out.credential.com_u = z * pp.h.pow(gen.key.beta);
  out.credential.sigma = rc.signer().sign(out.credential.signed_message());
  out.sketch = std::move(gen.sketch);
  out.beta = gen.key;
  return out;
}

template <group::PrimeOrderGroup G>
SpCredential<G> register_sp(RcState<G>& rc, std::optional<std::uint64_t> sid_request,
                            const typename G::Element& com_s,
                            const typename G::Element& h_gamma) {
  if (com_s.is_identity() || h_gamma.is_identity()) {
    throw ParameterError("register_sp: identity element");
  }
  SpCredential<G> c;
  c.sid = rc.allocate_sid(sid_request);
  c.com_s = com_s;
  c.h_gamma = h_gamma;
  c.sigma = rc.signer().sign(c.signed_message());
  return c;
}

// Both sides of user registration in one call: the user draws alpha, the RC registers.
template <group::PrimeOrderGroup G>
UserDeviceRecord<G> enroll_user(RcState<G>& rc, std::span<const double> x0, Rng& rng,
                                std::optional<std::uint64_t> uid_request = std::nullopt) {
  const auto binding = mffe::SecretBinding<G>::random(rng);
  auto reg = register_user<G>(rc, uid_request, binding.z, x0, rng);
  return {binding.alpha, reg.credential.uid, std::move(reg.sketch), reg.credential};
}

template <group::PrimeOrderGroup G>
SpSecret<G> enroll_sp(RcState<G>& rc, Rng& rng,
                      std::optional<std::uint64_t> sid_request = std::nullopt) {
  auto gamma = G::Scalar::random(rng);
  while (gamma.is_zero()) gamma = G::Scalar::random(rng);
  const auto& pp = rc.params();
  auto cred = register_sp<G>(rc, sid_request, G::generator().pow(gamma), pp.h.pow(gamma));
  return {gamma, cred};
}

// ---- Binary file formats. Every file starts with version || group id. ----

namespace detail {

template <group::PrimeOrderGroup G>
void write_header(ByteWriter& w) {
  w.u8(kFormatVersion);
  w.u8(static_cast<std::uint8_t>(group::group_id_of<G>()));
}

template <group::PrimeOrderGroup G>
void read_header(ByteReader& r, std::string_view what) {
  if (r.u8() != kFormatVersion) throw DecodeError(std::string(what) + ": unsupported version");
  if (r.u8() != static_cast<std::uint8_t>(group::group_id_of<G>())) {
    throw DecodeError(std::string(what) + ": group mismatch");
  }
}

}  // namespace detail

// Reads only the group id byte so callers can dispatch on it.
group::GroupId peek_group(ByteSpan file_bytes);

// version || group || n(u32) || d(f64 LE) || vk
template <group::PrimeOrderGroup G>
Bytes encode_params(const SystemParams<G>& p) {
  ByteWriter w;
  detail::write_header<G>(w);
  w.u32(static_cast<std::uint32_t>(p.n()));
  w.f64_le(p.d());
  w.raw(p.vk);
  return std::move(w).bytes();
}

template <group::PrimeOrderGroup G>
SystemParams<G> decode_params(ByteSpan bytes) {
  ByteReader r(bytes);
  detail::read_header<G>(r, "params");
  const std::uint32_t n = r.u32();
  const double d = r.f64_le();
  const auto vk = r.array<crypto::kPublicKeyBytes>();
  r.expect_end("params");
  crypto::Verifier check(vk);  // rejects points off the curve
  try {
    return make_system_params<G>(n, d, vk);
  } catch (const ParameterError& e) {
    throw DecodeError(std::string("params: ") + e.what());
  }
}

// header || params length(u32) || params || sk || next uid || next sid
template <group::PrimeOrderGroup G>
Bytes encode_rc_state(const RcState<G>& rc) {
  ByteWriter w;
  detail::write_header<G>(w);
  const auto p = encode_params<G>(rc.params());
  w.u32(static_cast<std::uint32_t>(p.size()));
  w.raw(p);
  w.raw(rc.signer().private_key());
  w.u64(rc.next_uid());
  w.u64(rc.next_sid());
  return std::move(w).bytes();
}

template <group::PrimeOrderGroup G>
RcState<G> decode_rc_state(ByteSpan bytes) {
  ByteReader r(bytes);
  detail::read_header<G>(r, "rc state");
  auto params = decode_params<G>(r.raw(r.u32()));
  const auto sk = r.array<crypto::kPrivateKeyBytes>();
  const std::uint64_t next_uid = r.u64();
  const std::uint64_t next_sid = r.u64();
  r.expect_end("rc state");
  return RcState<G>(std::move(params), crypto::Signer::from_private_key(sk), next_uid, next_sid);
}

// header || alpha || uid || sketch length(u32) || sketch || credential
template <group::PrimeOrderGroup G>
Bytes encode_user_record(const UserDeviceRecord<G>& rec) {
  ByteWriter w;
  detail::write_header<G>(w);
  w.raw(group::scalar_bytes<G>(rec.alpha));
  w.u64(rec.uid);
  const auto sketch = mffe::encode_sketch<G>(rec.sketch);
  w.u32(static_cast<std::uint32_t>(sketch.size()));
  w.raw(sketch);
  w.raw(rec.credential.encode());
  return std::move(w).bytes();
}

template <group::PrimeOrderGroup G>
UserDeviceRecord<G> decode_user_record(ByteSpan bytes) {
  ByteReader r(bytes);
  detail::read_header<G>(r, "user record");
  UserDeviceRecord<G> rec;
  rec.alpha = group::decode_scalar<G>(r.raw(group::kScalarBytes), "user record");
  rec.uid = r.u64();
  rec.sketch = mffe::decode_sketch<G>(r.raw(r.u32()));
  rec.credential = UserCredential<G>::read(r);
  r.expect_end("user record");
  if (rec.credential.uid != rec.uid) throw DecodeError("user record: uid mismatch");
  return rec;
}

// header || gamma || credential
template <group::PrimeOrderGroup G>
Bytes encode_sp_secret(const SpSecret<G>& sp) {
  ByteWriter w;
  detail::write_header<G>(w);
  w.raw(group::scalar_bytes<G>(sp.gamma));
  w.raw(sp.credential.encode());
  return std::move(w).bytes();
}

template <group::PrimeOrderGroup G>
SpSecret<G> decode_sp_secret(ByteSpan bytes) {
  ByteReader r(bytes);
  detail::read_header<G>(r, "sp secret");
  SpSecret<G> sp;
  sp.gamma = group::decode_scalar<G>(r.raw(group::kScalarBytes), "sp secret");
  sp.credential = SpCredential<G>::read(r);
  r.expect_end("sp secret");
  return sp;
}

}  // namespace mfake::pki
