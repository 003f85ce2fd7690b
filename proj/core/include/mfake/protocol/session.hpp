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
#include <span>
#include <string_view>
#include <vector>

#include "mfake/bytes.hpp"
#include "mfake/crypto/primitives.hpp"
#include "mfake/error.hpp"
#include "mfake/group/group.hpp"
#include "mfake/mffe/mffe.hpp"
#include "mfake/pki/pki.hpp"
#include "mfake/pki/revocation.hpp"
#include "mfake/protocol/messages.hpp"
#include "mfake/rng.hpp"

namespace mfake::protocol {

enum class Role { kUser, kServiceProvider };
enum class Phase { kInit, kAwaitingPeer, kConfirmed, kAccepted, kAborted };

enum class AbortReason {
  kNone,
  kBadSignature,
  kRevoked,
  kInvalidElement,
  kInvalidScalar,
  kAuthMismatch,
  kUnexpectedMessage,
  kMalformed,
  kTimeout,
};

std::string_view phase_name(Phase p);
std::string_view abort_reason_name(AbortReason r);

using SessionKey = crypto::Digest256;

// Z_u = H(com_s^alpha * H^beta).
template <group::PrimeOrderGroup G>
typename G::Scalar derive_z_user(const typename G::Scalar& alpha, const typename G::Scalar& beta,
                                 const typename G::Element& com_s,
                                 const typename G::Element& h_gamma) {
  return group::hash_to_scalar<G>(com_s.pow(alpha) * h_gamma.pow(beta));
}

// Z_s = H(com_u^gamma).
template <group::PrimeOrderGroup G>
typename G::Scalar derive_z_sp(const typename G::Scalar& gamma, const typename G::Element& com_u) {
  return group::hash_to_scalar<G>(com_u.pow(gamma));
}

namespace detail {

// M = sid || uid || S || U || k
template <group::PrimeOrderGroup G>
Bytes transcript(std::uint64_t sid, std::uint64_t uid, const typename G::Element& s,
                 const typename G::Element& u, const typename G::Element& k) {
  ByteWriter w;
  w.u64(sid);
  w.u64(uid);
  w.raw(s.encode());
  w.raw(u.encode());
  w.raw(k.encode());
  return std::move(w).bytes();
}

// H(M || Z || label) reduced mod q.
template <group::PrimeOrderGroup G>
group::ScalarBytes auth_tag(ByteSpan m, const typename G::Scalar& z, std::uint8_t label) {
  crypto::Sha3_256 h;
  h.update(m).update(group::scalar_bytes<G>(z)).update(label);
  const auto d = h.finish();
  return group::scalar_bytes<G>(G::Scalar::from_bytes_reduce(d));
}

inline SessionKey session_key(ByteSpan m) { return crypto::sha3_256(m); }

template <class Scalar>
void wipe(Scalar& s) {
  s = Scalar::zero();
}

}  // namespace detail

// State shared by both roles. Secret fields are wiped on abort.
template <group::PrimeOrderGroup G>
class SessionBase {
 public:
  Role role() const { return role_; }
  Phase phase() const { return phase_; }
  AbortReason abort_reason() const { return reason_; }
  bool accepted() const { return phase_ == Phase::kAccepted; }
  bool aborted() const { return phase_ == Phase::kAborted; }

  // Present only once the session has accepted.
  std::optional<SessionKey> session_key() const {
    if (phase_ != Phase::kAccepted) return std::nullopt;
    return key_;
  }

  // Moves to the terminal aborted phase from anywhere but accepted.
  void abort(AbortReason reason) {
    if (phase_ == Phase::kAccepted || phase_ == Phase::kAborted) return;
    phase_ = Phase::kAborted;
    reason_ = reason;
    detail::wipe(nonce_);
    detail::wipe(z_);
    dh_ = G::identity();
    transcript_.clear();
    secure_zero(key_);
  }

  // Instrumentation for tests: nonce exponent, long-term secret, DH value.
  const typename G::Scalar& nonce() const { return nonce_; }
  const typename G::Scalar& long_term_secret() const { return z_; }
  const typename G::Element& dh_value() const { return dh_; }

 protected:
  explicit SessionBase(Role role) : role_(role) {}
  ~SessionBase() { secure_zero(key_); }

  void require(Phase expected, std::string_view op) const {
    if (phase_ != expected) {
      throw ProtocolStateError(std::string(op) + " not allowed in phase " +
                               std::string(phase_name(phase_)));
    }
  }

  Role role_;
  Phase phase_ = Phase::kInit;
  AbortReason reason_ = AbortReason::kNone;
  typename G::Scalar nonce_;
  typename G::Scalar z_;
  typename G::Element dh_;
  Bytes transcript_;
  SessionKey key_{};
};

// User role. `params` and `device` must outlive the session.
template <group::PrimeOrderGroup G>
class UserSession : public SessionBase<G> {
  using Base = SessionBase<G>;

 public:
  UserSession(const pki::SystemParams<G>& params, const pki::UserDeviceRecord<G>& device)
      : Base(Role::kUser), params_(params), device_(device) {}

  // m_u1 = uid || com_u || sigma_ru
  Mu1<G> start() {
    this->require(Phase::kInit, "user start");
    this->phase_ = Phase::kAwaitingPeer;
    return {device_.credential.uid, device_.credential.com_u.encode(), device_.credential.sigma};
  }

  // Verifies the SP credential, recovers beta from the fresh reading x1 and
  // answers with m_u2. Returns nullopt after aborting.
  std::optional<Mu2<G>> on_ms1(const Ms1<G>& msg, std::span<const double> x1,
                               const pki::RevocationList* revocations, Rng& rng) {
    this->require(Phase::kAwaitingPeer, "user on_ms1");
    if (x1.size() != params_.n()) throw DimensionError("user reading", params_.n(), x1.size());
    if (revocations && revocations->is_revoked(msg.com_s)) return fail(AbortReason::kRevoked);

    ByteWriter signed_part;
    signed_part.u64(msg.sid);
    signed_part.raw(msg.com_s);
    signed_part.raw(msg.h_gamma);
    if (!params_.verifier().verify(signed_part.bytes(), msg.sigma_rs)) {
      return fail(AbortReason::kBadSignature);
    }
    const auto com_s = G::decode(msg.com_s);
    const auto h_gamma = G::decode(msg.h_gamma);
    const auto s = G::decode(msg.s);
    if (!com_s || !h_gamma || !s) return fail(AbortReason::kInvalidElement);

    auto beta = mffe::rep<G>(params_.mffe, x1, device_.alpha, device_.sketch);
    this->z_ = derive_z_user<G>(device_.alpha, beta.beta, *com_s, *h_gamma);
    detail::wipe(beta.beta);

    this->nonce_ = G::Scalar::random(rng);
    const auto u = G::generator().pow(this->nonce_) * params_.b.pow(this->z_);
    this->dh_ = (*s / params_.a.pow(this->z_)).pow(this->nonce_);
    this->transcript_ = detail::transcript<G>(msg.sid, device_.uid, *s, u, this->dh_);
    this->phase_ = Phase::kConfirmed;
    return Mu2<G>{u.encode(), detail::auth_tag<G>(this->transcript_, this->z_, 0x01)};
  }

  // Checks Auth_s; accepts with K = H(M_u) or aborts.
  void on_ms2(const Ms2& msg) {
    this->require(Phase::kConfirmed, "user on_ms2");
    if (!group::scalar_from_bytes<G>(msg.auth_s)) {
      fail(AbortReason::kInvalidScalar);
      return;
    }
    const auto expected = detail::auth_tag<G>(this->transcript_, this->z_, 0x02);
    if (!equal_ct(expected, msg.auth_s)) {
      fail(AbortReason::kAuthMismatch);
      return;
    }
    this->key_ = detail::session_key(this->transcript_);
    this->phase_ = Phase::kAccepted;
  }

 private:
  std::nullopt_t fail(AbortReason r) {
    this->abort(r);
    return std::nullopt;
  }

  const pki::SystemParams<G>& params_;
  const pki::UserDeviceRecord<G>& device_;
};

// Service-provider role. `params` and `secret` must outlive the session.
template <group::PrimeOrderGroup G>
class SpSession : public SessionBase<G> {
  using Base = SessionBase<G>;

 public:
  SpSession(const pki::SystemParams<G>& params, const pki::SpSecret<G>& secret)
      : Base(Role::kServiceProvider), params_(params), secret_(secret) {}

  // Revocation is checked on the raw encoding before any exponentiation.
  std::optional<Ms1<G>> on_mu1(const Mu1<G>& msg, const pki::RevocationList* revocations,
                               Rng& rng) {
    this->require(Phase::kInit, "sp on_mu1");
    if (revocations && revocations->is_revoked(msg.com_u)) return fail(AbortReason::kRevoked);

    ByteWriter signed_part;
    signed_part.u64(msg.uid);
    signed_part.raw(msg.com_u);
    if (!params_.verifier().verify(signed_part.bytes(), msg.sigma_ru)) {
      return fail(AbortReason::kBadSignature);
    }
    const auto com_u = G::decode(msg.com_u);
    if (!com_u) return fail(AbortReason::kInvalidElement);

    uid_ = msg.uid;
    this->z_ = derive_z_sp<G>(secret_.gamma, *com_u);
    this->nonce_ = G::Scalar::random(rng);
    s_ = params_.a.pow(this->z_) * G::generator().pow(this->nonce_);
    this->phase_ = Phase::kAwaitingPeer;
    const auto& cred = secret_.credential;
    return Ms1<G>{cred.sid, cred.com_s.encode(), cred.h_gamma.encode(), cred.sigma, s_.encode()};
  }

  // Checks Auth_u; on success accepts with K = H(M_s) and returns m_s2.
  std::optional<Ms2> on_mu2(const Mu2<G>& msg) {
    this->require(Phase::kAwaitingPeer, "sp on_mu2");
    const auto u = G::decode(msg.u);
    if (!u) return fail(AbortReason::kInvalidElement);
    if (!group::scalar_from_bytes<G>(msg.auth_u)) return fail(AbortReason::kInvalidScalar);

    this->dh_ = (*u / params_.b.pow(this->z_)).pow(this->nonce_);
    this->transcript_ =
        detail::transcript<G>(secret_.credential.sid, uid_, s_, *u, this->dh_);
    const auto expected = detail::auth_tag<G>(this->transcript_, this->z_, 0x01);
    if (!equal_ct(expected, msg.auth_u)) return fail(AbortReason::kAuthMismatch);

    this->key_ = detail::session_key(this->transcript_);
    this->phase_ = Phase::kAccepted;
    return Ms2{detail::auth_tag<G>(this->transcript_, this->z_, 0x02)};
  }

  std::uint64_t peer_uid() const { return uid_; }

 private:
  std::nullopt_t fail(AbortReason r) {
    this->abort(r);
    return std::nullopt;
  }

  const pki::SystemParams<G>& params_;
  const pki::SpSecret<G>& secret_;
  std::uint64_t uid_ = 0;
  typename G::Element s_;
};

}  // namespace mfake::protocol
