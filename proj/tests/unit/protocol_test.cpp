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

#include "mfake/protocol/session.hpp"

#include <gtest/gtest.h>

#include <random>

namespace mfake::protocol {
namespace {

using G1 = group::Bls12381G1;

std::vector<double> random_template(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0, 2.0);
  std::vector<double> x(n);
  for (auto& v : x) v = g(rng);
  return x;
}

class ProtocolTest : public ::testing::Test {
 protected:
  static constexpr std::size_t kN = 16;

  ProtocolTest()
      : rng_(42),
        rc_(pki::rc_setup<G1>(kN, 0.254, rng_)),
        x0_(random_template(kN, rng_)),
        device_(pki::enroll_user<G1>(rc_, x0_, rng_)),
        sp_(pki::enroll_sp<G1>(rc_, rng_)) {}

  const pki::SystemParams<G1>& params() const { return rc_.params(); }

  struct Run {
    std::unique_ptr<UserSession<G1>> user;
    std::unique_ptr<SpSession<G1>> sp;
  };

  // Honest flow up to and including MU2 delivery.
  Run run_honest(const std::vector<double>& x1) {
    Run r{std::make_unique<UserSession<G1>>(params(), device_),
          std::make_unique<SpSession<G1>>(params(), sp_)};
    const auto mu1 = r.user->start();
    const auto ms1 = r.sp->on_mu1(mu1, nullptr, rng_);
    EXPECT_TRUE(ms1);
    const auto mu2 = r.user->on_ms1(*ms1, x1, nullptr, rng_);
    EXPECT_TRUE(mu2);
    const auto ms2 = r.sp->on_mu2(*mu2);
    if (ms2) r.user->on_ms2(*ms2);
    return r;
  }

  SeededRng rng_;
  pki::RcState<G1> rc_;
  std::vector<double> x0_;
  pki::UserDeviceRecord<G1> device_;
  pki::SpSecret<G1> sp_;
};

TEST_F(ProtocolTest, HonestRunAgreesOnKey) {
  const auto r = run_honest(x0_);
  ASSERT_TRUE(r.user->accepted());
  ASSERT_TRUE(r.sp->accepted());
  EXPECT_EQ(*r.user->session_key(), *r.sp->session_key());
  EXPECT_EQ(r.user->long_term_secret(), r.sp->long_term_secret());
  const auto expected = G1::generator().pow(r.user->nonce() * r.sp->nonce());
  EXPECT_TRUE(r.user->dh_value() == expected);
  EXPECT_TRUE(r.sp->dh_value() == expected);
  EXPECT_EQ(r.sp->peer_uid(), device_.uid);
}

TEST_F(ProtocolTest, SessionsAreFresh) {
  const auto a = run_honest(x0_);
  const auto b = run_honest(x0_);
  ASSERT_TRUE(a.user->accepted() && b.user->accepted());
  EXPECT_NE(*a.user->session_key(), *b.user->session_key());
}

TEST_F(ProtocolTest, LongTermSecretAgreement) {
  const auto beta = mffe::rep<G1>(params().mffe, x0_, device_.alpha, device_.sketch);
  const auto zu = derive_z_user<G1>(device_.alpha, beta.beta, sp_.credential.com_s,
                                    sp_.credential.h_gamma);
  EXPECT_EQ(zu, derive_z_sp<G1>(sp_.gamma, device_.credential.com_u));

  auto alpha = device_.alpha;
  for (int t = 0; t < 100; ++t) {
    alpha = alpha + G1::Scalar::one();
    EXPECT_NE(derive_z_user<G1>(alpha, beta.beta, sp_.credential.com_s, sp_.credential.h_gamma),
              zu);
  }
  EXPECT_EQ(derive_z_user<G1>(device_.alpha, G1::Scalar::zero(), sp_.credential.com_s,
                              sp_.credential.h_gamma),
            group::hash_to_scalar<G1>(sp_.credential.com_s.pow(device_.alpha)));
  EXPECT_EQ(derive_z_sp<G1>(sp_.gamma, G1::identity()), group::hash_to_scalar<G1>(G1::identity()));
}

TEST_F(ProtocolTest, Mu1IsDeterministicAndKeyless) {
  UserSession<G1> a(params(), device_), b(params(), device_);
  EXPECT_EQ(a.start(), b.start());
  EXPECT_EQ(a.phase(), Phase::kAwaitingPeer);
  EXPECT_FALSE(a.session_key());
}

TEST_F(ProtocolTest, PhaseGuards) {
  UserSession<G1> user(params(), device_);
  SpSession<G1> sp(params(), sp_);
  EXPECT_THROW(user.on_ms2(Ms2{}), ProtocolStateError);
  EXPECT_THROW(sp.on_mu2(Mu2<G1>{}), ProtocolStateError);
  const auto mu1 = user.start();
  EXPECT_THROW(user.start(), ProtocolStateError);
  const auto ms1 = sp.on_mu1(mu1, nullptr, rng_);
  EXPECT_THROW(sp.on_mu1(mu1, nullptr, rng_), ProtocolStateError);
  const auto mu2 = user.on_ms1(*ms1, x0_, nullptr, rng_);
  EXPECT_EQ(user.phase(), Phase::kConfirmed);
  EXPECT_THROW(user.on_ms1(*ms1, x0_, nullptr, rng_), ProtocolStateError);
  const auto ms2 = sp.on_mu2(*mu2);
  user.on_ms2(*ms2);
  EXPECT_THROW(user.on_ms2(*ms2), ProtocolStateError);
  EXPECT_THROW(user.on_ms1(*ms1, std::vector<double>(3), nullptr, rng_), ProtocolStateError);
}

TEST_F(ProtocolTest, TamperedSpSignatureAborts) {
  UserSession<G1> user(params(), device_);
  SpSession<G1> sp(params(), sp_);
  auto ms1 = *sp.on_mu1(user.start(), nullptr, rng_);
  ms1.sigma_rs[10] ^= 0x01;
  EXPECT_FALSE(user.on_ms1(ms1, x0_, nullptr, rng_));
  EXPECT_EQ(user.phase(), Phase::kAborted);
  EXPECT_EQ(user.abort_reason(), AbortReason::kBadSignature);
  EXPECT_THROW(user.on_ms2(Ms2{}), ProtocolStateError);
}

TEST_F(ProtocolTest, TamperedAuthTagsAbort) {
  {
    UserSession<G1> user(params(), device_);
    SpSession<G1> sp(params(), sp_);
    const auto ms1 = *sp.on_mu1(user.start(), nullptr, rng_);
    auto mu2 = *user.on_ms1(ms1, x0_, nullptr, rng_);
    mu2.auth_u[31] ^= 0x01;
    EXPECT_FALSE(sp.on_mu2(mu2));
    EXPECT_EQ(sp.abort_reason(), AbortReason::kAuthMismatch);
    EXPECT_FALSE(sp.session_key());
    EXPECT_TRUE(sp.nonce().is_zero());
    EXPECT_TRUE(sp.long_term_secret().is_zero());
  }
  {
    UserSession<G1> user(params(), device_);
    SpSession<G1> sp(params(), sp_);
    const auto ms1 = *sp.on_mu1(user.start(), nullptr, rng_);
    const auto mu2 = *user.on_ms1(ms1, x0_, nullptr, rng_);
    auto ms2 = *sp.on_mu2(mu2);
    ms2.auth_s[0] ^= 0x01;
    user.on_ms2(ms2);
    EXPECT_EQ(user.phase(), Phase::kAborted);
    EXPECT_FALSE(user.session_key());
  }
}

TEST_F(ProtocolTest, RevokedUserRejected) {
  pki::RevocationList list;
  list.revoke(device_.credential.com_u.encode());
  UserSession<G1> user(params(), device_);
  SpSession<G1> sp(params(), sp_);
  EXPECT_FALSE(sp.on_mu1(user.start(), &list, rng_));
  EXPECT_EQ(sp.abort_reason(), AbortReason::kRevoked);
}

TEST_F(ProtocolTest, ForeignRcCredentialRejected) {
  auto other_rc = pki::rc_setup<G1>(kN, 0.254, rng_);
  const auto foreign = pki::enroll_user<G1>(other_rc, x0_, rng_);
  UserSession<G1> user(params(), foreign);
  SpSession<G1> sp(params(), sp_);
  EXPECT_FALSE(sp.on_mu1(user.start(), nullptr, rng_));
  EXPECT_EQ(sp.abort_reason(), AbortReason::kBadSignature);
}

TEST_F(ProtocolTest, WrongFactorsAbortAtSp) {
  auto wrong_alpha = device_;
  wrong_alpha.alpha = wrong_alpha.alpha + G1::Scalar::one();
  for (int t = 0; t < 5; ++t) {
    UserSession<G1> user(params(), wrong_alpha);
    SpSession<G1> sp(params(), sp_);
    const auto ms1 = *sp.on_mu1(user.start(), nullptr, rng_);
    EXPECT_FALSE(sp.on_mu2(*user.on_ms1(ms1, x0_, nullptr, rng_)));
    EXPECT_EQ(sp.abort_reason(), AbortReason::kAuthMismatch);
  }
  const auto stranger = random_template(kN, rng_);
  ASSERT_FALSE(lattice::in_acceptance_region(params().mffe.basis, x0_, stranger));
  UserSession<G1> user(params(), device_);
  SpSession<G1> sp(params(), sp_);
  const auto ms1 = *sp.on_mu1(user.start(), nullptr, rng_);
  EXPECT_FALSE(sp.on_mu2(*user.on_ms1(ms1, stranger, nullptr, rng_)));
  EXPECT_EQ(sp.abort_reason(), AbortReason::kAuthMismatch);
}

TEST_F(ProtocolTest, InvalidElementsAbort) {
  UserSession<G1> user(params(), device_);
  SpSession<G1> sp(params(), sp_);
  auto ms1 = *sp.on_mu1(user.start(), nullptr, rng_);
  ms1.s[47] ^= 0x01;  // almost surely off the curve or out of the subgroup
  const auto mu2 = user.on_ms1(ms1, x0_, nullptr, rng_);
  if (mu2) {
    EXPECT_FALSE(sp.on_mu2(*mu2));
  } else {
    EXPECT_EQ(user.abort_reason(), AbortReason::kInvalidElement);
  }
}

}  // namespace
}  // namespace mfake::protocol
