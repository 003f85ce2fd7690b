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

#include "mfake/crypto/ecdsa.hpp"

#include <openssl/bn.h>
#include <openssl/core_names.h>
#include <openssl/ec.h>
#include <openssl/evp.h>
#include <openssl/obj_mac.h>
#include <openssl/param_build.h>

#include "mfake/crypto/primitives.hpp"
#include "mfake/error.hpp"

namespace mfake::crypto {
namespace {

template <auto Fn>
struct Deleter {
  template <class T>
  void operator()(T* p) const { Fn(p); }
};

using BnPtr = std::unique_ptr<BIGNUM, Deleter<BN_clear_free>>;
using BnCtxPtr = std::unique_ptr<BN_CTX, Deleter<BN_CTX_free>>;
using GroupPtr = std::unique_ptr<EC_GROUP, Deleter<EC_GROUP_free>>;
using PointPtr = std::unique_ptr<EC_POINT, Deleter<EC_POINT_free>>;
using SigPtr = std::unique_ptr<ECDSA_SIG, Deleter<ECDSA_SIG_free>>;
using PkeyPtr = std::unique_ptr<EVP_PKEY, Deleter<EVP_PKEY_free>>;
using PkeyCtxPtr = std::unique_ptr<EVP_PKEY_CTX, Deleter<EVP_PKEY_CTX_free>>;
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, Deleter<EVP_MD_CTX_free>>;
using ParamBldPtr = std::unique_ptr<OSSL_PARAM_BLD, Deleter<OSSL_PARAM_BLD_free>>;
using ParamPtr = std::unique_ptr<OSSL_PARAM, Deleter<OSSL_PARAM_free>>;

struct OpensslFree {
  void operator()(unsigned char* p) const { OPENSSL_free(p); }
};

constexpr const char* kCurveName = "prime256v1";

void check(bool ok, const char* what) {
  if (!ok) throw CryptoError(what);
}

BnPtr bn_from(ByteSpan bytes) {
  BnPtr bn(BN_bin2bn(bytes.data(), static_cast<int>(bytes.size()), nullptr));
  check(bn != nullptr, "BN_bin2bn failed");
  return bn;
}

template <std::size_t N>
std::array<std::uint8_t, N> bn_to(const BIGNUM* bn) {
  std::array<std::uint8_t, N> out{};
  check(BN_bn2binpad(bn, out.data(), static_cast<int>(N)) == static_cast<int>(N),
        "BN_bn2binpad failed");
  return out;
}

struct Curve {
  GroupPtr group{EC_GROUP_new_by_curve_name(NID_X9_62_prime256v1)};
  Curve() { check(group != nullptr, "P-256 unavailable"); }
  const BIGNUM* order() const { return EC_GROUP_get0_order(group.get()); }
};

const Curve& curve() {
  static const Curve c;
  return c;
}

Digest256 sha256(ByteSpan message) {
  Digest256 out{};
  unsigned int len = 0;
  check(EVP_Digest(message.data(), message.size(), out.data(), &len, EVP_sha256(), nullptr) == 1,
        "SHA-256 failed");
  return out;
}

std::array<std::uint8_t, 64> sha512(ByteSpan message) {
  std::array<std::uint8_t, 64> out{};
  unsigned int len = 0;
  check(EVP_Digest(message.data(), message.size(), out.data(), &len, EVP_sha512(), nullptr) == 1,
        "SHA-512 failed");
  return out;
}

}  // namespace

struct Verifier::Impl {
  PkeyPtr pkey;
};

Verifier::Verifier(const PublicKey& key) : impl_(std::make_unique<Impl>()), key_(key) {
  ParamBldPtr bld(OSSL_PARAM_BLD_new());
  check(bld != nullptr, "OSSL_PARAM_BLD_new failed");
  check(OSSL_PARAM_BLD_push_utf8_string(bld.get(), OSSL_PKEY_PARAM_GROUP_NAME, kCurveName, 0) == 1 &&
            OSSL_PARAM_BLD_push_octet_string(bld.get(), OSSL_PKEY_PARAM_PUB_KEY, key.data(),
                                             key.size()) == 1,
        "OSSL_PARAM_BLD push failed");
  ParamPtr params(OSSL_PARAM_BLD_to_param(bld.get()));
  PkeyCtxPtr ctx(EVP_PKEY_CTX_new_from_name(nullptr, "EC", nullptr));
  check(params != nullptr && ctx != nullptr, "EVP_PKEY_CTX setup failed");
  EVP_PKEY* raw = nullptr;
  if (EVP_PKEY_fromdata_init(ctx.get()) != 1 ||
      EVP_PKEY_fromdata(ctx.get(), &raw, EVP_PKEY_PUBLIC_KEY, params.get()) != 1) {
    throw DecodeError("invalid ECDSA public key");
  }
  impl_->pkey.reset(raw);
  // fromdata does not validate the point; do it explicitly.
  PkeyCtxPtr check_ctx(EVP_PKEY_CTX_new_from_pkey(nullptr, raw, nullptr));
  if (!check_ctx || EVP_PKEY_public_check(check_ctx.get()) != 1) {
    throw DecodeError("ECDSA public key is not on P-256");
  }
}

Verifier::~Verifier() = default;
Verifier::Verifier(Verifier&&) noexcept = default;
Verifier& Verifier::operator=(Verifier&&) noexcept = default;

bool Verifier::verify(ByteSpan message, const Signature& sig) const {
  SigPtr ecsig(ECDSA_SIG_new());
  check(ecsig != nullptr, "ECDSA_SIG_new failed");
  BIGNUM* r = BN_bin2bn(sig.data(), 32, nullptr);
  BIGNUM* s = BN_bin2bn(sig.data() + 32, 32, nullptr);
  if (r == nullptr || s == nullptr || ECDSA_SIG_set0(ecsig.get(), r, s) != 1) {
    BN_free(r);
    BN_free(s);
    throw CryptoError("ECDSA_SIG_set0 failed");
  }
  unsigned char* der = nullptr;
  const int der_len = i2d_ECDSA_SIG(ecsig.get(), &der);
  check(der_len > 0, "i2d_ECDSA_SIG failed");
  std::unique_ptr<unsigned char, OpensslFree> der_owner(der);

  MdCtxPtr md(EVP_MD_CTX_new());
  check(md != nullptr, "EVP_MD_CTX_new failed");
  check(EVP_DigestVerifyInit(md.get(), nullptr, EVP_sha256(), nullptr, impl_->pkey.get()) == 1,
        "EVP_DigestVerifyInit failed");
  return EVP_DigestVerify(md.get(), der, static_cast<std::size_t>(der_len), message.data(),
                          message.size()) == 1;
}

Signer::Signer(const PrivateKey& key) : private_key_(key) {
  const auto& c = curve();
  BnPtr d = bn_from(key);
  if (BN_is_zero(d.get()) || BN_cmp(d.get(), c.order()) >= 0) {
    throw ParameterError("ECDSA private key out of range");
  }
  BnCtxPtr bctx(BN_CTX_new());
  PointPtr pub(EC_POINT_new(c.group.get()));
  check(bctx && pub, "allocation failed");
  check(EC_POINT_mul(c.group.get(), pub.get(), d.get(), nullptr, nullptr, bctx.get()) == 1,
        "EC_POINT_mul failed");
  check(EC_POINT_point2oct(c.group.get(), pub.get(), POINT_CONVERSION_UNCOMPRESSED,
                           public_key_.data(), public_key_.size(), bctx.get()) == public_key_.size(),
        "EC_POINT_point2oct failed");
}

Signer Signer::generate(Rng& rng) {
  const auto& c = curve();
  for (;;) {
    PrivateKey candidate{};
    rng.fill(candidate);
    BnPtr d = bn_from(candidate);
    if (!BN_is_zero(d.get()) && BN_cmp(d.get(), c.order()) < 0) {
      Signer s(candidate);
      secure_zero(candidate);
      return s;
    }
  }
}

Signer Signer::from_private_key(const PrivateKey& key) { return Signer(key); }

Signer::~Signer() { secure_zero(private_key_); }
Signer::Signer(Signer&&) noexcept = default;
Signer& Signer::operator=(Signer&&) noexcept = default;

Signature Signer::sign(ByteSpan message) const {
  const auto& c = curve();
  const Digest256 digest = sha256(message);
  BnCtxPtr bctx(BN_CTX_new());
  check(bctx != nullptr, "BN_CTX_new failed");
  BnPtr e = bn_from(digest);
  BnPtr d = bn_from(private_key_);
  BnPtr k(BN_new()), kinv(BN_new()), r(BN_new()), s(BN_new()), x(BN_new()), tmp(BN_new());
  PointPtr kg(EC_POINT_new(c.group.get()));
  check(k && kinv && r && s && x && tmp && kg, "allocation failed");

  for (std::uint32_t counter = 0;; ++counter) {
    // k = SHA-512(d || H(m) || counter) mod n
    ByteWriter w;
    w.raw(private_key_);
    w.raw(digest);
    w.u32(counter);
    auto wide = sha512(w.bytes());
    BnPtr kwide = bn_from(wide);
    secure_zero(wide);
    check(BN_nnmod(k.get(), kwide.get(), c.order(), bctx.get()) == 1, "BN_nnmod failed");
    if (BN_is_zero(k.get())) continue;

    check(EC_POINT_mul(c.group.get(), kg.get(), k.get(), nullptr, nullptr, bctx.get()) == 1,
          "EC_POINT_mul failed");
    check(EC_POINT_get_affine_coordinates(c.group.get(), kg.get(), x.get(), nullptr, bctx.get()) == 1,
          "EC_POINT_get_affine_coordinates failed");
    check(BN_nnmod(r.get(), x.get(), c.order(), bctx.get()) == 1, "BN_nnmod failed");
    if (BN_is_zero(r.get())) continue;

    // s = k^-1 (e + r d) mod n
    check(BN_mod_inverse(kinv.get(), k.get(), c.order(), bctx.get()) != nullptr,
          "BN_mod_inverse failed");
    check(BN_mod_mul(tmp.get(), r.get(), d.get(), c.order(), bctx.get()) == 1 &&
              BN_mod_add(tmp.get(), tmp.get(), e.get(), c.order(), bctx.get()) == 1 &&
              BN_mod_mul(s.get(), kinv.get(), tmp.get(), c.order(), bctx.get()) == 1,
          "BN modular arithmetic failed");
    if (BN_is_zero(s.get())) continue;

    Signature sig{};
    const auto rb = bn_to<32>(r.get());
    const auto sb = bn_to<32>(s.get());
    std::copy(rb.begin(), rb.end(), sig.begin());
    std::copy(sb.begin(), sb.end(), sig.begin() + 32);
    return sig;
  }
}

}  // namespace mfake::crypto
