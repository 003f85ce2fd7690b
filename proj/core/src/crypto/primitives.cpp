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

#include "mfake/crypto/primitives.hpp"

#include <openssl/evp.h>

#include <limits>

#include "mfake/error.hpp"

namespace mfake::crypto {

struct Sha3_256::Ctx {
  EVP_MD_CTX* md = nullptr;
  ~Ctx() { EVP_MD_CTX_free(md); }
};

Sha3_256::Sha3_256() : ctx_(std::make_unique<Ctx>()) {
  ctx_->md = EVP_MD_CTX_new();
  if (ctx_->md == nullptr || EVP_DigestInit_ex(ctx_->md, EVP_sha3_256(), nullptr) != 1) {
    throw CryptoError("SHA3-256 init failed");
  }
}

Sha3_256::~Sha3_256() = default;

Sha3_256& Sha3_256::update(ByteSpan data) {
  if (!data.empty() && EVP_DigestUpdate(ctx_->md, data.data(), data.size()) != 1) {
    throw CryptoError("SHA3-256 update failed");
  }
  return *this;
}

Digest256 Sha3_256::finish() {
  Digest256 out{};
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(ctx_->md, out.data(), &len) != 1 || len != out.size()) {
    throw CryptoError("SHA3-256 final failed");
  }
  return out;
}

Digest256 sha3_256(ByteSpan data) { return Sha3_256().update(data).finish(); }

void aes256_ctr_keystream(const SymmetricKey& key, std::span<std::uint8_t> out) {
  if (out.empty()) return;
  std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx(EVP_CIPHER_CTX_new(),
                                                                      &EVP_CIPHER_CTX_free);
  const std::array<std::uint8_t, 16> iv{};
  if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_ctr(), nullptr, key.data(), iv.data()) != 1) {
    throw CryptoError("AES-256-CTR init failed");
  }
  // Encrypting zeros yields the raw keystream.
  std::fill(out.begin(), out.end(), std::uint8_t{0});
  std::size_t done = 0;
  while (done < out.size()) {
    const auto chunk = static_cast<int>(
        std::min<std::size_t>(out.size() - done, std::numeric_limits<int>::max() / 2));
    int written = 0;
    if (EVP_EncryptUpdate(ctx.get(), out.data() + done, &written, out.data() + done, chunk) != 1) {
      throw CryptoError("AES-256-CTR update failed");
    }
    done += static_cast<std::size_t>(written);
  }
}

}  // namespace mfake::crypto
