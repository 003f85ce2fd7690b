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

#include "mfake/rng.hpp"

#include <openssl/rand.h>

#include <cstring>

#include "mfake/bytes.hpp"
#include "mfake/crypto/primitives.hpp"
#include "mfake/error.hpp"

namespace mfake {

Rng::result_type Rng::operator()() {
  std::array<std::uint8_t, 8> b{};
  fill(b);
  result_type v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v;
}

void SystemRng::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw CryptoError("RAND_bytes failed");
  }
}

struct SeededRng::Cipher {
  crypto::SymmetricKey key{};
  std::uint64_t block = 0;
};

SeededRng::SeededRng(std::uint64_t seed, std::string_view label)
    : cipher_(std::make_unique<Cipher>()) {
  ByteWriter w;
  w.raw(as_bytes(label));
  w.u8(0);
  w.u64(seed);
  cipher_->key = crypto::sha3_256(w.bytes());
}

SeededRng::~SeededRng() {
  if (cipher_) secure_zero(cipher_->key);
  secure_zero(buffer_);
}

SeededRng::SeededRng(SeededRng&&) noexcept = default;
SeededRng& SeededRng::operator=(SeededRng&&) noexcept = default;

void SeededRng::refill() {
  // Each refill keys a fresh CTR stream on (key, block index) so the output is
  // one long keystream without keeping an OpenSSL context alive.
  ByteWriter w;
  w.raw(cipher_->key);
  w.u64(cipher_->block++);
  const crypto::SymmetricKey block_key = crypto::sha3_256(w.bytes());
  crypto::aes256_ctr_keystream(block_key, buffer_);
  pos_ = 0;
}

void SeededRng::fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (pos_ == buffer_.size()) refill();
    const std::size_t n = std::min(out.size() - done, buffer_.size() - pos_);
    std::memcpy(out.data() + done, buffer_.data() + pos_, n);
    pos_ += n;
    done += n;
  }
}

}  // namespace mfake
