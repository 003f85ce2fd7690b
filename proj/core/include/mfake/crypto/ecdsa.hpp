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
#include <memory>

#include "mfake/bytes.hpp"
#include "mfake/rng.hpp"

namespace mfake::crypto {

// ECDSA over NIST P-256 with SHA-256. Signatures travel as fixed 64-byte
// r || s (big-endian), public keys as 65-byte uncompressed SEC1 points.
inline constexpr std::size_t kSignatureBytes = 64;
inline constexpr std::size_t kPublicKeyBytes = 65;
inline constexpr std::size_t kPrivateKeyBytes = 32;

using Signature = std::array<std::uint8_t, kSignatureBytes>;
using PublicKey = std::array<std::uint8_t, kPublicKeyBytes>;
using PrivateKey = std::array<std::uint8_t, kPrivateKeyBytes>;

class Verifier {
 public:
  // Throws DecodeError if `key` is not a valid P-256 point.
  explicit Verifier(const PublicKey& key);
  ~Verifier();
  Verifier(Verifier&&) noexcept;
  Verifier& operator=(Verifier&&) noexcept;

  bool verify(ByteSpan message, const Signature& sig) const;
  const PublicKey& public_key() const { return key_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  PublicKey key_{};
};

// Signing key. Nonces are derived deterministically from the private key and
// the message digest, so signing consumes no entropy and is reproducible.
class Signer {
 public:
  static Signer generate(Rng& rng);
  // Throws ParameterError unless 1 <= key < n.
  static Signer from_private_key(const PrivateKey& key);

  ~Signer();
  Signer(Signer&&) noexcept;
  Signer& operator=(Signer&&) noexcept;

  Signature sign(ByteSpan message) const;
  const PublicKey& public_key() const { return public_key_; }
  const PrivateKey& private_key() const { return private_key_; }
  Verifier verifier() const { return Verifier(public_key_); }

 private:
  explicit Signer(const PrivateKey& key);

  PrivateKey private_key_{};
  PublicKey public_key_{};
};

}  // namespace mfake::crypto
