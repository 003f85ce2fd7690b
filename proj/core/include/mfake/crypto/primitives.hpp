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
#include <optional>
#include <span>

#include "mfake/bytes.hpp"

namespace mfake::crypto {

using Digest256 = std::array<std::uint8_t, 32>;
using SymmetricKey = std::array<std::uint8_t, 32>;

// Incremental SHA3-256.
class Sha3_256 {
 public:
  Sha3_256();
  ~Sha3_256();
  Sha3_256(const Sha3_256&) = delete;
  Sha3_256& operator=(const Sha3_256&) = delete;

  Sha3_256& update(ByteSpan data);
  Sha3_256& update(std::uint8_t byte) { return update(ByteSpan(&byte, 1)); }
  Digest256 finish();

 private:
  struct Ctx;
  std::unique_ptr<Ctx> ctx_;
};

Digest256 sha3_256(ByteSpan data);

// Writes AES-256-CTR keystream (zero IV, counter starting at 0) into `out`.
void aes256_ctr_keystream(const SymmetricKey& key, std::span<std::uint8_t> out);

}  // namespace mfake::crypto
