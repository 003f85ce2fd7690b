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

#include "mfake/mffe/mffe.hpp"

namespace mfake::mffe {

std::vector<std::int32_t> int_keystream(const crypto::SymmetricKey& k, std::size_t n) {
  Bytes raw(n * 4);
  crypto::aes256_ctr_keystream(k, raw);
  std::vector<std::int32_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t u = std::uint32_t{raw[4 * i]} | std::uint32_t{raw[4 * i + 1]} << 8 |
                            std::uint32_t{raw[4 * i + 2]} << 16 |
                            std::uint32_t{raw[4 * i + 3]} << 24;
    out[i] = static_cast<std::int32_t>(u);
  }
  secure_zero(raw);
  return out;
}

std::vector<std::int64_t> stream_encrypt_ints(const crypto::SymmetricKey& k,
                                              std::span<const std::int64_t> v) {
  const auto s = int_keystream(k, v.size());
  std::vector<std::int64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] + s[i];
  return out;
}

std::vector<std::int64_t> stream_decrypt_ints(const crypto::SymmetricKey& k,
                                              std::span<const std::int64_t> e) {
  const auto s = int_keystream(k, e.size());
  std::vector<std::int64_t> out(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) out[i] = e[i] - s[i];
  return out;
}

}  // namespace mfake::mffe
