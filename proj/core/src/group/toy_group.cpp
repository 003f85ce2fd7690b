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

#include "mfake/group/toy_group.hpp"

#include "mfake/crypto/primitives.hpp"

namespace mfake::group {

std::optional<ToyGroup101::Element> ToyGroup101::from_value(std::uint64_t v) {
  if (v == 0 || v >= kModulus) return std::nullopt;
  const Base b = Base::from_u64(v);
  const limbs::Limbs<1> order = {kOrder};
  if (!(b.pow(order) == Base::one())) return std::nullopt;
  return Element(b);
}

const ToyGroup101::Element& ToyGroup101::generator() {
  // 2^6 mod 607 = 64 has order 101.
  static const Element g = *from_value(64);
  return g;
}

std::optional<ToyGroup101::Element> ToyGroup101::decode(ByteSpan bytes) {
  if (bytes.size() != kElementBytes) return std::nullopt;
  return from_value((static_cast<std::uint64_t>(bytes[0]) << 8) | bytes[1]);
}

ToyGroup101::Element ToyGroup101::hash_to_group(std::string_view domain_tag) {
  const limbs::Limbs<1> cofactor = {(kModulus - 1) / kOrder};
  for (std::uint32_t counter = 0;; ++counter) {
    ByteWriter w;
    w.raw(as_bytes("mfake/hash-to-toy/v1"));
    w.u8(0);
    w.raw(as_bytes(domain_tag));
    w.u32(counter);
    const auto d = crypto::sha3_256(w.bytes());
    const Base x = Base::from_bytes_reduce(d);
    if (x.is_zero()) continue;
    const Element e(x.pow(cofactor));
    if (!e.is_identity()) return e;
  }
}

}  // namespace mfake::group
