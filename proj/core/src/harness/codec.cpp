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

#include "mfake/harness/codec.hpp"

namespace mfake::harness {

std::size_t mutual_auth_bytes(const SizeParams& p) {
  return (5 * p.element_bits + 2 * p.scalar_bits + 2 * p.signature_bits + 2 * p.id_bits) / 8;
}

std::size_t unilateral_auth_bytes(const SizeParams& p) {
  return (5 * p.element_bits + p.scalar_bits + p.signature_bits + p.id_bits) / 8;
}

}  // namespace mfake::harness
