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

#include "mfake/pki/pki.hpp"

namespace mfake::pki {

group::GroupId peek_group(ByteSpan file_bytes) {
  ByteReader r(file_bytes);
  if (r.u8() != kFormatVersion) throw DecodeError("unsupported file version");
  try {
    return group::group_id_from_byte(r.u8());
  } catch (const ParameterError& e) {
    throw DecodeError(e.what());
  }
}

}  // namespace mfake::pki
