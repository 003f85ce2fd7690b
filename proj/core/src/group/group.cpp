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

#include "mfake/group/group.hpp"

#include <string>

namespace mfake::group {

std::string_view group_name(GroupId id) {
  switch (id) {
    case GroupId::kBls12381G1:
      return Bls12381G1::kName;
    case GroupId::kToy101:
      return ToyGroup101::kName;
  }
  throw ParameterError("unknown group id");
}

GroupId parse_group_id(std::string_view name) {
  if (name == Bls12381G1::kName || name == "bls12-381") return GroupId::kBls12381G1;
  if (name == ToyGroup101::kName) return GroupId::kToy101;
  throw ParameterError("unsupported group: " + std::string(name));
}

GroupId group_id_from_byte(std::uint8_t b) {
  switch (b) {
    case static_cast<std::uint8_t>(GroupId::kBls12381G1):
      return GroupId::kBls12381G1;
    case static_cast<std::uint8_t>(GroupId::kToy101):
      return GroupId::kToy101;
    default:
      throw ParameterError("unsupported group id byte " + std::to_string(b));
  }
}

}  // namespace mfake::group
