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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mfake/bytes.hpp"

namespace mfake::harness {

// What the adversary does to the i-th frame of a session (0 = MU1 ... 3 = MS2).
struct Action {
  enum class Kind { kPass, kDrop, kFlip, kReplace, kReplay };

  Kind kind = Kind::kPass;
  std::size_t offset = 0;        // kFlip: byte offset into the payload
  std::uint8_t mask = 0;         // kFlip: xor mask
  Bytes replacement;             // kReplace: entire frame, header included
  std::size_t replay_index = 0;  // kReplay: deliver this earlier frame instead

  static Action pass() { return {}; }
  static Action drop() { return {Kind::kDrop, 0, 0, {}, 0}; }
  static Action flip(std::size_t offset, std::uint8_t mask = 0x01) {
    return {Kind::kFlip, offset, mask, {}, 0};
  }
  static Action replace(Bytes frame) { return {Kind::kReplace, 0, 0, std::move(frame), 0}; }
  static Action replay(std::size_t index) { return {Kind::kReplay, 0, 0, {}, index}; }

  std::string describe() const;
};

// Deterministic per-index rewriting of frames in flight.
class Interceptor {
 public:
  Interceptor& on(std::size_t index, Action action);

  // `history` holds the frames as originally sent, including this one at
  // position `index`. Returns nullopt for a drop. Throws ParameterError for
  // an action that cannot apply (flip past the payload, replay of the future).
  std::optional<Bytes> apply(std::size_t index, const std::vector<Bytes>& history) const;

  bool empty() const { return actions_.empty(); }

 private:
  std::map<std::size_t, Action> actions_;
};

}  // namespace mfake::harness
