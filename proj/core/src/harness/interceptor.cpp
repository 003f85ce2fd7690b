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

#include "mfake/harness/interceptor.hpp"

#include "mfake/error.hpp"
#include "mfake/harness/codec.hpp"

namespace mfake::harness {

std::string Action::describe() const {
  switch (kind) {
    case Kind::kPass:
      return "pass";
    case Kind::kDrop:
      return "drop";
    case Kind::kFlip:
      return "flip(offset=" + std::to_string(offset) + ",mask=0x" + to_hex(ByteSpan(&mask, 1)) + ")";
    case Kind::kReplace:
      return "replace(" + std::to_string(replacement.size()) + " bytes)";
    case Kind::kReplay:
      return "replay(" + std::to_string(replay_index) + ")";
  }
  return "?";
}

Interceptor& Interceptor::on(std::size_t index, Action action) {
  actions_[index] = std::move(action);
  return *this;
}

std::optional<Bytes> Interceptor::apply(std::size_t index, const std::vector<Bytes>& history) const {
  if (index >= history.size()) throw ParameterError("interceptor: frame not in history");
  const Bytes& frame = history[index];
  const auto it = actions_.find(index);
  if (it == actions_.end()) return frame;
  const Action& a = it->second;
  switch (a.kind) {
    case Action::Kind::kPass:
      return frame;
    case Action::Kind::kDrop:
      return std::nullopt;
    case Action::Kind::kFlip: {
      const std::size_t pos = kFrameHeaderBytes + a.offset;
      if (pos >= frame.size()) throw ParameterError("interceptor: flip offset beyond payload");
      Bytes out = frame;
      out[pos] ^= a.mask;
      return out;
    }
    case Action::Kind::kReplace:
      return a.replacement;
    case Action::Kind::kReplay:
      if (a.replay_index >= index) throw ParameterError("interceptor: can only replay earlier frames");
      return history[a.replay_index];
  }
  return frame;
}

}  // namespace mfake::harness
