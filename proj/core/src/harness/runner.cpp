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

#include "mfake/harness/runner.hpp"

namespace mfake::harness {

std::string_view stop_point_name(StopPoint s) {
  switch (s) {
    case StopPoint::kCompleted:
      return "completed";
    case StopPoint::kUserAborted:
      return "user-aborted";
    case StopPoint::kSpAborted:
      return "sp-aborted";
    case StopPoint::kMessageLost:
      return "message-lost";
    case StopPoint::kTransportError:
      return "transport-error";
  }
  return "unknown";
}

}  // namespace mfake::harness
