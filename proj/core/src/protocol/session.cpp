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

#include "mfake/protocol/session.hpp"

namespace mfake::protocol {

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::kInit:
      return "init";
    case Phase::kAwaitingPeer:
      return "awaiting-peer";
    case Phase::kConfirmed:
      return "confirmed";
    case Phase::kAccepted:
      return "accepted";
    case Phase::kAborted:
      return "aborted";
  }
  return "unknown";
}

std::string_view abort_reason_name(AbortReason r) {
  switch (r) {
    case AbortReason::kNone:
      return "none";
    case AbortReason::kBadSignature:
      return "bad-signature";
    case AbortReason::kRevoked:
      return "revoked";
    case AbortReason::kInvalidElement:
      return "invalid-element";
    case AbortReason::kInvalidScalar:
      return "invalid-scalar";
    case AbortReason::kAuthMismatch:
      return "auth-mismatch";
    case AbortReason::kUnexpectedMessage:
      return "unexpected-message";
    case AbortReason::kMalformed:
      return "malformed";
    case AbortReason::kTimeout:
      return "timeout";
  }
  return "unknown";
}

}  // namespace mfake::protocol
