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

#include <filesystem>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>

#include "mfake/bytes.hpp"

namespace mfake::pki {

// Set of revoked identity commitments (compressed encodings). When bound to a
// file, every change rewrites it atomically as newline-delimited hex.
class RevocationList {
 public:
  RevocationList() = default;
  // Moves are not synchronized; do not move a list other threads can see.
  RevocationList(RevocationList&& other) noexcept
      : entries_(std::move(other.entries_)), path_(std::move(other.path_)) {}
  RevocationList& operator=(RevocationList&& other) noexcept {
    entries_ = std::move(other.entries_);
    path_ = std::move(other.path_);
    return *this;
  }

  // A missing file loads as an empty list bound to that path.
  static RevocationList load(const std::filesystem::path& path);

  // Returns true if the entry was new. Persists before returning.
  bool revoke(ByteSpan com_u);
  bool is_revoked(ByteSpan com_u) const;
  std::size_t size() const;
  void save() const;

  const std::optional<std::filesystem::path>& path() const { return path_; }

 private:
  void save_locked() const;

  mutable std::shared_mutex mu_;
  std::set<std::string> entries_;
  std::optional<std::filesystem::path> path_;
};

}  // namespace mfake::pki
