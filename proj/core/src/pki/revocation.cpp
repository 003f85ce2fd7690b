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

#include "mfake/pki/revocation.hpp"

#include <mutex>
#include <sstream>

#include "mfake/io.hpp"

namespace mfake::pki {

RevocationList RevocationList::load(const std::filesystem::path& path) {
  RevocationList list;
  list.path_ = path;
  if (!std::filesystem::exists(path)) return list;
  const auto raw = read_file(path);
  std::istringstream in(std::string(raw.begin(), raw.end()));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      list.entries_.insert(to_hex(from_hex(line)));  // normalizes case
    } catch (const DecodeError&) {
      throw DecodeError(path.string() + ":" + std::to_string(line_no) + ": bad hex entry");
    }
  }
  return list;
}

bool RevocationList::revoke(ByteSpan com_u) {
  std::unique_lock lock(mu_);
  const auto [it, added] = entries_.insert(to_hex(com_u));
  if (added && path_) {
    try {
      save_locked();
    } catch (...) {
      entries_.erase(it);  // keep memory and disk in agreement
      throw;
    }
  }
  return added;
}

bool RevocationList::is_revoked(ByteSpan com_u) const {
  std::shared_lock lock(mu_);
  return entries_.contains(to_hex(com_u));
}

std::size_t RevocationList::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

void RevocationList::save() const {
  std::shared_lock lock(mu_);
  save_locked();
}

void RevocationList::save_locked() const {
  if (!path_) throw IoError("revocation list has no backing file");
  std::string text;
  for (const auto& e : entries_) text += e + "\n";
  write_file_atomic(*path_, as_bytes(text));
}

}  // namespace mfake::pki
