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
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mfake/group/group.hpp"
#include "mfake/protocol/session.hpp"
#include "mfake/rng.hpp"

namespace mfake::cli {

namespace fs = std::filesystem;

// Exit codes. Parse errors use CLI11's own codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRejected = 1;  // protocol abort, failed check
inline constexpr int kExitError = 2;     // bad input, I/O, crypto failure

// Without a seed every stream comes from the OS. With a seed each purpose
// gets its own labelled stream, so adding draws in one place does not shift
// the others.
class RngSource {
 public:
  explicit RngSource(std::optional<std::uint64_t> seed) : seed_(seed) {}
  std::unique_ptr<Rng> make(const std::string& label) const;
  bool seeded() const { return seed_.has_value(); }

 private:
  std::optional<std::uint64_t> seed_;
};

// Files inside an RC directory.
struct RcDir {
  fs::path root;
  fs::path params() const { return root / "params.bin"; }
  fs::path state() const { return root / "rc.state"; }
  fs::path revoked() const { return root / "revoked.txt"; }
};

std::string fingerprint(const protocol::SessionKey& key, bool unsafe_full);

// First row (optionally the first with a given label) of a feature CSV.
std::vector<double> load_reading(const fs::path& csv, const std::string& label);

std::vector<double> add_noise(std::vector<double> x, double sigma, Rng& rng);

struct HostPort {
  std::string host;
  std::uint16_t port = 0;
};
HostPort parse_host_port(const std::string& s);

// Calls f.template operator()<G>() for the group named by id.
template <class F>
decltype(auto) with_group(group::GroupId id, F&& f) {
  switch (id) {
    case group::GroupId::kBls12381G1:
      return f.template operator()<group::Bls12381G1>();
    case group::GroupId::kToy101:
      return f.template operator()<group::ToyGroup101>();
  }
  throw ParameterError("unknown group");
}

}  // namespace mfake::cli
