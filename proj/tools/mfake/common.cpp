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

#include "common.hpp"

#include <charconv>
#include <random>

#include "mfake/biosim/biosim.hpp"
#include "mfake/bytes.hpp"

namespace mfake::cli {

std::unique_ptr<Rng> RngSource::make(const std::string& label) const {
  if (seed_) return std::make_unique<SeededRng>(*seed_, "mfake/cli/" + label);
  return std::make_unique<SystemRng>();
}

std::string fingerprint(const protocol::SessionKey& key, bool unsafe_full) {
  const ByteSpan all(key);
  return to_hex(unsafe_full ? all : all.first(8));
}

std::vector<double> load_reading(const fs::path& csv, const std::string& label) {
  const auto rows = biosim::load_features_csv(csv);
  for (const auto& row : rows) {
    if (label.empty() || row.label == label) return row.values;
  }
  if (label.empty()) throw DecodeError(csv.string() + ": no feature rows");
  throw DecodeError(csv.string() + ": no row labelled '" + label + "'");
}

std::vector<double> add_noise(std::vector<double> x, double sigma, Rng& rng) {
  if (sigma < 0) throw ParameterError("noise sigma must be non-negative");
  if (sigma == 0) return x;
  std::normal_distribution<double> noise(0.0, sigma);
  for (auto& v : x) v += noise(rng);
  return x;
}

HostPort parse_host_port(const std::string& s) {
  const auto colon = s.rfind(':');
  if (colon == std::string::npos) throw ParameterError("expected HOST:PORT, got '" + s + "'");
  HostPort hp{s.substr(0, colon), 0};
  const char* first = s.data() + colon + 1;
  const char* last = s.data() + s.size();
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last || value > 65535) {
    throw ParameterError("bad port in '" + s + "'");
  }
  hp.port = static_cast<std::uint16_t>(value);
  if (hp.host.empty()) hp.host = "127.0.0.1";
  return hp;
}

}  // namespace mfake::cli
