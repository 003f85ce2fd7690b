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

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string_view>

namespace mfake {

// Injected entropy source. Satisfies std::uniform_random_bit_generator so it
// can drive the <random> distributions used by the biometric simulator.
class Rng {
 public:
  using result_type = std::uint64_t;

  virtual ~Rng() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();
};

// Operating-system entropy via the OpenSSL DRBG.
class SystemRng final : public Rng {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

// Deterministic stream: AES-256-CTR keyed by SHA3-256(label || seed). Distinct
// labels under one seed give independent streams; this is what `--seed` drives.
class SeededRng final : public Rng {
 public:
  explicit SeededRng(std::uint64_t seed, std::string_view label = "mfake/rng/v1");
  ~SeededRng() override;
  SeededRng(const SeededRng&) = delete;
  SeededRng& operator=(const SeededRng&) = delete;
  SeededRng(SeededRng&&) noexcept;
  SeededRng& operator=(SeededRng&&) noexcept;

  void fill(std::span<std::uint8_t> out) override;

 private:
  void refill();

  struct Cipher;
  std::unique_ptr<Cipher> cipher_;
  std::array<std::uint8_t, 4096> buffer_{};
  std::size_t pos_ = 4096;
};

}  // namespace mfake
