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

#include <stdexcept>
#include <string>

namespace mfake {

// Base for every exception thrown by the library. Protocol aborts are not
// exceptions; they are recorded in the session state.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid construction parameters (n = 0, d <= 0, unsupported group, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  DimensionError(const std::string& what, std::size_t expected, std::size_t got)
      : Error(what + ": expected dimension " + std::to_string(expected) + ", got " +
              std::to_string(got)) {}
};

// Malformed serialized data: truncated buffers, bad headers, invalid encodings.
class DecodeError : public Error {
 public:
  using Error::Error;
};

// An operation was invoked in a protocol phase that does not permit it.
class ProtocolStateError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Failure inside the underlying crypto provider (OpenSSL).
class CryptoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mfake
