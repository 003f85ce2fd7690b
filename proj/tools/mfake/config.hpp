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

#include <string>
#include <vector>

namespace mfake::cli {

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

// Flat `key = value` lines; '#' starts a comment. Throws mfake::DecodeError
// on lines without '='.
std::vector<ConfigEntry> parse_config(const std::string& text);

// Splits `--config FILE` / `--config=FILE` out of args (args[0] is the
// program). Returns the path or an empty string.
std::string extract_config_path(std::vector<std::string>& args);

}  // namespace mfake::cli
