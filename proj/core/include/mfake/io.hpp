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

#include "mfake/bytes.hpp"

namespace mfake {

// Whole-file helpers. Writes go to a sibling temp file that is renamed over
// the target, so readers never see a partial file. Failures throw IoError.
Bytes read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, ByteSpan data);

}  // namespace mfake
