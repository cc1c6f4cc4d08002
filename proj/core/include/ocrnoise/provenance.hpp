// Copyright 2026 The ocrnoise Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ocrnoise/corpus.hpp"

namespace ocrnoise {

inline constexpr std::string_view kToolVersion = "0.3.0";

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

/// Throws IoError when the file cannot be read.
std::string sha256_file(const std::filesystem::path& path);

/// Digest over (id, text) of every document in id order.
std::string corpus_digest(const Corpus& corpus);

/// Reads a whole file; throws IoError.
std::string read_text_file(const std::filesystem::path& path);

/// Writes `text` to `path`, replacing it; throws IoError.
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Path of the manifest that accompanies `output`: "<output>.manifest.json".
std::filesystem::path manifest_path(const std::filesystem::path& output);

/// Writes `manifest` (pretty-printed, keys sorted) next to `output`.
void write_manifest(const std::filesystem::path& output, const nlohmann::json& manifest);

}  // namespace ocrnoise
