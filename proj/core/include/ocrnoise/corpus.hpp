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

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ocrnoise {

struct Document {
  std::string id;
  std::u32string text;
};

/// A maximal run of non-whitespace codepoints. Offsets are codepoint
/// indices into the tokenized text, end exclusive.
struct Token {
  std::u32string text;
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Immutable set of documents ordered by id.
class Corpus {
 public:
  Corpus() = default;

  /// Sorts by id and normalizes line endings. Throws ValidationError on an
  /// empty or duplicated id.
  explicit Corpus(std::vector<Document> documents);

  const std::vector<Document>& documents() const { return documents_; }
  std::size_t size() const { return documents_.size(); }
  bool empty() const { return documents_.empty(); }

  /// nullptr when absent.
  const Document* find(std::string_view id) const;

 private:
  std::vector<Document> documents_;
};

/// Loads either a directory of UTF-8 `.txt` files (searched recursively,
/// ids are paths relative to the directory) or a JSON-lines file of
/// {"id", "text"} records. Unreadable files raise IoError; invalid UTF-8 and
/// duplicate ids raise ValidationError.
Corpus load_corpus(const std::filesystem::path& path);

std::vector<Token> tokenize(std::u32string_view text);

}  // namespace ocrnoise
