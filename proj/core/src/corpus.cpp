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

#include "ocrnoise/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "ocrnoise/errors.hpp"
#include "ocrnoise/text.hpp"

namespace ocrnoise {

namespace fs = std::filesystem;

Corpus::Corpus(std::vector<Document> documents)
    : documents_(std::move(documents)) {
  for (auto& doc : documents_) {
    if (doc.id.empty()) throw ValidationError("document with empty id");
    doc.text = normalize_newlines(doc.text);
  }
  std::sort(documents_.begin(), documents_.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  auto dup = std::adjacent_find(
      documents_.begin(), documents_.end(),
      [](const Document& a, const Document& b) { return a.id == b.id; });
  if (dup != documents_.end()) {
    throw ValidationError("duplicate document id '" + dup->id + "'");
  }
}

const Document* Corpus::find(std::string_view id) const {
  auto it = std::lower_bound(
      documents_.begin(), documents_.end(), id,
      [](const Document& d, std::string_view key) { return d.id < key; });
  if (it == documents_.end() || it->id != id) return nullptr;
  return &*it;
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  return buf.str();
}

std::u32string decode_named(std::string_view bytes, const std::string& name) {
  try {
    return decode_utf8(bytes);
  } catch (const ValidationError& e) {
    throw ValidationError(name + ": " + e.what());
  }
}

Corpus load_directory(const fs::path& dir) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (fs::recursive_directory_iterator it(dir, ec), end; it != end;
       it.increment(ec)) {
    if (ec) break;
    if (it->is_regular_file() && it->path().extension() == ".txt") {
      files.push_back(it->path());
    }
  }
  if (ec) throw IoError("cannot list directory " + dir.string());
  std::vector<Document> docs;
  docs.reserve(files.size());
  for (const auto& file : files) {
    const std::string id = fs::relative(file, dir).generic_string();
    docs.push_back({id, decode_named(read_file(file), file.string())});
  }
  return Corpus(std::move(docs));
}

Corpus load_jsonl(const fs::path& file) {
  const std::string bytes = read_file(file);
  // Validate the whole file first so errors carry a byte offset.
  decode_named(bytes, file.string());
  std::vector<Document> docs;
  std::istringstream lines(bytes);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = file.string() + ":" + std::to_string(line_no);
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(where + ": " + e.what());
    }
    if (!record.is_object() || !record.contains("id") ||
        !record.contains("text") || !record["id"].is_string() ||
        !record["text"].is_string()) {
      throw ValidationError(where + ": expected {\"id\": string, \"text\": string}");
    }
    docs.push_back({record["id"].get<std::string>(),
                    decode_utf8(record["text"].get<std::string>())});
  }
  return Corpus(std::move(docs));
}

}  // namespace

Corpus load_corpus(const fs::path& path) {
  std::error_code ec;
  if (fs::is_directory(path, ec)) return load_directory(path);
  if (!fs::exists(path, ec)) throw IoError("no such file " + path.string());
  return load_jsonl(path);
}

std::vector<Token> tokenize(std::u32string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && is_unicode_whitespace(text[i])) ++i;
    if (i == n) break;
    const std::size_t start = i;
    while (i < n && !is_unicode_whitespace(text[i])) ++i;
    tokens.push_back({std::u32string(text.substr(start, i - start)), start, i});
  }
  return tokens;
}

}  // namespace ocrnoise
