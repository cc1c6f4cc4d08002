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

#include <string>
#include <string_view>

namespace ocrnoise {

/// Decodes UTF-8 into codepoints. Throws ValidationError naming the byte
/// offset of the first malformed sequence (overlong forms, surrogates and
/// values above U+10FFFF are rejected).
std::u32string decode_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view text);
std::string encode_utf8(char32_t c);

/// Unicode White_Space property (PropList.txt).
bool is_unicode_whitespace(char32_t c);

/// Rewrites "\r\n" and lone "\r" as "\n".
std::u32string normalize_newlines(std::u32string_view text);

}  // namespace ocrnoise
