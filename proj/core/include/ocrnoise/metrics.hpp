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

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ocrnoise {

/// Unit-cost Levenshtein distance over any two random-access sequences whose
/// elements compare with ==.
template <typename T>
std::size_t levenshtein(std::span<const T> a, std::span<const T> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t edit_distance(std::u32string_view a, std::u32string_view b);

/// Micro-averaged error rates with the counts behind them.
struct EvalReport {
  double cer = 0.0;
  double wer = 0.0;
  std::size_t char_edits = 0;
  std::size_t char_ref_total = 0;
  std::size_t word_edits = 0;
  std::size_t word_ref_total = 0;
  std::size_t pair_count = 0;
};

/// CER = total character edits / total reference characters; WER is the
/// same over whitespace tokens, with tokens compared for exact equality.
/// Throws ValidationError if the two lists differ in length.
EvalReport evaluate(std::span<const std::u32string> hypotheses,
                    std::span<const std::u32string> references,
                    unsigned workers = 1);

nlohmann::json to_json(const EvalReport& report);

/// Two-column human readable table.
std::string format_report(const EvalReport& report);

}  // namespace ocrnoise
