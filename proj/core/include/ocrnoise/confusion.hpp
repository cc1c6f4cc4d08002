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

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ocrnoise {

/// Character replacement counts: how often each clean character was read as
/// each observed character, identity included. Counts rather than
/// probabilities are stored so models can be merged.
class ConfusionModel {
 public:
  using Row = std::map<char32_t, std::uint64_t>;

  void add(char32_t clean, char32_t observed, std::uint64_t n = 1);
  void merge(const ConfusionModel& other);
  /// Extends the alphabet without adding counts.
  void note_symbol(char32_t c) { alphabet_.insert(c); }

  const std::map<char32_t, Row>& counts() const { return counts_; }
  const std::set<char32_t>& alphabet() const { return alphabet_; }
  bool empty() const { return total_ == 0; }

  std::uint64_t count(char32_t clean, char32_t observed) const;
  std::uint64_t row_total(char32_t clean) const;
  bool has_row(char32_t clean) const { return row_total(clean) > 0; }
  std::uint64_t total() const { return total_; }
  std::uint64_t off_diagonal_total() const { return off_diagonal_; }

  /// P(observed | clean) from the normalized row; 0 when the row is empty.
  double probability(char32_t clean, char32_t observed) const;

  /// Off-diagonal mass over total mass, 0 for an empty model.
  double avg_cer() const;

 private:
  std::map<char32_t, Row> counts_;
  std::map<char32_t, std::uint64_t> row_totals_;
  std::set<char32_t> alphabet_;
  std::uint64_t total_ = 0;
  std::uint64_t off_diagonal_ = 0;
};

inline double average_cer(const ConfusionModel& model) { return model.avg_cer(); }

/// {"alphabet": [chars], "counts": {clean: {observed: n}}, "avg_cer": x}
nlohmann::json to_json(const ConfusionModel& model);

/// Throws ValidationError on malformed input or an avg_cer that disagrees
/// with the counts.
ConfusionModel confusion_from_json(const nlohmann::json& j);

/// Uniform channel over `clean_chars`: each row keeps 1 - rate on the
/// diagonal and spreads `rate` evenly over the replacement set minus the
/// clean character itself, so avg_cer equals `rate` up to rounding of the
/// integer counts (`scale` per row).
ConfusionModel make_uniform_confusion(std::span<const char32_t> clean_chars,
                                      double rate,
                                      std::u32string_view replacement_set,
                                      std::uint64_t scale = 1'000'000);

}  // namespace ocrnoise
