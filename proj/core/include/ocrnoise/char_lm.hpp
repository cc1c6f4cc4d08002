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
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>

#include <json.hpp>

#include "ocrnoise/corpus.hpp"

namespace ocrnoise {

/// Character n-gram model over single tokens with additive smoothing:
/// P(c | ctx) = (count + k) / (ctx_total + k * |alphabet|).
class CharLM {
 public:
  /// Pads token starts and ends.
  static constexpr char32_t kBoundary = U'\0';

  /// Throws ValidationError unless order >= 2 and smoothing >= 0.
  CharLM(std::size_t order, double smoothing);

  /// Counts the order-grams of `token` padded with order - 1 boundaries in
  /// front and one behind.
  void add_token(std::u32string_view token);

  std::size_t order() const { return order_; }
  double smoothing() const { return smoothing_; }
  /// Observed characters plus kBoundary.
  const std::set<char32_t>& alphabet() const { return alphabet_; }

  /// Context of order - 1 boundaries.
  std::u32string initial_context() const {
    return std::u32string(order_ - 1, kBoundary);
  }

  /// `context` must hold exactly order - 1 characters.
  double probability(std::u32string_view context, char32_t next) const;
  double log_prob(std::u32string_view context, char32_t next) const;

  std::uint64_t count(std::u32string_view context, char32_t next) const;

  nlohmann::json to_json() const;
  static CharLM from_json(const nlohmann::json& j);

 private:
  struct ContextCounts {
    std::uint64_t total = 0;
    std::unordered_map<char32_t, std::uint64_t> next;
  };

  std::size_t order_;
  double smoothing_;
  std::set<char32_t> alphabet_;
  std::unordered_map<std::u32string, ContextCounts> contexts_;
};

/// Trains on every whitespace token of the corpus. Throws ValidationError
/// for an empty corpus.
CharLM train_lm(const Corpus& clean_corpus, std::size_t order, double smoothing);

}  // namespace ocrnoise
