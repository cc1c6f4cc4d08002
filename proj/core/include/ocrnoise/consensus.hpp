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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocrnoise/confusion.hpp"
#include "ocrnoise/reuse.hpp"

namespace ocrnoise {

struct WordVariant {
  std::u32string word;
  std::size_t count = 0;

  friend bool operator==(const WordVariant&, const WordVariant&) = default;
};

/// Variants of one word inside a reuse cluster, with the consensus reading.
struct WordGroup {
  std::u32string representative;
  std::vector<WordVariant> variants;  // by descending count, then word
  std::size_t support = 0;            // distinct spans contributing
};

struct GroupingParams {
  /// A word joins a pivot when their edit distance is at most
  /// ceil(dist_threshold * max length).
  double dist_threshold = 0.25;
  /// A group is kept when at least this fraction of the cluster's spans
  /// contribute to it.
  double support_fraction = 0.5;

  void validate() const;
};

/// Greedy grouping: distinct words are visited by descending frequency
/// (ties by codepoint order); each still-ungrouped word becomes a pivot and
/// absorbs every ungrouped word within the distance bound.
std::vector<WordGroup> group_words(const ReuseCluster& cluster,
                                   const GroupingParams& params = {});

/// Column-wise majority vote over the variants of the count-weighted modal
/// length (ties to the shorter length). Column ties go to the smallest
/// codepoint. Throws ValidationError on an empty list.
std::u32string positional_consensus(std::span<const WordVariant> variants);

struct Substitution {
  char32_t clean;
  char32_t observed;

  friend bool operator==(const Substitution&, const Substitution&) = default;
  friend auto operator<=>(const Substitution&, const Substitution&) = default;
};

/// One-to-one evidence from a minimum-edit alignment of `variant` against
/// `representative`: a pair for every match or substitution column, in
/// order. Gap columns contribute nothing. Traceback prefers substitution,
/// then insertion, then deletion.
std::vector<Substitution> char_substitutions(std::u32string_view variant,
                                             std::u32string_view representative);

/// Aligns every grouped variant occurrence against its group's
/// representative and counts the substitutions across all clusters.
ConfusionModel estimate_confusion(std::span<const ReuseCluster> clusters,
                                  const GroupingParams& params = {},
                                  unsigned workers = 1);

}  // namespace ocrnoise
