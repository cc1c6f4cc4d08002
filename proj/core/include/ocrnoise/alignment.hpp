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
#include <string_view>

namespace ocrnoise {

/// Linear-gap scoring used by reuse detection.
struct ScoringScheme {
  int match = 1;
  int mismatch = -1;
  int gap = -1;

  int substitution(char32_t a, char32_t b) const {
    return a == b ? match : mismatch;
  }
};

/// Optimal local alignment. Coordinates are half-open ranges into the two
/// inputs; an all-negative input gives score 0 with empty ranges at 0.
struct LocalAlignment {
  int score = 0;
  std::size_t a_begin = 0;
  std::size_t a_end = 0;
  std::size_t b_begin = 0;
  std::size_t b_end = 0;
};

/// Smith-Waterman in linear memory. Among optimal alignments the one ending
/// first in row-major order wins; its start is traced through diagonal, then
/// vertical, then horizontal predecessors. Re-running on the returned
/// subranges reproduces the same score.
LocalAlignment local_align(std::u32string_view a, std::u32string_view b,
                           const ScoringScheme& scoring);

/// Best-scoring prefix alignment of `a` and `b` anchored at (0, 0).
struct Extension {
  int score = 0;
  std::size_t a_len = 0;
  std::size_t b_len = 0;
};

/// Gapped X-drop extension: DP cells whose score falls more than `x_drop`
/// below the best seen so far are pruned, and the extension stops once a
/// whole row is pruned.
Extension xdrop_extend(std::u32string_view a, std::u32string_view b,
                       const ScoringScheme& scoring, int x_drop);

}  // namespace ocrnoise
