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

#include "ocrnoise/alignment.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

namespace ocrnoise {

namespace {

constexpr int kPruned = std::numeric_limits<int>::min() / 4;

std::uint64_t pack(std::size_t i, std::size_t j) {
  return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(j);
}

}  // namespace

LocalAlignment local_align(std::u32string_view a, std::u32string_view b,
                           const ScoringScheme& scoring) {
  const std::size_t m = b.size();
  std::vector<int> prev_h(m + 1, 0), cur_h(m + 1, 0);
  std::vector<std::uint64_t> prev_s(m + 1), cur_s(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev_s[j] = pack(0, j);

  LocalAlignment best;
  std::uint64_t best_start = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    const char32_t ai = a[i - 1];
    cur_h[0] = 0;
    cur_s[0] = pack(i, 0);
    for (std::size_t j = 1; j <= m; ++j) {
      const int diag = prev_h[j - 1] + scoring.substitution(ai, b[j - 1]);
      const int up = prev_h[j] + scoring.gap;
      const int left = cur_h[j - 1] + scoring.gap;
      int h = 0;
      std::uint64_t start = pack(i, j);
      if (diag > 0 && diag >= up && diag >= left) {
        h = diag;
        start = prev_s[j - 1];
      } else if (up > 0 && up >= left) {
        h = up;
        start = prev_s[j];
      } else if (left > 0) {
        h = left;
        start = cur_s[j - 1];
      }
      cur_h[j] = h;
      cur_s[j] = start;
      if (h > best.score) {
        best.score = h;
        best.a_end = i;
        best.b_end = j;
        best_start = start;
      }
    }
    std::swap(prev_h, cur_h);
    std::swap(prev_s, cur_s);
  }
  if (best.score > 0) {
    best.a_begin = static_cast<std::size_t>(best_start >> 32);
    best.b_begin = static_cast<std::size_t>(best_start & 0xFFFFFFFFu);
  }
  return best;
}

Extension xdrop_extend(std::u32string_view a, std::u32string_view b,
                       const ScoringScheme& scoring, int x_drop) {
  const std::size_t m = b.size();
  std::vector<int> prev(m + 2, kPruned), cur(m + 2, kPruned);
  Extension best;

  // Row 0: leading gaps in `a`.
  std::size_t lo = 0, hi = 0;
  prev[0] = 0;
  for (std::size_t j = 1; j <= m; ++j) {
    const int h = prev[j - 1] + scoring.gap;
    if (h < best.score - x_drop) break;
    prev[j] = h;
    hi = j;
  }

  for (std::size_t i = 1; i <= a.size(); ++i) {
    const char32_t ai = a[i - 1];
    std::size_t new_lo = m + 1, new_hi = 0;
    bool any = false;
    const int floor = best.score - x_drop;
    std::size_t j = lo;
    for (; j <= m; ++j) {
      if (j > hi + 1 && cur[j - 1] == kPruned) break;
      int h = kPruned;
      if (j >= 1 && j - 1 >= lo && j - 1 <= hi && prev[j - 1] != kPruned) {
        h = std::max(h, prev[j - 1] + scoring.substitution(ai, b[j - 1]));
      }
      if (j <= hi && prev[j] != kPruned) h = std::max(h, prev[j] + scoring.gap);
      if (j > lo && cur[j - 1] != kPruned) h = std::max(h, cur[j - 1] + scoring.gap);
      if (h < floor) h = kPruned;
      cur[j] = h;
      if (h != kPruned) {
        if (!any) new_lo = j;
        new_hi = j;
        any = true;
        if (h > best.score) {
          best = {h, i, j};
        }
      }
    }
    if (!any) break;
    // Live cells of a row lie within its window, so clearing the window
    // leaves the buffer fully pruned for reuse.
    for (std::size_t k = lo; k <= std::min(hi, m); ++k) prev[k] = kPruned;
    std::swap(prev, cur);
    lo = new_lo;
    hi = new_hi;
  }
  return best;
}

}  // namespace ocrnoise
