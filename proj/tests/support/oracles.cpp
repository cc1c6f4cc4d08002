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

#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>

namespace ocrnoise::testing {

std::size_t recursive_edit_distance(std::u32string_view a, std::u32string_view b) {
  std::vector<std::vector<long>> memo(a.size() + 1, std::vector<long>(b.size() + 1, -1));
  std::function<long(std::size_t, std::size_t)> d = [&](std::size_t i, std::size_t j) -> long {
    if (i == a.size()) return static_cast<long>(b.size() - j);
    if (j == b.size()) return static_cast<long>(a.size() - i);
    long& slot = memo[i][j];
    if (slot >= 0) return slot;
    const long sub = d(i + 1, j + 1) + (a[i] == b[j] ? 0 : 1);
    const long del = d(i + 1, j) + 1;
    const long ins = d(i, j + 1) + 1;
    slot = std::min({sub, del, ins});
    return slot;
  };
  return static_cast<std::size_t>(d(0, 0));
}

int full_local_alignment_score(std::u32string_view a, std::u32string_view b,
                               int match, int mismatch, int gap) {
  std::vector<std::vector<int>> h(a.size() + 1, std::vector<int>(b.size() + 1, 0));
  int best = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int s = a[i - 1] == b[j - 1] ? match : mismatch;
      h[i][j] = std::max({0, h[i - 1][j - 1] + s, h[i - 1][j] + gap, h[i][j - 1] + gap});
      best = std::max(best, h[i][j]);
    }
  }
  return best;
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Zero-weighted terms are dropped; an impossible channel reading stays
// impossible at every weight.
double weighted(double w, double x) { return w == 0.0 ? 0.0 : w * x; }

double step(const DecodeProblem& p, double lc, double ll) {
  if (lc == kNegInf) return kNegInf;
  return weighted(p.lambda, lc) + weighted(1.0 - p.lambda, ll);
}

double end_term(const DecodeProblem& p, std::u32string_view ctx) {
  return weighted(1.0 - p.lambda, p.log_lm(p.lm_state, ctx, p.boundary));
}

double full_score(const DecodeProblem& p, const std::u32string& clean) {
  std::u32string ctx(p.order - 1, p.boundary);
  double total = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    total += step(p, p.log_channel(p.channel_state, clean[i], p.noisy[i]),
                  p.log_lm(p.lm_state, ctx, clean[i]));
    ctx = ctx.substr(1) + clean[i];
  }
  return total + end_term(p, ctx);
}

bool improves(double s, const std::u32string& text, const DecodeResult& best) {
  if (s == kNegInf) return false;
  if (!best.found) return true;
  return s > best.score || (s == best.score && text < best.text);
}

}  // namespace

DecodeResult brute_force_decode(const DecodeProblem& p) {
  DecodeResult best{std::u32string(), kNegInf, false};
  const std::size_t n = p.noisy.size();
  std::vector<std::size_t> digits(n, 0);
  std::u32string s(n, U'\0');
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) s[i] = p.alphabet[digits[i]];
    const double sc = full_score(p, s);
    if (improves(sc, s, best)) best = {s, sc, true};
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++digits[k] < p.alphabet.size()) break;
      digits[k] = 0;
      if (k == 0) return best;
    }
    if (n == 0) return best;
  }
}

DecodeResult viterbi_decode(const DecodeProblem& p) {
  struct Cell {
    double score;
    std::u32string text;
  };
  std::map<std::u32string, Cell> states{{std::u32string(p.order - 1, p.boundary), {0.0, {}}}};
  for (std::size_t i = 0; i < p.noisy.size(); ++i) {
    std::map<std::u32string, Cell> next;
    for (const auto& [ctx, cell] : states) {
      for (char32_t c : p.alphabet) {
        const double sc = cell.score + step(p, p.log_channel(p.channel_state, c, p.noisy[i]),
                                            p.log_lm(p.lm_state, ctx, c));
        if (sc == kNegInf) continue;
        const std::u32string text = cell.text + c;
        const std::u32string nctx = ctx.substr(1) + c;
        auto it = next.find(nctx);
        if (it == next.end() || sc > it->second.score ||
            (sc == it->second.score && text < it->second.text)) {
          next[nctx] = {sc, text};
        }
      }
    }
    states = std::move(next);
  }
  DecodeResult best{std::u32string(), kNegInf, false};
  for (const auto& [ctx, cell] : states) {
    const double sc = cell.score + end_term(p, ctx);
    if (improves(sc, cell.text, best)) best = {cell.text, sc, true};
  }
  return best;
}

}  // namespace ocrnoise::testing
