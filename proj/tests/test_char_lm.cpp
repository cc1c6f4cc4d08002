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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ocrnoise/char_lm.hpp"
#include "ocrnoise/errors.hpp"

namespace ocrnoise {
namespace {

constexpr char32_t kB = CharLM::kBoundary;

TEST(CharLM, HandCountedBigrams) {
  const CharLM lm = train_lm(Corpus({{"a", U"aaa"}}), 2, 0.0);
  EXPECT_DOUBLE_EQ(lm.probability(U"a", U'a'), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(lm.probability(U"a", kB), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(lm.probability(std::u32string(1, kB), U'a'), 1.0);
  EXPECT_EQ(lm.count(U"a", U'a'), 2u);
  EXPECT_EQ(lm.alphabet(), (std::set<char32_t>{kB, U'a'}));

  const CharLM ab = train_lm(Corpus({{"d", U"ab"}}), 2, 0.0);
  EXPECT_DOUBLE_EQ(ab.probability(U"a", U'b'), 1.0);
  EXPECT_EQ(ab.probability(U"b", U'a'), 0.0);
  EXPECT_EQ(ab.log_prob(U"b", U'a'), -INFINITY);
}

TEST(CharLM, TokensArePaddedIndependently) {
  const CharLM lm = train_lm(Corpus({{"d", U"ab ba\nab"}}), 3, 0.0);
  EXPECT_EQ(lm.initial_context(), std::u32string(2, kB));
  EXPECT_DOUBLE_EQ(lm.probability(std::u32string(2, kB), U'a'), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(lm.probability(U"ab", kB), 1.0);
  EXPECT_EQ(lm.count(std::u32string{kB, U'a'}, U'b'), 2u);
  EXPECT_EQ(lm.count(U"b ", U'b'), 0u);
}

TEST(CharLM, SmoothingMakesEveryProbabilityPositive) {
  const CharLM lm = train_lm(Corpus({{"d", U"kirkon kylän kello"}}), 3, 0.1);
  for (char32_t a : lm.alphabet()) {
    for (char32_t b : lm.alphabet()) {
      const std::u32string ctx{a, b};
      for (char32_t c : lm.alphabet()) EXPECT_GT(lm.probability(ctx, c), 0.0);
    }
  }
  // Unseen context: uniform over the alphabet.
  EXPECT_DOUBLE_EQ(lm.probability(U"zz", U'k'), 1.0 / static_cast<double>(lm.alphabet().size()));
}

TEST(CharLM, PropertyDistributionsSumToOne) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    std::u32string text;
    for (int i = 0; i < 200; ++i) text.push_back(i % 7 == 6 ? U' ' : U"abcä"[rng() % 4]);
    const double k = trial % 2 ? 0.0 : 0.05 * trial + 0.01;
    const std::size_t order = 2 + trial % 3;
    const CharLM lm = train_lm(Corpus({{"d", text}}), order, k);
    for (int probe = 0; probe < 30; ++probe) {
      std::u32string ctx;
      const std::vector<char32_t> symbols(lm.alphabet().begin(), lm.alphabet().end());
      for (std::size_t i = 0; i + 1 < order; ++i) ctx.push_back(symbols[rng() % symbols.size()]);
      double sum = 0.0;
      for (char32_t c : lm.alphabet()) sum += lm.probability(ctx, c);
      // k = 0 over an unseen context has no mass at all.
      if (k == 0.0 && sum == 0.0) continue;
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
}

TEST(CharLM, JsonRoundTrip) {
  const CharLM lm = train_lm(Corpus({{"d", U"kirkon kylän kello kirkko"}}), 4, 0.25);
  const auto j = lm.to_json();
  const CharLM back = CharLM::from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.to_json().dump(), j.dump());
  EXPECT_EQ(back.order(), 4u);
  EXPECT_EQ(back.alphabet(), lm.alphabet());
  EXPECT_DOUBLE_EQ(back.probability(U"irk", U'o'), lm.probability(U"irk", U'o'));
}

TEST(CharLM, Errors) {
  EXPECT_THROW(CharLM(1, 0.1), ValidationError);
  EXPECT_THROW(CharLM(3, -0.1), ValidationError);
  EXPECT_THROW(train_lm(Corpus(), 3, 0.1), ValidationError);
  EXPECT_THROW(CharLM::from_json(nlohmann::json::parse(R"({"order":3})")), ValidationError);
}

}  // namespace
}  // namespace ocrnoise
