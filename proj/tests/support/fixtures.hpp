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

// Synthetic data for the statistical tests: a known confusion model and
// reuse corpora whose noise is drawn from it with a sampler that is
// independent of the library's noise module.

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ocrnoise/confusion.hpp"
#include "ocrnoise/corpus.hpp"

namespace ocrnoise::testing {

/// 26 ASCII lowercase letters plus ä, ö, å, é.
inline const std::u32string kFixtureAlphabet = U"abcdefghijklmnopqrstuvwxyzäöåé";

/// Each row keeps 1 - off_rate on the diagonal and splits off_rate over one
/// to three random confusion targets. Counts are scaled by `scale`.
ConfusionModel make_truth_model(const std::u32string& alphabet, double off_rate,
                                std::uint64_t seed, std::uint64_t scale = 100000);

/// Draws observed characters from a model via std::discrete_distribution.
class TruthSampler {
 public:
  explicit TruthSampler(const ConfusionModel& model);
  char32_t draw(char32_t clean, std::mt19937_64& rng) const;
  std::u32string noise(const std::u32string& word, std::mt19937_64& rng) const;

 private:
  struct Row {
    std::vector<char32_t> symbols;
    std::vector<double> weights;
  };
  std::map<char32_t, Row> rows_;
};

std::vector<std::u32string> make_vocabulary(const std::u32string& alphabet,
                                            std::size_t size, std::size_t min_len,
                                            std::size_t max_len, std::mt19937_64& rng);

struct ReuseFixtureParams {
  std::size_t clusters = 200;
  std::size_t copies = 25;
  std::size_t tokens_per_passage = 40;
  std::size_t vocabulary = 4000;
  std::size_t min_word_len = 4;
  std::size_t max_word_len = 12;
  std::uint64_t seed = 20180601;
};

struct NoisyCopy {
  std::size_t passage = 0;
  std::vector<std::u32string> tokens;  // noisy, token-aligned with the passage
};

/// One document per noisy copy; each document holds its copy only.
struct ReuseFixture {
  std::vector<std::u32string> vocabulary;
  std::vector<std::vector<std::u32string>> passages;  // clean tokens
  std::map<std::string, NoisyCopy> copies;            // by document id
  Corpus corpus;
};

ReuseFixture make_reuse_fixture(const ReuseFixtureParams& params,
                                const ConfusionModel& truth);

/// L1 distance between the normalized rows of `clean` in two models.
double row_l1(const ConfusionModel& a, const ConfusionModel& b, char32_t clean);

}  // namespace ocrnoise::testing
