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

#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace ocrnoise::testing {

ConfusionModel make_truth_model(const std::u32string& alphabet, double off_rate,
                                std::uint64_t seed, std::uint64_t scale) {
  std::mt19937_64 rng(seed);
  ConfusionModel model;
  const auto off_total = static_cast<std::uint64_t>(std::llround(off_rate * scale));
  for (char32_t clean : alphabet) {
    model.add(clean, clean, scale - off_total);
    std::vector<char32_t> others;
    for (char32_t c : alphabet) {
      if (c != clean) others.push_back(c);
    }
    std::shuffle(others.begin(), others.end(), rng);
    const std::size_t targets = 1 + rng() % 3;
    std::vector<std::uint64_t> weights(targets);
    std::uint64_t weight_sum = 0;
    for (auto& w : weights) weight_sum += (w = 1 + rng() % 10);
    std::uint64_t assigned = 0;
    for (std::size_t t = 0; t < targets; ++t) {
      const std::uint64_t n = t + 1 == targets
                                  ? off_total - assigned
                                  : off_total * weights[t] / weight_sum;
      model.add(clean, others[t], n);
      assigned += n;
    }
  }
  return model;
}

TruthSampler::TruthSampler(const ConfusionModel& model) {
  for (const auto& [clean, row] : model.counts()) {
    Row r;
    for (const auto& [observed, n] : row) {
      r.symbols.push_back(observed);
      r.weights.push_back(static_cast<double>(n));
    }
    rows_.emplace(clean, std::move(r));
  }
}

char32_t TruthSampler::draw(char32_t clean, std::mt19937_64& rng) const {
  auto it = rows_.find(clean);
  if (it == rows_.end()) return clean;
  std::discrete_distribution<std::size_t> dist(it->second.weights.begin(),
                                               it->second.weights.end());
  return it->second.symbols[dist(rng)];
}

std::u32string TruthSampler::noise(const std::u32string& word, std::mt19937_64& rng) const {
  std::u32string out = word;
  for (char32_t& c : out) c = draw(c, rng);
  return out;
}

std::vector<std::u32string> make_vocabulary(const std::u32string& alphabet,
                                            std::size_t size, std::size_t min_len,
                                            std::size_t max_len, std::mt19937_64& rng) {
  std::set<std::u32string> seen;
  std::vector<std::u32string> words;
  while (words.size() < size) {
    const std::size_t len = min_len + rng() % (max_len - min_len + 1);
    std::u32string w;
    for (std::size_t i = 0; i < len; ++i) w.push_back(alphabet[rng() % alphabet.size()]);
    if (seen.insert(w).second) words.push_back(std::move(w));
  }
  return words;
}

ReuseFixture make_reuse_fixture(const ReuseFixtureParams& params,
                                const ConfusionModel& truth) {
  std::mt19937_64 rng(params.seed);
  ReuseFixture fx;
  fx.vocabulary = make_vocabulary(kFixtureAlphabet, params.vocabulary,
                                  params.min_word_len, params.max_word_len, rng);
  const TruthSampler sampler(truth);
  std::vector<Document> docs;
  for (std::size_t p = 0; p < params.clusters; ++p) {
    std::vector<std::u32string> passage;
    for (std::size_t t = 0; t < params.tokens_per_passage; ++t) {
      passage.push_back(fx.vocabulary[rng() % fx.vocabulary.size()]);
    }
    for (std::size_t c = 0; c < params.copies; ++c) {
      NoisyCopy copy{p, {}};
      std::u32string text;
      for (const auto& word : passage) {
        copy.tokens.push_back(sampler.noise(word, rng));
        if (!text.empty()) text.push_back(U' ');
        text += copy.tokens.back();
      }
      char id[64];
      std::snprintf(id, sizeof(id), "p%04zu/copy%02zu.txt", p, c);
      docs.push_back({id, std::move(text)});
      fx.copies.emplace(id, std::move(copy));
    }
    fx.passages.push_back(std::move(passage));
  }
  fx.corpus = Corpus(std::move(docs));
  return fx;
}

double row_l1(const ConfusionModel& a, const ConfusionModel& b, char32_t clean) {
  std::set<char32_t> keys;
  if (auto it = a.counts().find(clean); it != a.counts().end()) {
    for (const auto& [c, n] : it->second) keys.insert(c);
  }
  if (auto it = b.counts().find(clean); it != b.counts().end()) {
    for (const auto& [c, n] : it->second) keys.insert(c);
  }
  double l1 = 0.0;
  for (char32_t c : keys) l1 += std::abs(a.probability(clean, c) - b.probability(clean, c));
  return l1;
}

}  // namespace ocrnoise::testing
