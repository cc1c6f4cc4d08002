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

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "ocrnoise/char_lm.hpp"
#include "ocrnoise/confusion.hpp"
#include "ocrnoise/corrector.hpp"
#include "ocrnoise/metrics.hpp"
#include "ocrnoise/noise.hpp"
#include "ocrnoise/reuse.hpp"

namespace {

using namespace ocrnoise;

const std::u32string kAlphabet = U"abcdefghijklmnopqrstuvwxyzäö";

std::u32string random_text(std::mt19937_64& rng, std::size_t len) {
  std::u32string s;
  for (std::size_t i = 0; i < len; ++i) {
    s.push_back(rng() % 7 == 0 ? U' ' : kAlphabet[rng() % kAlphabet.size()]);
  }
  return s;
}

ConfusionModel ocr_like_model() {
  ConfusionModel m;
  std::mt19937_64 rng(1);
  for (char32_t c : kAlphabet) {
    m.add(c, c, 920);
    for (int k = 0; k < 3; ++k) m.add(c, kAlphabet[rng() % kAlphabet.size()], 20 + rng() % 20);
  }
  return m;
}

void BM_EditDistance(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto a = random_text(rng, state.range(0));
  const auto b = random_text(rng, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(edit_distance(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EditDistance)->RangeMultiplier(4)->Range(8, 2048)->Complexity();

void BM_DetectPairs(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const ConfusionModel model = ocr_like_model();
  const ConfusionSampler sampler(model);
  std::vector<Document> docs;
  for (int p = 0; p < 4; ++p) {
    const auto passage = random_text(rng, 300);
    for (int c = 0; c < state.range(0); ++c) {
      NoiseRng noise(rng());
      docs.push_back({"p" + std::to_string(p) + "c" + std::to_string(100 + c),
                      random_text(rng, 200) + apply_realistic(passage, sampler, noise) +
                          random_text(rng, 200)});
    }
  }
  const Corpus corpus(std::move(docs));
  for (auto _ : state) benchmark::DoNotOptimize(detect_pairs(corpus, {}));
  state.SetLabel(std::to_string(corpus.size()) + " documents");
}
BENCHMARK(BM_DetectPairs)->Arg(5)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_ApplyRealistic(benchmark::State& state) {
  const ConfusionModel model = ocr_like_model();
  const ConfusionSampler sampler(model);
  std::mt19937_64 rng(4);
  const auto text = random_text(rng, 10000);
  NoiseRng noise(5);
  for (auto _ : state) benchmark::DoNotOptimize(apply_realistic(text, sampler, noise));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ApplyRealistic);

void BM_CorrectToken(benchmark::State& state) {
  const ConfusionModel model = ocr_like_model();
  std::mt19937_64 rng(6);
  const CharLM lm = train_lm(Corpus({{"d", random_text(rng, 200000)}}), 5, 0.1);
  DecoderParams params;
  params.beam_width = static_cast<std::size_t>(state.range(0));
  const ChannelCorrector corrector(model, lm, params);
  std::vector<std::u32string> tokens;
  for (int i = 0; i < 64; ++i) tokens.push_back(random_text(rng, 4 + rng() % 8));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(corrector.correct(tokens[i++ % tokens.size()]));
}
BENCHMARK(BM_CorrectToken)->Arg(1)->Arg(4)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
