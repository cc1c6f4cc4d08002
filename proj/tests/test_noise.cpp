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
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "ocrnoise/errors.hpp"
#include "ocrnoise/noise.hpp"

namespace ocrnoise {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class TempDir {
 public:
  TempDir()
      : path_(fs::temp_directory_path() /
              (std::string("ocrnoise_noise_") +
               ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

Corpus words_corpus(std::size_t tokens, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto vocab = testing::make_vocabulary(testing::kFixtureAlphabet, 500, 3, 10, rng);
  std::vector<Document> docs;
  std::u32string text;
  for (std::size_t i = 0; i < tokens; ++i) {
    text += vocab[rng() % vocab.size()];
    text.push_back(i % 15 == 14 ? U'\n' : U' ');
    if (i % 3000 == 2999) {
      docs.push_back({"d" + std::to_string(docs.size() + 100), text});
      text.clear();
    }
  }
  if (!text.empty()) docs.push_back({"d" + std::to_string(docs.size() + 100), text});
  return Corpus(std::move(docs));
}

TEST(ApplyUniform, ZeroAndFullRate) {
  NoiseRng rng(1);
  EXPECT_EQ(apply_uniform(U"kirkonkylän", 0.0, kAsciiAlnum, rng), U"kirkonkylän");
  for (int i = 0; i < 200; ++i) {
    const auto out = apply_uniform(U"kirkonkylän", 1.0, kAsciiAlnum, rng);
    ASSERT_EQ(out.size(), 11u);
    for (char32_t c : out) EXPECT_NE(kAsciiAlnum.find(c), std::u32string_view::npos);
  }
}

TEST(ApplyUniform, Errors) {
  NoiseRng rng(1);
  EXPECT_THROW(apply_uniform(U"a", 1.5, kAsciiAlnum, rng), ValidationError);
  EXPECT_THROW(apply_uniform(U"a", -0.1, kAsciiAlnum, rng), ValidationError);
  EXPECT_THROW(apply_uniform(U"a", 0.5, U"", rng), ValidationError);
  EXPECT_EQ(apply_uniform(U"a", 0.0, U"", rng), U"a");
}

TEST(ApplyUniform, KnownOcrReadingIsReachable) {
  bool found = false;
  for (std::uint64_t seed = 0; seed < 100000 && !found; ++seed) {
    NoiseRng rng = NoiseRng::for_record(seed, 0);
    found = apply_uniform(U"kirkonkylän", 0.2, U"bz", rng) == U"kzrkonkblän";
  }
  EXPECT_TRUE(found);
}

TEST(ApplyRealistic, IdentityAndOneHot) {
  ConfusionModel identity;
  for (char32_t c : testing::kFixtureAlphabet) identity.add(c, c, 10);
  ConfusionModel one_hot;
  one_hot.add(U'k', U't', 1);
  std::mt19937_64 gen(2);
  for (int i = 0; i < 500; ++i) {
    NoiseRng rng(i);
    std::u32string w;
    for (std::size_t n = gen() % 12; n > 0; --n) w.push_back(U"abkxyzä€"[gen() % 8]);
    EXPECT_EQ(apply_realistic(w, identity, rng), w);
  }
  NoiseRng rng(3);
  EXPECT_EQ(apply_realistic(U"kirkonkylän", one_hot, rng), U"tirtontylän");
  EXPECT_EQ(apply_realistic(U"kirjasto", one_hot, rng), U"tirjasto");
  EXPECT_EQ(apply_realistic(U"", one_hot, rng), U"");
}

TEST(ApplyRealistic, KnownOcrReadingIsReachable) {
  ConfusionModel ocr_like;
  for (char32_t c : std::u32string(U"irkonlä")) ocr_like.add(c, c, 1);
  ocr_like.add(U'k', U'k', 1);
  ocr_like.add(U'k', U't', 1);
  ocr_like.add(U'y', U'y', 1);
  ocr_like.add(U'y', U'v', 1);
  ocr_like.add(U'ä', U'l', 1);
  bool found = false;
  for (std::uint64_t seed = 0; seed < 10000 && !found; ++seed) {
    NoiseRng rng = NoiseRng::for_record(seed, 0);
    found = apply_realistic(U"kirkonkylän", ocr_like, rng) == U"tirkonkvlln";
  }
  EXPECT_TRUE(found);
}

TEST(NoiseRng, StreamsAreDistinctPerRecord) {
  auto a = NoiseRng::for_record(7, 0);
  auto b = NoiseRng::for_record(7, 1);
  auto c = NoiseRng::for_record(8, 0);
  auto a2 = NoiseRng::for_record(7, 0);
  const double x = a.uniform();
  EXPECT_EQ(x, a2.uniform());
  EXPECT_NE(x, b.uniform());
  EXPECT_NE(x, c.uniform());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(a.below(7), 7u);
  }
}

TEST(Synthesize, RealisticNeedsModel) {
  NoiseSpec spec;
  spec.kind = NoiseKind::kRealistic;
  EXPECT_THROW(synthesize(words_corpus(10, 1), spec, nullptr), ValidationError);
  spec.kind = NoiseKind::kUniform;
  EXPECT_THROW(synthesize(words_corpus(10, 1), spec, nullptr), ValidationError);
}

TEST(Synthesize, UniformRateResolution) {
  ConfusionModel m;
  m.add(U'a', U'a', 90);
  m.add(U'a', U'b', 10);
  NoiseSpec spec;
  spec.kind = NoiseKind::kUniform;
  EXPECT_DOUBLE_EQ(resolve_uniform_rate(spec, &m), 0.1);
  spec.rate = 0.3;
  EXPECT_DOUBLE_EQ(resolve_uniform_rate(spec, &m), 0.3);
  EXPECT_DOUBLE_EQ(resolve_uniform_rate(spec, nullptr), 0.3);
}

TEST(Synthesize, DeterministicAndWorkerIndependent) {
  const Corpus corpus = words_corpus(5000, 4);
  const auto model = testing::make_truth_model(testing::kFixtureAlphabet, 0.1, 5);
  NoiseSpec spec;
  spec.seed = 99;
  const auto a = synthesize(corpus, spec, &model, 1);
  EXPECT_EQ(a.size(), 5000u);
  EXPECT_EQ(a, synthesize(corpus, spec, &model, 1));
  EXPECT_EQ(a, synthesize(corpus, spec, &model, 4));
  spec.seed = 100;
  EXPECT_NE(a, synthesize(corpus, spec, &model, 1));
  for (const auto& p : a) EXPECT_EQ(p.noisy.size(), p.clean.size());
  const auto tokens = tokenize(corpus.documents()[0].text);
  EXPECT_EQ(a[0].clean, tokens[0].text);
  EXPECT_EQ(a[1].clean, tokens[1].text);
}

TEST(Synthesize, UniformRateFollowsModelAverage) {
  const Corpus corpus = words_corpus(100000, 6);
  const auto model = testing::make_truth_model(testing::kFixtureAlphabet, 0.08, 7);
  NoiseSpec spec;
  spec.kind = NoiseKind::kUniform;
  spec.seed = 8;
  const auto data = synthesize(corpus, spec, &model, 2);
  std::size_t changed = 0, chars = 0, in_set = 0;
  for (const auto& p : data) {
    for (std::size_t i = 0; i < p.clean.size(); ++i) {
      changed += p.noisy[i] != p.clean[i];
      in_set += kAsciiAlnum.find(p.clean[i]) != std::u32string_view::npos;
    }
    chars += p.clean.size();
  }
  const double rate = average_cer(model);
  const double effective =
      rate * (1.0 - static_cast<double>(in_set) / static_cast<double>(chars) / kAsciiAlnum.size());
  EXPECT_NEAR(static_cast<double>(changed) / static_cast<double>(chars), effective, 0.01);
}

TEST(Synthesize, RealisticFrequenciesMatchModelRows) {
  const Corpus corpus = words_corpus(100000, 9);
  const auto model = testing::make_truth_model(testing::kFixtureAlphabet, 0.1, 10);
  NoiseSpec spec;
  spec.seed = 11;
  ConfusionModel observed;
  for (const auto& p : synthesize(corpus, spec, &model, 2)) {
    for (std::size_t i = 0; i < p.clean.size(); ++i) observed.add(p.clean[i], p.noisy[i]);
  }
  std::size_t rows = 0;
  for (const auto& [clean, row] : observed.counts()) {
    if (observed.row_total(clean) < 500) continue;
    ++rows;
    EXPECT_LT(testing::row_l1(observed, model, clean), 0.05);
  }
  EXPECT_EQ(rows, testing::kFixtureAlphabet.size());
}

TEST(Synthesize, PropertyEmpiricalRateWithinThreeSigma) {
  const auto model = testing::make_truth_model(testing::kFixtureAlphabet, 0.12, 12);
  const std::u32string text = U"kirkonkylänkoulussaoliväkeä";
  double expected = 0.0;
  for (char32_t c : text) expected += 1.0 - model.probability(c, c);
  expected /= static_cast<double>(text.size());
  const ConfusionSampler sampler(model);
  const std::size_t reps = 400;
  const double n = static_cast<double>(reps * text.size());
  const double bound = 3.0 * std::sqrt(expected * (1.0 - expected) / n);
  std::size_t within = 0;
  const std::size_t runs = 300;
  for (std::size_t run = 0; run < runs; ++run) {
    std::size_t changed = 0;
    for (std::size_t r = 0; r < reps; ++r) {
      NoiseRng rng = NoiseRng::for_record(run, r);
      const auto out = apply_realistic(text, sampler, rng);
      for (std::size_t i = 0; i < text.size(); ++i) changed += out[i] != text[i];
    }
    within += std::abs(static_cast<double>(changed) / n - expected) < bound;
  }
  EXPECT_GE(static_cast<double>(within), 0.99 * runs);
}

TEST(ExportDataset, PlainAndCharSpaced) {
  TempDir dir;
  const ParallelDataset data{{U"tirkonkvlln", U"kirkonkylän"}, {U"ja", U"ja"}};
  const auto plain = export_dataset(data, ExportFormat::kPlain, dir.path() / "d.tsv");
  ASSERT_EQ(plain.size(), 1u);
  EXPECT_EQ(slurp(plain[0]), "tirkonkvlln\tkirkonkyl\xC3\xA4n\nja\tja\n");
  EXPECT_EQ(read_plain_dataset(plain[0]), data);
  const auto spaced = export_dataset(data, ExportFormat::kCharSpaced, dir.path() / "d");
  ASSERT_EQ(spaced.size(), 2u);
  EXPECT_EQ(spaced[0], dir.path() / "d.src");
  EXPECT_EQ(slurp(spaced[0]), "t i r k o n k v l l n\nj a\n");
  EXPECT_EQ(slurp(spaced[1]), "k i r k o n k y l \xC3\xA4 n\nj a\n");
}

TEST(ExportDataset, EmptyDatasetGivesEmptyFiles) {
  TempDir dir;
  for (const auto& p : export_dataset({}, ExportFormat::kCharSpaced, dir.path() / "e")) {
    EXPECT_TRUE(fs::exists(p));
    EXPECT_EQ(fs::file_size(p), 0u);
  }
  EXPECT_EQ(fs::file_size(export_dataset({}, ExportFormat::kPlain, dir.path() / "e.tsv")[0]), 0u);
}

TEST(ExportDataset, IoErrors) {
  EXPECT_THROW(export_dataset({}, ExportFormat::kPlain, "/nonexistent/dir/x.tsv"), IoError);
  EXPECT_THROW(read_plain_dataset("/nonexistent/x.tsv"), IoError);
}

}  // namespace
}  // namespace ocrnoise
