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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ocrnoise/confusion.hpp"
#include "ocrnoise/corpus.hpp"

namespace ocrnoise {

/// ASCII letters and digits.
inline constexpr std::u32string_view kAsciiAlnum =
    U"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

enum class NoiseKind { kUniform, kRealistic };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kRealistic;
  /// Uniform only. When unset, the average CER of the supplied model is used.
  std::optional<double> rate;
  std::u32string replacement_set{kAsciiAlnum};
  std::uint64_t seed = 0;
};

/// Aligned training example; both sides have the same codepoint length.
struct ParallelPair {
  std::u32string noisy;
  std::u32string clean;

  friend bool operator==(const ParallelPair&, const ParallelPair&) = default;
};

using ParallelDataset = std::vector<ParallelPair>;

/// Random source for noise injection. Uniform variates are built from the
/// raw engine bits, so streams are identical across standard libraries.
class NoiseRng {
 public:
  explicit NoiseRng(std::uint64_t seed) : engine_(seed) {}

  /// The stream for record `index` of a run seeded with `seed`.
  static NoiseRng for_record(std::uint64_t seed, std::uint64_t index);

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

/// Replaces each codepoint with probability `rate` by a uniform draw from
/// `replacement_set`; the draw may return the original character.
/// Throws ValidationError for a rate outside [0, 1] or an empty set with
/// rate > 0.
std::u32string apply_uniform(std::u32string_view word, double rate,
                             std::u32string_view replacement_set, NoiseRng& rng);

/// Per-character cumulative tables built once from a ConfusionModel.
class ConfusionSampler {
 public:
  explicit ConfusionSampler(const ConfusionModel& model);

  /// Draw from the row of `clean`; characters without a row map to
  /// themselves.
  char32_t sample(char32_t clean, NoiseRng& rng) const;

 private:
  struct Table {
    std::vector<char32_t> symbols;
    std::vector<std::uint64_t> cumulative;
  };
  std::unordered_map<char32_t, Table> tables_;
};

std::u32string apply_realistic(std::u32string_view word,
                               const ConfusionSampler& sampler, NoiseRng& rng);
std::u32string apply_realistic(std::u32string_view word,
                               const ConfusionModel& model, NoiseRng& rng);

/// Uniform noise level for `spec`: the explicit rate, else the model's
/// average CER. Throws ValidationError when neither is available.
double resolve_uniform_rate(const NoiseSpec& spec, const ConfusionModel* model);

/// Noises every token of the corpus (documents in id order, tokens in text
/// order). Record i draws from NoiseRng::for_record(spec.seed, i), so the
/// result is independent of `workers`. Realistic noise requires a model.
ParallelDataset synthesize(const Corpus& clean_corpus, const NoiseSpec& spec,
                           const ConfusionModel* model, unsigned workers = 1);

enum class ExportFormat {
  kPlain,       // <path>: "noisy\tclean" per line
  kCharSpaced,  // <path>.src / <path>.tgt: codepoints separated by spaces
};

/// Returns the files written. Throws IoError on failure.
std::vector<std::filesystem::path> export_dataset(
    const ParallelDataset& dataset, ExportFormat format,
    const std::filesystem::path& path);

/// Inverse of the plain export; throws ValidationError naming the line on a
/// malformed row.
ParallelDataset read_plain_dataset(const std::filesystem::path& path);

}  // namespace ocrnoise
