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

#include "ocrnoise/noise.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include "ocrnoise/errors.hpp"
#include "ocrnoise/parallel.hpp"
#include "ocrnoise/text.hpp"

namespace ocrnoise {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

NoiseRng NoiseRng::for_record(std::uint64_t seed, std::uint64_t index) {
  return NoiseRng(splitmix64(splitmix64(seed) ^ index));
}

std::uint64_t NoiseRng::below(std::uint64_t n) {
  const auto r = static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
  return std::min(r, n - 1);
}

std::u32string apply_uniform(std::u32string_view word, double rate,
                             std::u32string_view replacement_set, NoiseRng& rng) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw ValidationError("rate must be in [0, 1]");
  if (replacement_set.empty() && rate > 0.0) {
    throw ValidationError("empty replacement set with non-zero rate");
  }
  std::u32string out(word);
  for (char32_t& c : out) {
    if (rng.uniform() < rate) c = replacement_set[rng.below(replacement_set.size())];
  }
  return out;
}

ConfusionSampler::ConfusionSampler(const ConfusionModel& model) {
  for (const auto& [clean, row] : model.counts()) {
    Table table;
    std::uint64_t running = 0;
    for (const auto& [observed, n] : row) {
      if (n == 0) continue;
      running += n;
      table.symbols.push_back(observed);
      table.cumulative.push_back(running);
    }
    if (running > 0) tables_.emplace(clean, std::move(table));
  }
}

char32_t ConfusionSampler::sample(char32_t clean, NoiseRng& rng) const {
  auto it = tables_.find(clean);
  if (it == tables_.end()) return clean;
  const Table& t = it->second;
  const std::uint64_t r = rng.below(t.cumulative.back());
  const auto pos = std::upper_bound(t.cumulative.begin(), t.cumulative.end(), r);
  return t.symbols[static_cast<std::size_t>(pos - t.cumulative.begin())];
}

std::u32string apply_realistic(std::u32string_view word,
                               const ConfusionSampler& sampler, NoiseRng& rng) {
  std::u32string out(word);
  for (char32_t& c : out) c = sampler.sample(c, rng);
  return out;
}

std::u32string apply_realistic(std::u32string_view word,
                               const ConfusionModel& model, NoiseRng& rng) {
  return apply_realistic(word, ConfusionSampler(model), rng);
}

double resolve_uniform_rate(const NoiseSpec& spec, const ConfusionModel* model) {
  if (spec.rate) return *spec.rate;
  if (model) return model->avg_cer();
  throw ValidationError("uniform noise needs a rate or a confusion model");
}

ParallelDataset synthesize(const Corpus& clean_corpus, const NoiseSpec& spec,
                           const ConfusionModel* model, unsigned workers) {
  std::vector<std::u32string> tokens;
  for (const auto& doc : clean_corpus.documents()) {
    for (auto& token : tokenize(doc.text)) tokens.push_back(std::move(token.text));
  }

  ParallelDataset out(tokens.size());
  if (spec.kind == NoiseKind::kRealistic) {
    if (!model) throw ValidationError("realistic noise requires a confusion model");
    const ConfusionSampler sampler(*model);
    parallel_for(tokens.size(), workers, [&](std::size_t i) {
      NoiseRng rng = NoiseRng::for_record(spec.seed, i);
      out[i] = {apply_realistic(tokens[i], sampler, rng), std::move(tokens[i])};
    });
  } else {
    const double rate = resolve_uniform_rate(spec, model);
    if (!(rate >= 0.0 && rate <= 1.0)) throw ValidationError("rate must be in [0, 1]");
    if (spec.replacement_set.empty() && rate > 0.0) {
      throw ValidationError("empty replacement set with non-zero rate");
    }
    parallel_for(tokens.size(), workers, [&](std::size_t i) {
      NoiseRng rng = NoiseRng::for_record(spec.seed, i);
      out[i] = {apply_uniform(tokens[i], rate, spec.replacement_set, rng),
                std::move(tokens[i])};
    });
  }
  return out;
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::string spaced(std::u32string_view token) {
  std::string out;
  for (std::size_t i = 0; i < token.size(); ++i) {
    if (i) out.push_back(' ');
    out += encode_utf8(token[i]);
  }
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("error while writing " + path.string());
}

}  // namespace

std::vector<std::filesystem::path> export_dataset(
    const ParallelDataset& dataset, ExportFormat format,
    const std::filesystem::path& path) {
  if (format == ExportFormat::kPlain) {
    auto out = open_output(path);
    for (const auto& pair : dataset) {
      out << encode_utf8(pair.noisy) << '\t' << encode_utf8(pair.clean) << '\n';
    }
    finish(out, path);
    return {path};
  }
  std::filesystem::path src = path, tgt = path;
  src += ".src";
  tgt += ".tgt";
  auto src_out = open_output(src);
  auto tgt_out = open_output(tgt);
  for (const auto& pair : dataset) {
    src_out << spaced(pair.noisy) << '\n';
    tgt_out << spaced(pair.clean) << '\n';
  }
  finish(src_out, src);
  finish(tgt_out, tgt);
  return {src, tgt};
}

ParallelDataset read_plain_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read file " + path.string());
  ParallelDataset out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": expected exactly one tab");
    }
    out.push_back({decode_utf8(std::string_view(line).substr(0, tab)),
                   decode_utf8(std::string_view(line).substr(tab + 1))});
  }
  return out;
}

}  // namespace ocrnoise
