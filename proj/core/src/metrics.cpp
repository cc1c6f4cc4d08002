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

#include "ocrnoise/metrics.hpp"

#include <cstdio>

#include "ocrnoise/corpus.hpp"
#include "ocrnoise/errors.hpp"
#include "ocrnoise/parallel.hpp"

namespace ocrnoise {

std::size_t edit_distance(std::u32string_view a, std::u32string_view b) {
  return levenshtein<char32_t>({a.data(), a.size()}, {b.data(), b.size()});
}

namespace {

std::vector<std::u32string> words(std::u32string_view text) {
  std::vector<std::u32string> out;
  for (auto& token : tokenize(text)) out.push_back(std::move(token.text));
  return out;
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

EvalReport evaluate(std::span<const std::u32string> hypotheses,
                    std::span<const std::u32string> references,
                    unsigned workers) {
  if (hypotheses.size() != references.size()) {
    throw ValidationError("hypothesis count " +
                          std::to_string(hypotheses.size()) +
                          " differs from reference count " +
                          std::to_string(references.size()));
  }
  struct Counts {
    std::size_t char_edits, char_total, word_edits, word_total;
  };
  std::vector<Counts> per_pair(hypotheses.size());
  parallel_for(hypotheses.size(), workers, [&](std::size_t i) {
    const auto hyp_words = words(hypotheses[i]);
    const auto ref_words = words(references[i]);
    per_pair[i] = {edit_distance(hypotheses[i], references[i]),
                   references[i].size(),
                   levenshtein<std::u32string>(hyp_words, ref_words),
                   ref_words.size()};
  });

  EvalReport report;
  report.pair_count = hypotheses.size();
  for (const Counts& c : per_pair) {
    report.char_edits += c.char_edits;
    report.char_ref_total += c.char_total;
    report.word_edits += c.word_edits;
    report.word_ref_total += c.word_total;
  }
  report.cer = ratio(report.char_edits, report.char_ref_total);
  report.wer = ratio(report.word_edits, report.word_ref_total);
  return report;
}

nlohmann::json to_json(const EvalReport& r) {
  return {{"cer", r.cer},
          {"wer", r.wer},
          {"char_edits", r.char_edits},
          {"char_ref_total", r.char_ref_total},
          {"word_edits", r.word_edits},
          {"word_ref_total", r.word_ref_total},
          {"pair_count", r.pair_count}};
}

std::string format_report(const EvalReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "metric  rate      edits / total\n"
                "CER     %.4f    %zu / %zu\n"
                "WER     %.4f    %zu / %zu\n"
                "pairs   %zu\n",
                r.cer, r.char_edits, r.char_ref_total, r.wer, r.word_edits,
                r.word_ref_total, r.pair_count);
  return buf;
}

}  // namespace ocrnoise
