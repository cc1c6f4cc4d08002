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

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ocrnoise/char_lm.hpp"
#include "ocrnoise/confusion.hpp"

namespace ocrnoise {

struct DecoderParams {
  std::size_t beam_width = 16;
  /// Weight of the channel term; the language model gets 1 - lambda.
  double lambda = 0.5;
  /// Clean characters c with P(observed | c) below this are not expanded.
  double candidate_floor = 1e-6;

  void validate() const;
};

struct Correction {
  std::u32string text;
  /// lambda * log P_channel(noisy | text) + (1 - lambda) * log P_lm(text).
  double score = 0.0;
};

/// Noisy-channel decoder for single tokens under one-to-one confusions:
/// beam search over positions with hypotheses recombined on their language
/// model context. With a beam at least as wide as the number of contexts
/// the search is an exact Viterbi decode. Equal scores are resolved towards
/// the lexicographically smaller string.
class ChannelCorrector {
 public:
  struct Candidate {
    char32_t clean;
    double log_channel;
  };

  ChannelCorrector(const ConfusionModel& channel, const CharLM& lm,
                   DecoderParams params = {});

  /// Returns the input unchanged with score -inf when no candidate string
  /// has finite score.
  Correction correct(std::u32string_view noisy) const;

  /// Objective value of reading `clean` as `noisy`; -inf when impossible.
  double score(std::u32string_view noisy, std::u32string_view clean) const;

  /// Clean characters that may produce `observed`, in codepoint order.
  std::vector<Candidate> candidates(char32_t observed) const;

  const DecoderParams& params() const { return params_; }

 private:
  double channel_log_prob(char32_t clean, char32_t observed) const;
  double step(double log_channel, double log_lm) const;

  const ConfusionModel& channel_;
  const CharLM& lm_;
  DecoderParams params_;
  std::unordered_map<char32_t, std::vector<Candidate>> by_observed_;
};

std::u32string correct_token(std::u32string_view noisy,
                             const ConfusionModel& channel, const CharLM& lm,
                             const DecoderParams& params = {});

}  // namespace ocrnoise
