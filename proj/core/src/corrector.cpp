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

#include "ocrnoise/corrector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ocrnoise/errors.hpp"

namespace ocrnoise {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Hypothesis {
  std::u32string text;
  std::u32string context;
  double score;
};

bool better(double score, const std::u32string& text, const Hypothesis& than) {
  return score > than.score || (score == than.score && text < than.text);
}

}  // namespace

void DecoderParams::validate() const {
  if (beam_width == 0) throw ValidationError("beam_width must be positive");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ValidationError("lambda must be in [0, 1]");
  if (!(candidate_floor >= 0.0)) throw ValidationError("candidate_floor must be >= 0");
}

ChannelCorrector::ChannelCorrector(const ConfusionModel& channel,
                                   const CharLM& lm, DecoderParams params)
    : channel_(channel), lm_(lm), params_(params) {
  params_.validate();
  for (const auto& [clean, row] : channel_.counts()) {
    const double total = static_cast<double>(channel_.row_total(clean));
    for (const auto& [observed, n] : row) {
      const double p = static_cast<double>(n) / total;
      if (n > 0 && p >= params_.candidate_floor) {
        by_observed_[observed].push_back({clean, std::log(p)});
      }
    }
  }
  // Rows are visited in clean-character order, so each list is sorted.
}

std::vector<ChannelCorrector::Candidate> ChannelCorrector::candidates(
    char32_t observed) const {
  std::vector<Candidate> out;
  if (auto it = by_observed_.find(observed); it != by_observed_.end()) out = it->second;
  if (!channel_.has_row(observed)) {
    // Characters the channel never saw as clean input pass through.
    Candidate self{observed, 0.0};
    out.insert(std::upper_bound(out.begin(), out.end(), self,
                                [](const Candidate& a, const Candidate& b) {
                                  return a.clean < b.clean;
                                }),
               self);
  }
  return out;
}

double ChannelCorrector::channel_log_prob(char32_t clean, char32_t observed) const {
  if (!channel_.has_row(clean)) return clean == observed ? 0.0 : kNegInf;
  const double p = channel_.probability(clean, observed);
  if (p <= 0.0 || p < params_.candidate_floor) return kNegInf;
  return std::log(p);
}

double ChannelCorrector::step(double log_channel, double log_lm) const {
  const double lambda = params_.lambda;
  if (log_channel == kNegInf) return kNegInf;
  if (lambda == 1.0) return log_channel;
  if (lambda == 0.0) return log_lm;
  return lambda * log_channel + (1.0 - lambda) * log_lm;
}

double ChannelCorrector::score(std::u32string_view noisy,
                               std::u32string_view clean) const {
  if (noisy.size() != clean.size()) return kNegInf;
  std::u32string context = lm_.initial_context();
  double total = 0.0;
  for (std::size_t i = 0; i < noisy.size(); ++i) {
    const double lc = channel_log_prob(clean[i], noisy[i]);
    const double ll = params_.lambda == 1.0 ? 0.0 : lm_.log_prob(context, clean[i]);
    total += step(lc, ll);
    context.erase(0, 1);
    context.push_back(clean[i]);
  }
  if (params_.lambda != 1.0) {
    total += (1.0 - params_.lambda) * lm_.log_prob(context, CharLM::kBoundary);
  }
  return total;
}

Correction ChannelCorrector::correct(std::u32string_view noisy) const {
  const bool use_lm = params_.lambda != 1.0;
  std::vector<Hypothesis> beam{{std::u32string(), lm_.initial_context(), 0.0}};
  std::unordered_map<std::u32string, Hypothesis> next;
  for (char32_t observed : noisy) {
    const std::vector<Candidate> options = candidates(observed);
    next.clear();
    for (const Hypothesis& hyp : beam) {
      for (const Candidate& cand : options) {
        const double ll = use_lm ? lm_.log_prob(hyp.context, cand.clean) : 0.0;
        const double s = hyp.score + step(cand.log_channel, ll);
        if (s == kNegInf || std::isnan(s)) continue;
        std::u32string text = hyp.text;
        text.push_back(cand.clean);
        std::u32string context = hyp.context.substr(1);
        context.push_back(cand.clean);
        auto [it, inserted] = next.try_emplace(context, Hypothesis{text, context, s});
        if (!inserted && better(s, text, it->second)) {
          it->second.text = std::move(text);
          it->second.score = s;
        }
      }
    }
    if (next.empty()) return {std::u32string(noisy), kNegInf};
    beam.clear();
    for (auto& [ctx, hyp] : next) beam.push_back(std::move(hyp));
    std::sort(beam.begin(), beam.end(), [](const Hypothesis& a, const Hypothesis& b) {
      return better(a.score, a.text, b);
    });
    if (beam.size() > params_.beam_width) beam.resize(params_.beam_width);
  }

  Correction best{std::u32string(noisy), kNegInf};
  bool found = false;
  for (const Hypothesis& hyp : beam) {
    double s = hyp.score;
    if (use_lm) s += (1.0 - params_.lambda) * lm_.log_prob(hyp.context, CharLM::kBoundary);
    if (s == kNegInf || std::isnan(s)) continue;
    if (!found || s > best.score || (s == best.score && hyp.text < best.text)) {
      best = {hyp.text, s};
      found = true;
    }
  }
  return best;
}

std::u32string correct_token(std::u32string_view noisy,
                             const ConfusionModel& channel, const CharLM& lm,
                             const DecoderParams& params) {
  return ChannelCorrector(channel, lm, params).correct(noisy).text;
}

}  // namespace ocrnoise
