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

#include "ocrnoise/char_lm.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "ocrnoise/errors.hpp"
#include "ocrnoise/text.hpp"

namespace ocrnoise {

CharLM::CharLM(std::size_t order, double smoothing)
    : order_(order), smoothing_(smoothing) {
  if (order < 2) throw ValidationError("LM order must be >= 2");
  if (!(smoothing >= 0.0)) throw ValidationError("LM smoothing must be >= 0");
  alphabet_.insert(kBoundary);
}

void CharLM::add_token(std::u32string_view token) {
  std::u32string padded = initial_context();
  padded += token;
  padded.push_back(kBoundary);
  for (char32_t c : token) alphabet_.insert(c);
  for (std::size_t i = order_ - 1; i < padded.size(); ++i) {
    auto& ctx = contexts_[padded.substr(i - (order_ - 1), order_ - 1)];
    ++ctx.total;
    ++ctx.next[padded[i]];
  }
}

std::uint64_t CharLM::count(std::u32string_view context, char32_t next) const {
  auto ctx = contexts_.find(std::u32string(context));
  if (ctx == contexts_.end()) return 0;
  auto it = ctx->second.next.find(next);
  return it == ctx->second.next.end() ? 0 : it->second;
}

double CharLM::probability(std::u32string_view context, char32_t next) const {
  std::uint64_t total = 0, n = 0;
  if (auto ctx = contexts_.find(std::u32string(context)); ctx != contexts_.end()) {
    total = ctx->second.total;
    if (auto it = ctx->second.next.find(next); it != ctx->second.next.end()) {
      n = it->second;
    }
  }
  const double denom = static_cast<double>(total) +
                       smoothing_ * static_cast<double>(alphabet_.size());
  if (denom <= 0.0) return 0.0;
  return (static_cast<double>(n) + smoothing_) / denom;
}

double CharLM::log_prob(std::u32string_view context, char32_t next) const {
  const double p = probability(context, next);
  return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
}

nlohmann::json CharLM::to_json() const {
  // Sorted so that serialization is byte-stable.
  std::map<std::string, std::map<std::string, std::uint64_t>> sorted;
  for (const auto& [ctx, counts] : contexts_) {
    auto& row = sorted[encode_utf8(ctx)];
    for (const auto& [c, n] : counts.next) row[encode_utf8(c)] = n;
  }
  nlohmann::json alphabet = nlohmann::json::array();
  for (char32_t c : alphabet_) alphabet.push_back(encode_utf8(c));
  return {{"order", order_},
          {"smoothing", smoothing_},
          {"alphabet", std::move(alphabet)},
          {"contexts", sorted}};
}

CharLM CharLM::from_json(const nlohmann::json& j) {
  try {
    CharLM lm(j.at("order").get<std::size_t>(), j.at("smoothing").get<double>());
    for (const auto& c : j.at("alphabet")) {
      const std::u32string s = decode_utf8(c.get<std::string>());
      if (s.size() != 1) throw ValidationError("LM alphabet entries must be single characters");
      lm.alphabet_.insert(s[0]);
    }
    for (const auto& [ctx_utf8, row] : j.at("contexts").items()) {
      const std::u32string ctx = decode_utf8(ctx_utf8);
      if (ctx.size() != lm.order_ - 1) {
        throw ValidationError("LM context length does not match order");
      }
      auto& counts = lm.contexts_[ctx];
      for (const auto& [next_utf8, n] : row.items()) {
        const std::u32string next = decode_utf8(next_utf8);
        if (next.size() != 1) throw ValidationError("LM entries must be single characters");
        const auto value = n.get<std::uint64_t>();
        counts.next[next[0]] += value;
        counts.total += value;
        lm.alphabet_.insert(next[0]);
      }
    }
    return lm;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed language model: ") + e.what());
  }
}

CharLM train_lm(const Corpus& clean_corpus, std::size_t order, double smoothing) {
  if (clean_corpus.empty()) throw ValidationError("cannot train a language model on an empty corpus");
  CharLM lm(order, smoothing);
  for (const auto& doc : clean_corpus.documents()) {
    for (const auto& token : tokenize(doc.text)) lm.add_token(token.text);
  }
  return lm;
}

}  // namespace ocrnoise
