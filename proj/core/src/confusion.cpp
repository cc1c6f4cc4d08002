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

#include "ocrnoise/confusion.hpp"

#include <cmath>
#include <string>

#include "ocrnoise/errors.hpp"
#include "ocrnoise/text.hpp"

namespace ocrnoise {

void ConfusionModel::add(char32_t clean, char32_t observed, std::uint64_t n) {
  alphabet_.insert(clean);
  alphabet_.insert(observed);
  if (n == 0) return;
  counts_[clean][observed] += n;
  row_totals_[clean] += n;
  total_ += n;
  if (clean != observed) off_diagonal_ += n;
}

void ConfusionModel::merge(const ConfusionModel& other) {
  for (char32_t c : other.alphabet_) alphabet_.insert(c);
  for (const auto& [clean, row] : other.counts_) {
    for (const auto& [observed, n] : row) add(clean, observed, n);
  }
}

std::uint64_t ConfusionModel::count(char32_t clean, char32_t observed) const {
  auto row = counts_.find(clean);
  if (row == counts_.end()) return 0;
  auto cell = row->second.find(observed);
  return cell == row->second.end() ? 0 : cell->second;
}

std::uint64_t ConfusionModel::row_total(char32_t clean) const {
  auto it = row_totals_.find(clean);
  return it == row_totals_.end() ? 0 : it->second;
}

double ConfusionModel::probability(char32_t clean, char32_t observed) const {
  const std::uint64_t total = row_total(clean);
  if (total == 0) return 0.0;
  return static_cast<double>(count(clean, observed)) / static_cast<double>(total);
}

double ConfusionModel::avg_cer() const {
  if (total_ == 0) return 0.0;
  return static_cast<double>(off_diagonal_) / static_cast<double>(total_);
}

nlohmann::json to_json(const ConfusionModel& model) {
  nlohmann::json alphabet = nlohmann::json::array();
  for (char32_t c : model.alphabet()) alphabet.push_back(encode_utf8(c));
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [clean, row] : model.counts()) {
    nlohmann::json cells = nlohmann::json::object();
    for (const auto& [observed, n] : row) cells[encode_utf8(observed)] = n;
    counts[encode_utf8(clean)] = std::move(cells);
  }
  return {{"alphabet", std::move(alphabet)},
          {"counts", std::move(counts)},
          {"avg_cer", model.avg_cer()}};
}

namespace {

char32_t single_char(const std::string& s) {
  const std::u32string decoded = decode_utf8(s);
  if (decoded.size() != 1) {
    throw ValidationError("expected a single character, got '" + s + "'");
  }
  return decoded[0];
}

}  // namespace

ConfusionModel confusion_from_json(const nlohmann::json& j) {
  ConfusionModel model;
  try {
    for (const auto& c : j.at("alphabet")) {
      model.note_symbol(single_char(c.get<std::string>()));
    }
    for (const auto& [clean, row] : j.at("counts").items()) {
      const char32_t clean_char = single_char(clean);
      for (const auto& [observed, n] : row.items()) {
        if (!n.is_number_unsigned() && !(n.is_number_integer() && n.get<std::int64_t>() >= 0)) {
          throw ValidationError("count for '" + clean + "' -> '" + observed +
                                "' is not a non-negative integer");
        }
        model.add(clean_char, single_char(observed), n.get<std::uint64_t>());
      }
    }
    if (j.contains("avg_cer")) {
      const double stated = j.at("avg_cer").get<double>();
      if (std::abs(stated - model.avg_cer()) > 1e-9) {
        throw ValidationError("avg_cer " + std::to_string(stated) +
                              " disagrees with counts (" +
                              std::to_string(model.avg_cer()) + ")");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed confusion model: ") + e.what());
  }
  return model;
}

ConfusionModel make_uniform_confusion(std::span<const char32_t> clean_chars,
                                      double rate,
                                      std::u32string_view replacement_set,
                                      std::uint64_t scale) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw ValidationError("rate must be in [0, 1]");
  }
  if (replacement_set.empty() && rate > 0.0) {
    throw ValidationError("empty replacement set with non-zero rate");
  }
  ConfusionModel model;
  for (char32_t clean : clean_chars) {
    std::size_t targets = 0;
    for (char32_t r : replacement_set) targets += (r != clean);
    const auto keep = static_cast<std::uint64_t>(
        std::llround((1.0 - rate) * static_cast<double>(scale)));
    model.add(clean, clean, keep);
    if (targets == 0) continue;
    const auto each = static_cast<std::uint64_t>(std::llround(
        rate * static_cast<double>(scale) / static_cast<double>(targets)));
    for (char32_t r : replacement_set) {
      if (r != clean) model.add(clean, r, each);
    }
  }
  return model;
}

}  // namespace ocrnoise
