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

#include "ocrnoise/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "ocrnoise/corpus.hpp"
#include "ocrnoise/errors.hpp"
#include "ocrnoise/metrics.hpp"
#include "ocrnoise/parallel.hpp"

namespace ocrnoise {

void GroupingParams::validate() const {
  if (!(dist_threshold >= 0.0)) throw ValidationError("dist_threshold must be >= 0");
  if (!(support_fraction >= 0.0 && support_fraction <= 1.0)) {
    throw ValidationError("support_fraction must be in [0, 1]");
  }
}

namespace {

struct WordStats {
  std::size_t count = 0;
  std::set<std::size_t> spans;
};

std::size_t distance_bound(double threshold, std::size_t a, std::size_t b) {
  return static_cast<std::size_t>(
      std::ceil(threshold * static_cast<double>(std::max(a, b))));
}

}  // namespace

std::vector<WordGroup> group_words(const ReuseCluster& cluster,
                                   const GroupingParams& params) {
  params.validate();
  std::map<std::u32string, WordStats> stats;
  for (std::size_t s = 0; s < cluster.spans.size(); ++s) {
    for (auto& token : tokenize(cluster.spans[s].text)) {
      auto& entry = stats[std::move(token.text)];
      ++entry.count;
      entry.spans.insert(s);
    }
  }

  using Entry = std::pair<const std::u32string, WordStats>;
  std::vector<const Entry*> order;
  order.reserve(stats.size());
  for (const auto& entry : stats) order.push_back(&entry);
  // std::map already orders words, so a stable sort keeps ties by codepoint.
  std::stable_sort(order.begin(), order.end(), [](const Entry* a, const Entry* b) {
    return a->second.count > b->second.count;
  });

  const double needed =
      params.support_fraction * static_cast<double>(cluster.spans.size());
  std::vector<bool> grouped(order.size(), false);
  std::vector<WordGroup> groups;
  for (std::size_t p = 0; p < order.size(); ++p) {
    if (grouped[p]) continue;
    grouped[p] = true;
    const std::u32string& pivot = order[p]->first;
    std::vector<std::size_t> members{p};
    for (std::size_t w = p + 1; w < order.size(); ++w) {
      if (grouped[w]) continue;
      const std::u32string& word = order[w]->first;
      const std::size_t bound =
          distance_bound(params.dist_threshold, word.size(), pivot.size());
      const std::size_t diff = word.size() > pivot.size()
                                   ? word.size() - pivot.size()
                                   : pivot.size() - word.size();
      if (diff > bound) continue;
      if (edit_distance(word, pivot) <= bound) {
        grouped[w] = true;
        members.push_back(w);
      }
    }

    std::set<std::size_t> support;
    WordGroup group;
    for (std::size_t m : members) {
      group.variants.push_back({order[m]->first, order[m]->second.count});
      support.insert(order[m]->second.spans.begin(), order[m]->second.spans.end());
    }
    group.support = support.size();
    if (static_cast<double>(group.support) < needed) continue;
    group.representative = positional_consensus(group.variants);
    groups.push_back(std::move(group));
  }
  return groups;
}

std::u32string positional_consensus(std::span<const WordVariant> variants) {
  if (variants.empty()) {
    throw ValidationError("positional_consensus needs at least one variant");
  }
  std::map<std::size_t, std::size_t> length_weight;
  for (const auto& v : variants) length_weight[v.word.size()] += v.count;
  std::size_t modal = 0, modal_weight = 0;
  for (const auto& [len, weight] : length_weight) {
    if (weight > modal_weight) {  // ascending lengths: ties keep the shorter
      modal = len;
      modal_weight = weight;
    }
  }

  std::u32string out(modal, U'\0');
  for (std::size_t i = 0; i < modal; ++i) {
    std::map<char32_t, std::size_t> votes;
    for (const auto& v : variants) {
      if (v.word.size() == modal) votes[v.word[i]] += v.count;
    }
    std::size_t best = 0;
    for (const auto& [c, n] : votes) {
      if (n > best) {
        best = n;
        out[i] = c;
      }
    }
  }
  return out;
}

std::vector<Substitution> char_substitutions(std::u32string_view variant,
                                             std::u32string_view representative) {
  const std::size_t n = variant.size(), m = representative.size();
  std::vector<std::size_t> dp((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& {
    return dp[i * (m + 1) + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      at(i, j) = std::min({at(i - 1, j - 1) + (variant[i - 1] != representative[j - 1]),
                           at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  std::vector<Substitution> out;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        at(i, j) == at(i - 1, j - 1) + (variant[i - 1] != representative[j - 1])) {
      out.push_back({representative[j - 1], variant[i - 1]});
      --i;
      --j;
    } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      --i;  // extra character in the variant
    } else {
      --j;  // representative character missing from the variant
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

ConfusionModel estimate_confusion(std::span<const ReuseCluster> clusters,
                                  const GroupingParams& params,
                                  unsigned workers) {
  params.validate();
  std::vector<ConfusionModel> partial(clusters.size());
  parallel_for(clusters.size(), workers, [&](std::size_t c) {
    for (const WordGroup& group : group_words(clusters[c], params)) {
      for (const WordVariant& v : group.variants) {
        for (const Substitution& s : char_substitutions(v.word, group.representative)) {
          partial[c].add(s.clean, s.observed, v.count);
        }
      }
    }
  });
  ConfusionModel model;
  for (const auto& p : partial) model.merge(p);
  return model;
}

}  // namespace ocrnoise
