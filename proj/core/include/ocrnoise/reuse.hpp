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

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ocrnoise/alignment.hpp"
#include "ocrnoise/corpus.hpp"

namespace ocrnoise {

/// Seed-and-extend parameters. The defaults tolerate roughly 10-15%
/// character noise between copies.
struct AlignParams {
  std::size_t seed_len = 10;
  int match = 1;
  int mismatch = -1;
  int gap = -1;
  int x_drop = 10;
  std::size_t min_span_len = 80;
  int min_score = 40;
  double overlap_merge = 0.5;

  /// Throws ValidationError unless seed_len >= 4, 0 < overlap_merge <= 1
  /// and min_score > 0.
  void validate() const;
  ScoringScheme scoring() const { return {match, mismatch, gap}; }
};

/// A slice [start, end) of one document, codepoint offsets.
struct Span {
  std::string doc_id;
  std::size_t start = 0;
  std::size_t end = 0;
  std::u32string text;

  std::size_t length() const { return end - start; }

  friend bool operator==(const Span& a, const Span& b) {
    return a.doc_id == b.doc_id && a.start == b.start && a.end == b.end;
  }
  friend std::strong_ordering operator<=>(const Span& a, const Span& b) {
    if (auto c = a.doc_id <=> b.doc_id; c != 0) return c;
    if (auto c = a.start <=> b.start; c != 0) return c;
    return a.end <=> b.end;
  }
};

/// Two spans judged to be copies of each other. `first` orders before
/// `second`; `score` is their optimal local alignment score.
struct SpanPair {
  Span first;
  Span second;
  int score = 0;
};

struct ReuseCluster {
  std::size_t id = 0;
  std::vector<Span> spans;
};

/// Finds repeated passages. Every seed_len-gram is hashed and bucketed;
/// each seed hit that starts a new run of matching seeds on its diagonal is
/// extended both ways with X-drop alignment, and the extended region is
/// trimmed to its optimal local alignment. Hits inside an already extended
/// region of the same document pair are skipped, and candidates that
/// overlap on both sides are merged. Output is sorted by
/// (first.doc, first.start, second.doc, second.start) and does not depend on
/// `workers`.
std::vector<SpanPair> detect_pairs(const Corpus& corpus,
                                   const AlignParams& params,
                                   unsigned workers = 1);

/// Single-linkage clustering of paired spans. Same-document spans that
/// overlap by at least overlap_merge of the shorter one are merged into
/// their union and linked. Clusters are sorted by their first span and
/// numbered from 0.
std::vector<ReuseCluster> cluster_spans(std::span<const SpanPair> pairs,
                                        const AlignParams& params);

/// Keeps clusters with at least `min_size` spans, preserving order.
std::vector<ReuseCluster> filter_clusters(std::vector<ReuseCluster> clusters,
                                          std::size_t min_size = 20);

void write_pairs_jsonl(std::ostream& out, std::span<const SpanPair> pairs);
std::vector<SpanPair> read_pairs_jsonl(std::istream& in);

/// One cluster per line:
/// {"cluster_id": int, "spans": [{"doc", "start", "end", "text"}]}.
void write_clusters_jsonl(std::ostream& out,
                          std::span<const ReuseCluster> clusters);
std::vector<ReuseCluster> read_clusters_jsonl(std::istream& in);

}  // namespace ocrnoise
