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

#include "ocrnoise/reuse.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <tuple>

#include <json.hpp>

#include "ocrnoise/errors.hpp"
#include "ocrnoise/parallel.hpp"
#include "ocrnoise/text.hpp"

namespace ocrnoise {

void AlignParams::validate() const {
  if (seed_len < 4) throw ValidationError("seed_len must be >= 4");
  if (!(overlap_merge > 0.0 && overlap_merge <= 1.0)) {
    throw ValidationError("overlap_merge must be in (0, 1]");
  }
  if (min_score <= 0) throw ValidationError("min_score must be > 0");
  if (x_drop < 0) throw ValidationError("x_drop must be >= 0");
}

namespace {

struct SeedEntry {
  std::uint64_t hash;
  std::uint32_t doc;
  std::uint32_t pos;
};

struct SeedHit {
  std::uint32_t doc_a, doc_b, pos_a, pos_b;

  auto key() const { return std::tie(doc_a, doc_b, pos_a, pos_b); }
};

// Half-open boxes in the coordinates of one document pair.
struct Region {
  std::size_t a_begin, a_end, b_begin, b_end;

  bool contains(std::size_t a, std::size_t b) const {
    return a >= a_begin && a < a_end && b >= b_begin && b < b_end;
  }
};

struct Candidate {
  Region region;
  int score;
};

std::size_t overlap(std::size_t b1, std::size_t e1, std::size_t b2,
                    std::size_t e2) {
  const std::size_t b = std::max(b1, b2), e = std::min(e1, e2);
  return e > b ? e - b : 0;
}

bool overlaps_enough(std::size_t b1, std::size_t e1, std::size_t b2,
                     std::size_t e2, double fraction) {
  const std::size_t shorter = std::min(e1 - b1, e2 - b2);
  if (shorter == 0) return false;
  return static_cast<double>(overlap(b1, e1, b2, e2)) >=
         fraction * static_cast<double>(shorter);
}

std::vector<SeedEntry> hash_seeds(const std::vector<Document>& docs,
                                  std::size_t k) {
  constexpr std::uint64_t kBase = 0x100000001B3ULL;
  std::uint64_t top = 1;
  for (std::size_t i = 1; i < k; ++i) top *= kBase;
  std::vector<SeedEntry> seeds;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const auto& text = docs[d].text;
    if (text.size() < k) continue;
    std::uint64_t h = 0;
    for (std::size_t i = 0; i < k; ++i) h = h * kBase + text[i];
    seeds.push_back({h, static_cast<std::uint32_t>(d), 0});
    for (std::size_t p = 1; p + k <= text.size(); ++p) {
      h = (h - text[p - 1] * top) * kBase + text[p + k - 1];
      seeds.push_back({h, static_cast<std::uint32_t>(d),
                       static_cast<std::uint32_t>(p)});
    }
  }
  return seeds;
}

std::vector<SeedHit> collect_hits(const std::vector<Document>& docs,
                                  std::size_t k) {
  std::vector<SeedEntry> seeds = hash_seeds(docs, k);
  auto window = [&](const SeedEntry& e) {
    return std::u32string_view(docs[e.doc].text).substr(e.pos, k);
  };
  std::sort(seeds.begin(), seeds.end(), [](const SeedEntry& a, const SeedEntry& b) {
    return std::tie(a.hash, a.doc, a.pos) < std::tie(b.hash, b.doc, b.pos);
  });

  std::vector<SeedHit> hits;
  std::size_t run_begin = 0;
  while (run_begin < seeds.size()) {
    std::size_t run_end = run_begin + 1;
    while (run_end < seeds.size() && seeds[run_end].hash == seeds[run_begin].hash) {
      ++run_end;
    }
    if (run_end - run_begin >= 2) {
      // Split hash collisions into classes of identical text.
      std::stable_sort(seeds.begin() + run_begin, seeds.begin() + run_end,
                       [&](const SeedEntry& a, const SeedEntry& b) {
                         return window(a) < window(b);
                       });
      std::size_t cls = run_begin;
      while (cls < run_end) {
        std::size_t cls_end = cls + 1;
        while (cls_end < run_end && window(seeds[cls_end]) == window(seeds[cls])) {
          ++cls_end;
        }
        for (std::size_t i = cls; i < cls_end; ++i) {
          for (std::size_t j = i + 1; j < cls_end; ++j) {
            const SeedEntry& a = seeds[i];
            const SeedEntry& b = seeds[j];
            // A hit whose left neighbours also match continues a run that
            // is already represented by an earlier hit on this diagonal.
            if (a.pos > 0 && b.pos > 0 &&
                docs[a.doc].text[a.pos - 1] == docs[b.doc].text[b.pos - 1]) {
              continue;
            }
            hits.push_back({a.doc, b.doc, a.pos, b.pos});
          }
        }
        cls = cls_end;
      }
    }
    run_begin = run_end;
  }
  std::sort(hits.begin(), hits.end(),
            [](const SeedHit& a, const SeedHit& b) { return a.key() < b.key(); });
  return hits;
}

std::u32string reversed(std::u32string_view s) {
  return std::u32string(s.rbegin(), s.rend());
}

// Aligns the given boxes of two texts and trims to the local optimum.
Candidate trim(std::u32string_view a, std::u32string_view b, const Region& box,
               const ScoringScheme& scoring) {
  const LocalAlignment local =
      local_align(a.substr(box.a_begin, box.a_end - box.a_begin),
                  b.substr(box.b_begin, box.b_end - box.b_begin), scoring);
  return {{box.a_begin + local.a_begin, box.a_begin + local.a_end,
           box.b_begin + local.b_begin, box.b_begin + local.b_end},
          local.score};
}

std::vector<Candidate> align_document_pair(std::u32string_view a,
                                           std::u32string_view b,
                                           std::span<const SeedHit> hits,
                                           const AlignParams& params) {
  const ScoringScheme scoring = params.scoring();
  const std::size_t k = params.seed_len;
  std::vector<Region> extended;
  std::vector<Candidate> found;
  for (const SeedHit& hit : hits) {
    const bool covered = std::any_of(
        extended.begin(), extended.end(),
        [&](const Region& r) { return r.contains(hit.pos_a, hit.pos_b); });
    if (covered) continue;
    const Extension right =
        xdrop_extend(a.substr(hit.pos_a + k), b.substr(hit.pos_b + k), scoring,
                     params.x_drop);
    const Extension left =
        xdrop_extend(reversed(a.substr(0, hit.pos_a)),
                     reversed(b.substr(0, hit.pos_b)), scoring, params.x_drop);
    const Region box{hit.pos_a - left.a_len, hit.pos_a + k + right.a_len,
                     hit.pos_b - left.b_len, hit.pos_b + k + right.b_len};
    extended.push_back(box);
    found.push_back(trim(a, b, box, scoring));
  }

  // Merge candidates that describe the same reuse on both sides.
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < found.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < found.size() && !merged; ++j) {
        const Region& x = found[i].region;
        const Region& y = found[j].region;
        if (overlaps_enough(x.a_begin, x.a_end, y.a_begin, y.a_end,
                            params.overlap_merge) &&
            overlaps_enough(x.b_begin, x.b_end, y.b_begin, y.b_end,
                            params.overlap_merge)) {
          const Region joint{std::min(x.a_begin, y.a_begin),
                             std::max(x.a_end, y.a_end),
                             std::min(x.b_begin, y.b_begin),
                             std::max(x.b_end, y.b_end)};
          found[i] = trim(a, b, joint, scoring);
          found.erase(found.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
      }
    }
  }

  std::vector<Candidate> kept;
  for (const Candidate& c : found) {
    const Region& r = c.region;
    if (c.score < params.min_score) continue;
    if (r.a_end - r.a_begin < params.min_span_len ||
        r.b_end - r.b_begin < params.min_span_len) {
      continue;
    }
    kept.push_back(c);
  }
  return kept;
}

Span make_span(const Document& doc, std::size_t begin, std::size_t end) {
  return {doc.id, begin, end, doc.text.substr(begin, end - begin)};
}

bool pair_less(const SpanPair& x, const SpanPair& y) {
  return std::tie(x.first, x.second) < std::tie(y.first, y.second);
}

}  // namespace

std::vector<SpanPair> detect_pairs(const Corpus& corpus,
                                   const AlignParams& params,
                                   unsigned workers) {
  params.validate();
  const auto& docs = corpus.documents();
  const std::vector<SeedHit> hits = collect_hits(docs, params.seed_len);

  std::vector<std::pair<std::size_t, std::size_t>> groups;
  for (std::size_t i = 0; i < hits.size();) {
    std::size_t j = i + 1;
    while (j < hits.size() && hits[j].doc_a == hits[i].doc_a &&
           hits[j].doc_b == hits[i].doc_b) {
      ++j;
    }
    groups.emplace_back(i, j);
    i = j;
  }

  std::vector<std::vector<SpanPair>> per_group(groups.size());
  parallel_for(groups.size(), workers, [&](std::size_t g) {
    const auto [begin, end] = groups[g];
    const Document& da = docs[hits[begin].doc_a];
    const Document& db = docs[hits[begin].doc_b];
    const std::span<const SeedHit> group_hits(hits.data() + begin, end - begin);
    for (const Candidate& c :
         align_document_pair(da.text, db.text, group_hits, params)) {
      const Region& r = c.region;
      // A self-overlapping repeat inside one document is not reuse.
      if (&da == &db && overlaps_enough(r.a_begin, r.a_end, r.b_begin,
                                        r.b_end, params.overlap_merge)) {
        continue;
      }
      SpanPair pair{make_span(da, r.a_begin, r.a_end),
                    make_span(db, r.b_begin, r.b_end), c.score};
      if (pair.second < pair.first) std::swap(pair.first, pair.second);
      per_group[g].push_back(std::move(pair));
    }
  });

  std::vector<SpanPair> out;
  for (auto& group : per_group) {
    std::move(group.begin(), group.end(), std::back_inserter(out));
  }
  std::sort(out.begin(), out.end(), pair_less);
  return out;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Union of contiguous same-document spans, sorted by start.
Span merge_spans(const std::vector<const Span*>& parts) {
  Span out = *parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const Span& s = *parts[i];
    if (s.end > out.end) {
      out.text += s.text.substr(out.end - s.start);
      out.end = s.end;
    }
  }
  return out;
}

}  // namespace

std::vector<ReuseCluster> cluster_spans(std::span<const SpanPair> pairs,
                                        const AlignParams& params) {
  std::vector<Span> nodes;
  nodes.reserve(pairs.size() * 2);
  for (const SpanPair& p : pairs) {
    nodes.push_back(p.first);
    nodes.push_back(p.second);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  auto index_of = [&](const Span& s) {
    return static_cast<std::size_t>(
        std::lower_bound(nodes.begin(), nodes.end(), s) - nodes.begin());
  };

  DisjointSets linked(nodes.size());
  DisjointSets merged(nodes.size());
  for (const SpanPair& p : pairs) linked.unite(index_of(p.first), index_of(p.second));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size() &&
                                nodes[j].doc_id == nodes[i].doc_id &&
                                nodes[j].start < nodes[i].end;
         ++j) {
      if (overlaps_enough(nodes[i].start, nodes[i].end, nodes[j].start,
                          nodes[j].end, params.overlap_merge)) {
        linked.unite(i, j);
        merged.unite(i, j);
      }
    }
  }

  // cluster root -> merged-span root -> member nodes (in sorted order)
  std::map<std::size_t, std::map<std::size_t, std::vector<const Span*>>> groups;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    groups[linked.find(i)][merged.find(i)].push_back(&nodes[i]);
  }

  std::vector<ReuseCluster> clusters;
  for (auto& [root, members] : groups) {
    ReuseCluster cluster;
    for (auto& [merge_root, parts] : members) {
      cluster.spans.push_back(merge_spans(parts));
    }
    // A chain of same-document overlaps can fold a pair into one span.
    if (cluster.spans.size() < 2) continue;
    std::sort(cluster.spans.begin(), cluster.spans.end());
    clusters.push_back(std::move(cluster));
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const ReuseCluster& a, const ReuseCluster& b) {
              return a.spans.front() < b.spans.front();
            });
  for (std::size_t i = 0; i < clusters.size(); ++i) clusters[i].id = i;
  return clusters;
}

std::vector<ReuseCluster> filter_clusters(std::vector<ReuseCluster> clusters,
                                          std::size_t min_size) {
  if (min_size < 2) throw ValidationError("min cluster size must be >= 2");
  std::erase_if(clusters, [&](const ReuseCluster& c) {
    return c.spans.size() < min_size;
  });
  return clusters;
}

namespace {

nlohmann::json span_to_json(const Span& s) {
  return {{"doc", s.doc_id},
          {"start", s.start},
          {"end", s.end},
          {"text", encode_utf8(s.text)}};
}

Span span_from_json(const nlohmann::json& j) {
  Span s;
  s.doc_id = j.at("doc").get<std::string>();
  s.start = j.at("start").get<std::size_t>();
  s.end = j.at("end").get<std::size_t>();
  s.text = decode_utf8(j.at("text").get<std::string>());
  if (s.end < s.start || s.text.size() != s.end - s.start) {
    throw ValidationError("span text length does not match its offsets");
  }
  return s;
}

template <typename Fn>
void for_each_json_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

}  // namespace

void write_pairs_jsonl(std::ostream& out, std::span<const SpanPair> pairs) {
  for (const SpanPair& p : pairs) {
    const nlohmann::json j = {{"a", span_to_json(p.first)},
                              {"b", span_to_json(p.second)},
                              {"score", p.score}};
    out << j.dump() << '\n';
  }
}

std::vector<SpanPair> read_pairs_jsonl(std::istream& in) {
  std::vector<SpanPair> pairs;
  for_each_json_line(in, [&](const nlohmann::json& j) {
    pairs.push_back({span_from_json(j.at("a")), span_from_json(j.at("b")),
                     j.at("score").get<int>()});
  });
  return pairs;
}

void write_clusters_jsonl(std::ostream& out,
                          std::span<const ReuseCluster> clusters) {
  for (const ReuseCluster& c : clusters) {
    nlohmann::json spans = nlohmann::json::array();
    for (const Span& s : c.spans) spans.push_back(span_to_json(s));
    const nlohmann::json j = {{"cluster_id", c.id}, {"spans", std::move(spans)}};
    out << j.dump() << '\n';
  }
}

std::vector<ReuseCluster> read_clusters_jsonl(std::istream& in) {
  std::vector<ReuseCluster> clusters;
  for_each_json_line(in, [&](const nlohmann::json& j) {
    ReuseCluster c;
    c.id = j.at("cluster_id").get<std::size_t>();
    for (const auto& s : j.at("spans")) c.spans.push_back(span_from_json(s));
    clusters.push_back(std::move(c));
  });
  return clusters;
}

}  // namespace ocrnoise
