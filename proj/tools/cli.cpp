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

#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "ocrnoise/char_lm.hpp"
#include "ocrnoise/confusion.hpp"
#include "ocrnoise/consensus.hpp"
#include "ocrnoise/corpus.hpp"
#include "ocrnoise/corrector.hpp"
#include "ocrnoise/errors.hpp"
#include "ocrnoise/metrics.hpp"
#include "ocrnoise/noise.hpp"
#include "ocrnoise/parallel.hpp"
#include "ocrnoise/provenance.hpp"
#include "ocrnoise/reuse.hpp"
#include "ocrnoise/text.hpp"

namespace ocrnoise::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
  unsigned workers = 1;
  std::string out;

  std::string corpus;
  AlignParams align;

  std::string pairs;
  std::size_t min_cluster_size = 20;

  std::string clusters;
  GroupingParams grouping;

  std::string kind = "realistic";
  std::string model;
  std::optional<double> rate;
  std::string replacement_set = encode_utf8(kAsciiAlnum);
  std::optional<std::uint64_t> seed;
  std::string format = "plain";

  std::size_t order = 5;
  double smoothing = 0.1;

  std::string lm;
  std::string input;
  DecoderParams decoder;

  std::string hyp;
  std::string ref;
  std::string tsv;

  std::string ocr_corpus;
  std::string clean_corpus;
  std::string out_dir;
};

json align_json(const AlignParams& p) {
  return {{"seed_len", p.seed_len},         {"match", p.match},
          {"mismatch", p.mismatch},         {"gap", p.gap},
          {"x_drop", p.x_drop},             {"min_span_len", p.min_span_len},
          {"min_score", p.min_score},       {"overlap_merge", p.overlap_merge}};
}

json grouping_json(const GroupingParams& p) {
  return {{"dist_threshold", p.dist_threshold},
          {"support_fraction", p.support_fraction}};
}

json decoder_json(const DecoderParams& p) {
  return {{"beam_width", p.beam_width},
          {"lambda", p.lambda},
          {"candidate_floor", p.candidate_floor}};
}

json manifest(std::string_view subcommand, json config) {
  return {{"tool", "ocrnoise"},
          {"version", kToolVersion},
          {"subcommand", subcommand},
          {"config", std::move(config)},
          {"inputs", json::object()}};
}

json file_input(const std::string& path) {
  return {{"path", path}, {"sha256", sha256_file(path)}};
}

json corpus_input(const std::string& path, const Corpus& corpus) {
  return {{"path", path},
          {"documents", corpus.size()},
          {"sha256", corpus_digest(corpus)}};
}

void add_align_options(CLI::App* app, AlignParams& p) {
  app->add_option("--seed-len", p.seed_len, "Seed n-gram length in codepoints")->capture_default_str();
  app->add_option("--match", p.match, "Match score")->capture_default_str();
  app->add_option("--mismatch", p.mismatch, "Mismatch score")->capture_default_str();
  app->add_option("--gap", p.gap, "Linear gap score")->capture_default_str();
  app->add_option("--x-drop", p.x_drop, "Score drop that ends an extension")->capture_default_str();
  app->add_option("--min-span-len", p.min_span_len, "Minimum span length")->capture_default_str();
  app->add_option("--min-score", p.min_score, "Minimum alignment score")->capture_default_str();
  app->add_option("--overlap-merge", p.overlap_merge,
                  "Overlap fraction that merges same-document spans")->capture_default_str();
}

void add_grouping_options(CLI::App* app, GroupingParams& p) {
  app->add_option("--dist-threshold", p.dist_threshold,
                  "Relative edit distance bound for word grouping")->capture_default_str();
  app->add_option("--support-fraction", p.support_fraction,
                  "Fraction of cluster spans a word group must reach")->capture_default_str();
}

void add_noise_options(CLI::App* app, Options& o) {
  app->add_option("--kind", o.kind, "Noise kind")
      ->check(CLI::IsMember({"uniform", "realistic"}))
      ->capture_default_str();
  app->add_option("--rate", o.rate, "Uniform noise rate (default: average CER of --model)");
  app->add_option("--replacement-set", o.replacement_set,
                  "Characters drawn by uniform noise")->capture_default_str();
  app->add_option("--seed", o.seed, "Random seed")->required();
  app->add_option("--format", o.format, "Dataset format")
      ->check(CLI::IsMember({"plain", "char-spaced"}))
      ->capture_default_str();
}

void add_decoder_options(CLI::App* app, DecoderParams& p) {
  app->add_option("--beam-width", p.beam_width, "Beam width")->capture_default_str();
  app->add_option("--lambda", p.lambda, "Channel weight in [0, 1]")->capture_default_str();
  app->add_option("--candidate-floor", p.candidate_floor,
                  "Minimum channel probability of a candidate")->capture_default_str();
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read file " + path.string());
  return in;
}

void close_checked(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("error while writing " + path.string());
}

std::vector<std::u32string> read_lines(const fs::path& path) {
  const std::u32string text = decode_utf8(read_text_file(path));
  std::vector<std::u32string> lines;
  std::u32string current;
  for (char32_t c : text) {
    if (c == U'\n') {
      if (!current.empty() && current.back() == U'\r') current.pop_back();
      lines.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) lines.push_back(std::move(current));
  return lines;
}

ConfusionModel load_model(const fs::path& path) {
  try {
    return confusion_from_json(json::parse(read_text_file(path)));
  } catch (const json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Stages shared by the single-step subcommands and `pipeline`.

std::vector<SpanPair> stage_detect(const Corpus& corpus, const std::string& corpus_path,
                                   const Options& o, const fs::path& out) {
  spdlog::info("detecting reuse in {} documents", corpus.size());
  auto pairs = detect_pairs(corpus, o.align, o.workers);
  auto file = open_out(out);
  write_pairs_jsonl(file, pairs);
  close_checked(file, out);
  json m = manifest("detect", align_json(o.align));
  m["inputs"]["corpus"] = corpus_input(corpus_path, corpus);
  m["pair_count"] = pairs.size();
  write_manifest(out, m);
  spdlog::info("wrote {} pairs to {}", pairs.size(), out.string());
  return pairs;
}

std::vector<ReuseCluster> stage_cluster(const std::vector<SpanPair>& pairs,
                                        const json& pairs_input, const Options& o,
                                        const fs::path& out) {
  auto all = cluster_spans(pairs, o.align);
  const std::size_t before = all.size();
  auto kept = filter_clusters(std::move(all), o.min_cluster_size);
  auto file = open_out(out);
  write_clusters_jsonl(file, kept);
  close_checked(file, out);
  json config = align_json(o.align);
  config["min_cluster_size"] = o.min_cluster_size;
  json m = manifest("cluster", config);
  m["inputs"]["pairs"] = pairs_input;
  m["clusters_before_filter"] = before;
  m["cluster_count"] = kept.size();
  write_manifest(out, m);
  spdlog::info("kept {} of {} clusters (min size {})", kept.size(), before,
               o.min_cluster_size);
  return kept;
}

ConfusionModel stage_estimate(const std::vector<ReuseCluster>& clusters,
                              const json& clusters_input, const Options& o,
                              const fs::path& out) {
  ConfusionModel model = estimate_confusion(clusters, o.grouping, o.workers);
  if (model.empty()) {
    spdlog::warn("no aligned observations; the confusion model is empty");
  }
  write_text_file(out, to_json(model).dump(2) + "\n");
  json m = manifest("estimate", grouping_json(o.grouping));
  m["inputs"]["clusters"] = clusters_input;
  m["cluster_count"] = clusters.size();
  m["observations"] = model.total();
  m["avg_cer"] = model.avg_cer();
  m["empty_model"] = model.empty();
  write_manifest(out, m);
  spdlog::info("confusion model: {} observations, average CER {:.4f}",
               model.total(), model.avg_cer());
  return model;
}

void stage_synth(const Corpus& corpus, const json& corpus_in, const ConfusionModel* model,
                 const json& model_in, const Options& o, const fs::path& out) {
  NoiseSpec spec;
  spec.kind = o.kind == "uniform" ? NoiseKind::kUniform : NoiseKind::kRealistic;
  spec.rate = o.rate;
  spec.replacement_set = decode_utf8(o.replacement_set);
  spec.seed = *o.seed;
  const ParallelDataset dataset = synthesize(corpus, spec, model, o.workers);
  const auto written = export_dataset(
      dataset, o.format == "plain" ? ExportFormat::kPlain : ExportFormat::kCharSpaced, out);

  json config = {{"kind", o.kind},
                 {"replacement_set", o.replacement_set},
                 {"format", o.format}};
  if (spec.kind == NoiseKind::kUniform) config["rate"] = resolve_uniform_rate(spec, model);
  json m = manifest("synth", config);
  m["seed"] = spec.seed;
  m["inputs"]["corpus"] = corpus_in;
  if (model) m["inputs"]["model"] = model_in;
  m["pair_count"] = dataset.size();
  for (const auto& path : written) write_manifest(path, m);
  spdlog::info("wrote {} pairs", dataset.size());
}

// ---------------------------------------------------------------------------

void run_detect(const Options& o) {
  const Corpus corpus = load_corpus(o.corpus);
  stage_detect(corpus, o.corpus, o, o.out);
}

void run_cluster(const Options& o) {
  auto in = open_in(o.pairs);
  const auto pairs = read_pairs_jsonl(in);
  stage_cluster(pairs, file_input(o.pairs), o, o.out);
}

void run_estimate(const Options& o) {
  auto in = open_in(o.clusters);
  const auto clusters = read_clusters_jsonl(in);
  stage_estimate(clusters, file_input(o.clusters), o, o.out);
}

void run_synth(const Options& o) {
  const Corpus corpus = load_corpus(o.corpus);
  std::optional<ConfusionModel> model;
  json model_in;
  if (!o.model.empty()) {
    model = load_model(o.model);
    model_in = file_input(o.model);
  }
  stage_synth(corpus, corpus_input(o.corpus, corpus), model ? &*model : nullptr,
              model_in, o, o.out);
}

void run_train_lm(const Options& o) {
  const Corpus corpus = load_corpus(o.corpus);
  const CharLM lm = train_lm(corpus, o.order, o.smoothing);
  write_text_file(o.out, lm.to_json().dump() + "\n");
  json m = manifest("train-lm", {{"order", o.order}, {"smoothing", o.smoothing}});
  m["inputs"]["corpus"] = corpus_input(o.corpus, corpus);
  write_manifest(o.out, m);
}

void run_correct(const Options& o) {
  const ConfusionModel model = load_model(o.model);
  CharLM lm = [&] {
    try {
      return CharLM::from_json(json::parse(read_text_file(o.lm)));
    } catch (const json::exception& e) {
      throw ValidationError(o.lm + ": " + e.what());
    }
  }();
  const ChannelCorrector corrector(model, lm, o.decoder);
  const auto lines = read_lines(o.input);
  std::vector<std::u32string> corrected(lines.size());
  parallel_for(lines.size(), o.workers,
               [&](std::size_t i) { corrected[i] = corrector.correct(lines[i]).text; });
  auto out = open_out(o.out);
  for (const auto& line : corrected) out << encode_utf8(line) << '\n';
  close_checked(out, o.out);
  json m = manifest("correct", decoder_json(o.decoder));
  m["inputs"]["model"] = file_input(o.model);
  m["inputs"]["lm"] = file_input(o.lm);
  m["inputs"]["input"] = file_input(o.input);
  m["line_count"] = lines.size();
  write_manifest(o.out, m);
}

void run_evaluate(const Options& o) {
  std::vector<std::u32string> hyps, refs;
  json inputs = json::object();
  if (!o.tsv.empty()) {
    for (auto& pair : read_plain_dataset(o.tsv)) {
      hyps.push_back(std::move(pair.noisy));
      refs.push_back(std::move(pair.clean));
    }
    inputs["tsv"] = file_input(o.tsv);
  } else {
    if (o.hyp.empty() || o.ref.empty()) {
      throw ValidationError("evaluate needs --tsv or both --hyp and --ref");
    }
    hyps = read_lines(o.hyp);
    refs = read_lines(o.ref);
    inputs["hyp"] = file_input(o.hyp);
    inputs["ref"] = file_input(o.ref);
  }
  const EvalReport report = evaluate(hyps, refs, o.workers);
  std::cout << format_report(report);
  const json j = to_json(report);
  if (o.out.empty()) {
    std::cout << j.dump() << '\n';
  } else {
    write_text_file(o.out, j.dump(2) + "\n");
    json m = manifest("evaluate", json::object());
    m["inputs"] = inputs;
    write_manifest(o.out, m);
  }
}

void run_pipeline(const Options& o) {
  const fs::path dir(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string());

  const Corpus ocr = load_corpus(o.ocr_corpus);
  const fs::path pairs_path = dir / "pairs.jsonl";
  const auto pairs = stage_detect(ocr, o.ocr_corpus, o, pairs_path);
  const fs::path clusters_path = dir / "clusters.jsonl";
  const auto clusters =
      stage_cluster(pairs, {{"sha256", sha256_file(pairs_path)}}, o, clusters_path);
  const fs::path model_path = dir / "model.json";
  const ConfusionModel model = stage_estimate(
      clusters, {{"sha256", sha256_file(clusters_path)}}, o, model_path);

  const Corpus clean = load_corpus(o.clean_corpus);
  const fs::path dataset_path = dir / (o.format == "plain" ? "dataset.tsv" : "dataset");
  stage_synth(clean, corpus_input(o.clean_corpus, clean), &model,
              {{"sha256", sha256_file(model_path)}}, o, dataset_path);
}

}  // namespace

int run(int argc, const char* const* argv) {
  auto logger = std::make_shared<spdlog::logger>(
      "ocrnoise", std::make_shared<spdlog::sinks::stderr_sink_st>());
  spdlog::set_default_logger(logger);

  Options o;
  CLI::App app{"Estimate OCR error distributions from text reuse and synthesize "
               "noisy training data"};
  app.name("ocrnoise");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "Configuration file (TOML); flags override it");
  app.add_option("--workers", o.workers, "Worker threads; results do not depend on it")
      ->capture_default_str();
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "Log level")
      ->check(CLI::IsMember({"debug", "info", "warn", "error", "off"}));
  app.require_subcommand(1);

  auto* detect = app.add_subcommand("detect", "Find repeated spans in an OCR corpus");
  detect->add_option("--corpus", o.corpus, "Corpus directory or JSONL file")->required();
  detect->add_option("--out", o.out, "Output pairs JSONL")->required();
  add_align_options(detect, o.align);

  auto* cluster = app.add_subcommand("cluster", "Cluster detected pairs into reuse clusters");
  cluster->add_option("--pairs", o.pairs, "Pairs JSONL from detect")->required();
  cluster->add_option("--out", o.out, "Output clusters JSONL")->required();
  cluster->add_option("--min-cluster-size", o.min_cluster_size,
                      "Keep clusters with at least this many spans")->capture_default_str();
  cluster->add_option("--overlap-merge", o.align.overlap_merge,
                      "Overlap fraction that merges same-document spans")->capture_default_str();

  auto* estimate = app.add_subcommand("estimate", "Estimate the confusion model from clusters");
  estimate->add_option("--clusters", o.clusters, "Clusters JSONL")->required();
  estimate->add_option("--out", o.out, "Output model JSON")->required();
  add_grouping_options(estimate, o.grouping);

  auto* synth = app.add_subcommand("synth", "Synthesize noisy/clean token pairs");
  synth->add_option("--corpus", o.corpus, "Clean corpus directory or JSONL file")->required();
  synth->add_option("--model", o.model, "Confusion model JSON");
  synth->add_option("--out", o.out, "Output dataset path")->required();
  add_noise_options(synth, o);

  auto* train = app.add_subcommand("train-lm", "Train a character n-gram language model");
  train->add_option("--corpus", o.corpus, "Clean corpus directory or JSONL file")->required();
  train->add_option("--out", o.out, "Output LM JSON")->required();
  train->add_option("--order", o.order, "n-gram order (>= 2)")->capture_default_str();
  train->add_option("--smoothing", o.smoothing, "Additive smoothing constant")->capture_default_str();

  auto* correct = app.add_subcommand("correct", "Correct one token per line");
  correct->add_option("--model", o.model, "Confusion model JSON")->required();
  correct->add_option("--lm", o.lm, "Language model JSON")->required();
  correct->add_option("--input", o.input, "Input tokens, one per line")->required();
  correct->add_option("--out", o.out, "Output file")->required();
  add_decoder_options(correct, o.decoder);

  auto* eval = app.add_subcommand("evaluate", "Compute CER and WER");
  eval->add_option("--hyp", o.hyp, "Hypotheses, one item per line");
  eval->add_option("--ref", o.ref, "References, one item per line");
  eval->add_option("--tsv", o.tsv, "hyp<TAB>ref lines instead of --hyp/--ref");
  eval->add_option("--out", o.out, "Write the JSON report here");

  auto* pipeline = app.add_subcommand("pipeline", "detect -> cluster -> estimate -> synth");
  pipeline->add_option("--ocr-corpus", o.ocr_corpus, "OCR corpus to mine for reuse")->required();
  pipeline->add_option("--clean-corpus", o.clean_corpus, "Clean corpus to noise")->required();
  pipeline->add_option("--out-dir", o.out_dir, "Output directory")->required();
  pipeline->add_option("--min-cluster-size", o.min_cluster_size,
                       "Keep clusters with at least this many spans")->capture_default_str();
  add_align_options(pipeline, o.align);
  add_grouping_options(pipeline, o.grouping);
  add_noise_options(pipeline, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  spdlog::set_level(spdlog::level::from_str(log_level));
  spdlog::info("resolved configuration:\n{}", app.config_to_str(true, false));

  try {
    if (*detect) run_detect(o);
    else if (*cluster) run_cluster(o);
    else if (*estimate) run_estimate(o);
    else if (*synth) run_synth(o);
    else if (*train) run_train_lm(o);
    else if (*correct) run_correct(o);
    else if (*eval) run_evaluate(o);
    else if (*pipeline) run_pipeline(o);
  } catch (const IoError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const ValidationError& e) {
    spdlog::error("{}", e.what());
    return 1;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}

}  // namespace ocrnoise::cli
