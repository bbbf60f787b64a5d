// Copyright 2026 The tqekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <charconv>
#include <cstdio>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "run_config.hpp"
#include "tqe/data.hpp"
#include "tqe/error.hpp"
#include "tqe/eval.hpp"
#include "tqe/io_util.hpp"
#include "tqe/model/checkpoint.hpp"
#include "tqe/model/trainer.hpp"
#include "tqe/synthesis.hpp"
#include "tqe/ter.hpp"
#include "tqe/version.hpp"

namespace {

using nlohmann::json;
using tqe::cli::RunConfig;

constexpr int kExitContract = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitUsage = 64;

// Records flag overrides to replay on top of the preset/config-file stages;
// only flags the user actually passed are applied.
class Overrides {
 public:
  template <typename T>
  CLI::Option* add(CLI::App* sub, const std::string& flag,
                   T RunConfig::*member, const std::string& desc) {
    auto store = std::make_shared<T>();
    CLI::Option* opt = sub->add_option(flag, *store, desc);
    appliers_.push_back([opt, store, member](RunConfig& cfg) {
      if (opt->count() > 0) cfg.*member = *store;
    });
    return opt;
  }

  CLI::Option* add_flag(CLI::App* sub, const std::string& flag,
                        bool RunConfig::*member, const std::string& desc) {
    auto store = std::make_shared<bool>(false);
    CLI::Option* opt = sub->add_flag(flag, *store, desc);
    appliers_.push_back([opt, store, member](RunConfig& cfg) {
      if (opt->count() > 0) cfg.*member = *store;
    });
    return opt;
  }

  void add_custom(CLI::Option* opt, std::function<void(RunConfig&)> f) {
    appliers_.push_back([opt, f = std::move(f)](RunConfig& cfg) {
      if (opt->count() > 0) f(cfg);
    });
  }

  void apply(RunConfig& cfg) const {
    for (const auto& f : appliers_) f(cfg);
  }

 private:
  std::vector<std::function<void(RunConfig&)>> appliers_;
};

struct Ctx {
  std::string config_path;
  std::string preset;
  Overrides ov;

  RunConfig resolve() const {
    RunConfig cfg = RunConfig::resolve(config_path, preset);
    ov.apply(cfg);
    return cfg;
  }
};

void register_config_flags(CLI::App* sub, const std::shared_ptr<Ctx>& ctx) {
  sub->add_option("--config", ctx->config_path,
                  "JSON configuration file (unknown keys rejected)");
  sub->add_option("--preset", ctx->preset,
                  "Named preset: high (1M pairs), medium (200k), low (50k)")
      ->check(CLI::IsMember({"high", "medium", "low"}));
}

void register_seed_flag(CLI::App* sub, const std::shared_ptr<Ctx>& ctx) {
  ctx->ov.add(sub, "--seed", &RunConfig::seed,
              "Seed for sampling, noise, initialization, and shuffling");
}

void register_ter_flags(CLI::App* sub, const std::shared_ptr<Ctx>& ctx) {
  ctx->ov.add_flag(sub, "--case-sensitive,!--no-case-sensitive",
                   &RunConfig::case_sensitive,
                   "Compare tokens case-sensitively (default: off)");
  ctx->ov.add_flag(sub, "--split-punctuation,!--no-split-punctuation",
                   &RunConfig::split_punctuation,
                   "Split punctuation into separate tokens (default: on)");
  ctx->ov.add(sub, "--max-shift-span", &RunConfig::max_shift_span,
              "Longest token span a single shift may move");
  ctx->ov.add(sub, "--max-shift-distance", &RunConfig::max_shift_distance,
              "Farthest distance a shift may move");
}

void register_encoder_flags(CLI::App* sub, const std::shared_ptr<Ctx>& ctx) {
  ctx->ov.add(sub, "--embed-dim", &RunConfig::embed_dim, "Embedding width");
  ctx->ov.add(sub, "--layers", &RunConfig::layers, "Encoder blocks");
  ctx->ov.add(sub, "--heads", &RunConfig::heads, "Attention heads");
  ctx->ov.add(sub, "--ff-dim", &RunConfig::ff_dim, "Feed-forward width");
  ctx->ov.add(sub, "--max-seq-len", &RunConfig::max_seq_len,
              "Maximum encoded sequence length");
  ctx->ov
      .add(sub, "--mode", &RunConfig::mode,
           "Sentence-pair encoding: split or concat")
      ->check(CLI::IsMember({"split", "concat"}));
}

void register_train_flags(CLI::App* sub, const std::shared_ptr<Ctx>& ctx) {
  ctx->ov.add(sub, "--batch-size", &RunConfig::batch_size, "Batch size");
  ctx->ov.add(sub, "--lr", &RunConfig::lr_grid,
              "Learning rate; repeat to give the whole grid");
  ctx->ov.add(sub, "--patience", &RunConfig::patience,
              "Consecutive non-improving evaluations before stopping");
  ctx->ov.add(sub, "--val-every", &RunConfig::val_every,
              "Steps between validation evaluations");
  ctx->ov.add(sub, "--val-fraction", &RunConfig::val_fraction,
              "Fraction of tuples held out for validation");
  ctx->ov.add(sub, "--max-steps", &RunConfig::max_steps,
              "Hard step cap per learning rate");
  ctx->ov.add(sub, "--weight-decay", &RunConfig::weight_decay,
              "AdamW decoupled weight decay");
  ctx->ov.add(sub, "--vocab-max-size", &RunConfig::vocab_max_size,
              "Vocabulary capacity including specials");
  ctx->ov.add(sub, "--vocab-min-count", &RunConfig::vocab_min_count,
              "Minimum token count to enter the vocabulary");
}

std::optional<double> parse_double_field(const std::string& field) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [p, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || p != end || field.empty()) return std::nullopt;
  return v;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

// Score reader shared by evaluate/compare: takes the last tab-separated
// field of each non-blank line, so both plain score-per-line files and
// `tqekit predict` output work. A non-numeric first line is a header.
std::vector<double> read_scores(const std::string& path) {
  std::vector<std::string> lines = tqe::read_lines(path);
  std::vector<double> scores;
  bool first_nonempty = true;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty()) continue;
    std::string field = line.substr(line.find_last_of('\t') + 1);
    std::optional<double> v = parse_double_field(field);
    if (!v) {
      if (first_nonempty) {
        first_nonempty = false;
        continue;
      }
      throw tqe::ParseError(path + ":" + std::to_string(i + 1) +
                            ": non-numeric score '" + field + "'");
    }
    first_nonempty = false;
    scores.push_back(*v);
  }
  return scores;
}

void write_meta(const std::string& artifact, const char* command,
                const RunConfig& cfg, const json& extra = json::object()) {
  json j;
  j["tool"] = std::string(tqe::kToolName);
  j["tool_version"] = std::string(tqe::kToolVersion);
  j["command"] = command;
  j["config"] = cfg.to_json();
  for (auto it = extra.begin(); it != extra.end(); ++it) {
    j[it.key()] = it.value();
  }
  tqe::atomic_write_file(artifact + ".meta.json", j.dump(2) + "\n");
}

json report_to_json(const tqe::CorrelationReport& r) {
  json j;
  j["system"] = r.system;
  j["gold"] = r.gold;
  j["n"] = r.n;
  j["r"] = r.r;
  j["flip_applied"] = r.polarity_flip_applied;
  return j;
}

void print_report_table(const std::vector<tqe::CorrelationReport>& reports) {
  std::printf("%-20s %8s %12s %6s\n", "system", "n", "r", "flip");
  for (const tqe::CorrelationReport& r : reports) {
    std::printf("%-20s %8lld %12.6f %6s\n", r.system.c_str(),
                static_cast<long long>(r.n), r.r,
                r.polarity_flip_applied ? "yes" : "no");
  }
}

tqe::DatasetKind resolve_gold_kind(const std::string& kind_flag,
                                   tqe::Polarity gold_polarity) {
  if (!kind_flag.empty()) {
    tqe::DatasetKind kind = tqe::kind_from_string(kind_flag);
    if (tqe::polarity_of(kind) != gold_polarity) {
      throw tqe::Error("gold kind '" + kind_flag + "' is " +
                       tqe::polarity_to_string(tqe::polarity_of(kind)) +
                       " but --gold-polarity says " +
                       tqe::polarity_to_string(gold_polarity));
    }
    return kind;
  }
  return gold_polarity == tqe::Polarity::kHigherBetter
             ? tqe::DatasetKind::kGoldDa
             : tqe::DatasetKind::kGoldHter;
}

// ---------------------------------------------------------------- ter ----

void add_ter_command(CLI::App& app) {
  auto ctx = std::make_shared<Ctx>();
  auto hyp = std::make_shared<std::string>();
  auto ref = std::make_shared<std::string>();
  auto sentence_scores = std::make_shared<std::string>();

  CLI::App* sub = app.add_subcommand(
      "ter", "Corpus-level TER of a hypothesis file against a reference file");
  sub->add_option("--hyp", *hyp, "Hypothesis file, one sentence per line")
      ->required();
  sub->add_option("--ref", *ref, "Reference file, line-aligned with --hyp")
      ->required();
  sub->add_option("--sentence-scores", *sentence_scores,
                  "Write per-sentence TER results to this TSV");
  register_config_flags(sub, ctx);
  register_ter_flags(sub, ctx);

  sub->callback([ctx, hyp, ref, sentence_scores]() {
    RunConfig cfg = ctx->resolve();
    std::vector<std::string> hyp_lines = tqe::read_lines(*hyp);
    std::vector<std::string> ref_lines = tqe::read_lines(*ref);
    if (hyp_lines.size() != ref_lines.size()) {
      throw tqe::StructuralError(
          "line count mismatch: '" + *hyp + "' has " +
          std::to_string(hyp_lines.size()) + " lines, '" + *ref + "' has " +
          std::to_string(ref_lines.size()));
    }
    if (hyp_lines.empty()) {
      throw tqe::Error("no sentences: both files are empty");
    }

    tqe::TerConfig tcfg = cfg.ter_config();
    long long ins = 0, del = 0, sub_edits = 0, shifts = 0, ref_words = 0;
    std::vector<tqe::TerResult> rows;
    rows.reserve(hyp_lines.size());
    for (std::size_t i = 0; i < hyp_lines.size(); ++i) {
      tqe::TerResult r;
      try {
        r = tqe::ter(hyp_lines[i], ref_lines[i], tcfg);
      } catch (const tqe::Error& e) {
        throw tqe::Error("line " + std::to_string(i + 1) + ": " + e.what());
      }
      ins += r.insertions;
      del += r.deletions;
      sub_edits += r.substitutions;
      shifts += r.shifts;
      ref_words += r.ref_length;
      rows.push_back(r);
    }
    const long long edits = ins + del + sub_edits + shifts;
    std::printf("sentences: %zu\n", hyp_lines.size());
    std::printf("reference words: %lld\n", ref_words);
    std::printf("edits: %lld (ins %lld, del %lld, sub %lld, shifts %lld)\n",
                edits, ins, del, sub_edits, shifts);
    std::printf("corpus TER: %.6f\n",
                static_cast<double>(edits) / static_cast<double>(ref_words));

    if (!sentence_scores->empty()) {
      std::string text =
          "insertions\tdeletions\tsubstitutions\tshifts\tref_length\tscore\n";
      for (const tqe::TerResult& r : rows) {
        text += std::to_string(r.insertions) + "\t" +
                std::to_string(r.deletions) + "\t" +
                std::to_string(r.substitutions) + "\t" +
                std::to_string(r.shifts) + "\t" +
                std::to_string(r.ref_length) + "\t" +
                tqe::format_label(r.score) + "\n";
      }
      tqe::atomic_write_file(*sentence_scores, text);
      write_meta(*sentence_scores, "ter", cfg,
                 {{"hyp", *hyp}, {"ref", *ref}});
    }
  });
}

// -------------------------------------------------------------- synth ----

void add_synth_command(CLI::App& app) {
  auto ctx = std::make_shared<Ctx>();
  auto src = std::make_shared<std::string>();
  auto tgt = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  auto report_path = std::make_shared<std::string>();

  CLI::App* sub = app.add_subcommand(
      "synth", "Synthesize a TER-labeled QE dataset from a parallel corpus");
  sub->add_option("--src", *src, "Source-side corpus file")->required();
  sub->add_option("--tgt", *tgt, "Target-side (reference) corpus file")
      ->required();
  sub->add_option("--out", *out, "Output dataset TSV")->required();
  sub->add_option("--report", *report_path,
                  "Synthesis report JSON (default: <out>.report.json)");
  register_config_flags(sub, ctx);
  register_ter_flags(sub, ctx);
  register_seed_flag(sub, ctx);
  ctx->ov.add(sub, "--direction", &RunConfig::direction,
              "Direction tag such as en-de");
  ctx->ov.add(sub, "--translator", &RunConfig::translator,
              "file:<path>, cmd:<template with {src} and {out}>, or "
              "corrupting");
  ctx->ov.add(sub, "--sample-size", &RunConfig::sample_size,
              "Pairs to sample from the corpus");
  ctx->ov.add(sub, "--max-tokens", &RunConfig::max_tokens,
              "Drop pairs whose either side exceeds this many tokens");
  ctx->ov.add(sub, "--ter-cutoff", &RunConfig::ter_cutoff,
              "Discard tuples whose TER exceeds this value");
  ctx->ov.add(sub, "--noise-lo", &RunConfig::noise_lo,
              "Corrupting translator: lower noise-rate bound");
  ctx->ov.add(sub, "--noise-hi", &RunConfig::noise_hi,
              "Corrupting translator: upper noise-rate bound");
  auto noise_rate = std::make_shared<double>(0.0);
  CLI::Option* rate_opt =
      sub->add_option("--noise-rate", *noise_rate,
                      "Corrupting translator: fixed noise rate "
                      "(sets both bounds)");
  ctx->ov.add_custom(rate_opt, [noise_rate](RunConfig& cfg) {
    cfg.noise_lo = *noise_rate;
    cfg.noise_hi = *noise_rate;
  });

  sub->callback([ctx, src, tgt, out, report_path]() {
    RunConfig cfg = ctx->resolve();
    tqe::Direction dir;
    if (!cfg.direction.empty()) dir = tqe::parse_direction(cfg.direction);
    tqe::ReadCorpusResult rc = tqe::read_parallel_corpus(*src, *tgt, dir);
    tqe::SynthesisResult result = tqe::synthesize(
        rc.corpus, cfg.translator_spec(), cfg.synthesis_config());
    tqe::write_qe_tsv(result.dataset, *out);

    std::string rpath =
        report_path->empty() ? *out + ".report.json" : *report_path;
    json report;
    report["tool"] = std::string(tqe::kToolName);
    report["tool_version"] = std::string(tqe::kToolVersion);
    report["command"] = "synth";
    report["config"] = cfg.to_json();
    report["direction"] = rc.corpus.direction.tag();
    report["input"] = {{"pairs", rc.corpus.size()},
                       {"skipped_empty", rc.skipped}};
    report["stages"] = {{"sampled", result.report.sampled},
                        {"translated", result.report.translated},
                        {"labeled", result.report.labeled},
                        {"discarded_by_cutoff",
                         result.report.discarded_by_cutoff},
                        {"kept", result.report.kept}};
    tqe::atomic_write_file(rpath, report.dump(2) + "\n");
    write_meta(*out, "synth", cfg, {{"report", rpath}});

    std::printf("sampled %zu, translated %zu, labeled %zu, kept %zu, "
                "discarded %zu\n",
                result.report.sampled, result.report.translated,
                result.report.labeled, result.report.kept,
                result.report.discarded_by_cutoff);
    std::printf("dataset: %s (%zu tuples)\n", out->c_str(),
                result.dataset.size());
    std::printf("report: %s\n", rpath.c_str());
  });
}

// -------------------------------------------------------------- train ----

void add_train_command(CLI::App& app) {
  auto ctx = std::make_shared<Ctx>();
  auto data_paths = std::make_shared<std::vector<std::string>>();
  auto directions = std::make_shared<std::vector<std::string>>();
  auto out = std::make_shared<std::string>();
  auto history_path = std::make_shared<std::string>();

  CLI::App* sub = app.add_subcommand(
      "train", "Train the regressor on synthetic QE datasets");
  sub->add_option("--data", *data_paths,
                  "Training dataset TSV; repeat for multiple directions")
      ->required();
  sub->add_option("--direction", *directions,
                  "Direction tag per --data, in order (all or none)");
  sub->add_option("--out", *out, "Output checkpoint JSON")->required();
  sub->add_option("--history", *history_path,
                  "Validation history JSONL (default: <out>.history.jsonl)");
  register_config_flags(sub, ctx);
  register_encoder_flags(sub, ctx);
  register_train_flags(sub, ctx);
  register_seed_flag(sub, ctx);

  sub->callback([ctx, data_paths, directions, out, history_path]() {
    RunConfig cfg = ctx->resolve();
    if (!directions->empty() && directions->size() != data_paths->size()) {
      throw tqe::Error("got " + std::to_string(data_paths->size()) +
                       " --data flags but " +
                       std::to_string(directions->size()) +
                       " --direction flags; give one per dataset or none");
    }
    std::vector<tqe::QeDataset> sets;
    for (std::size_t i = 0; i < data_paths->size(); ++i) {
      tqe::Direction dir;
      if (!directions->empty()) {
        dir = tqe::parse_direction((*directions)[i]);
      } else if (!cfg.direction.empty()) {
        dir = tqe::parse_direction(cfg.direction);
      }
      sets.push_back(tqe::read_qe_tsv(
          (*data_paths)[i], tqe::DatasetKind::kSyntheticTer, dir));
    }

    tqe::TrainResult result =
        tqe::train(sets, cfg.encoder_config(), cfg.train_config());
    tqe::save_checkpoint(result.checkpoint, *out);

    std::string hpath =
        history_path->empty() ? *out + ".history.jsonl" : *history_path;
    std::string hist_text;
    for (const tqe::ValPoint& vp : result.history) {
      json row;
      row["lr"] = vp.lr;
      row["step"] = vp.step;
      row["val_rmse"] = vp.val_rmse;
      row["improved"] = vp.improved;
      hist_text += row.dump() + "\n";
    }
    tqe::atomic_write_file(hpath, hist_text);

    const tqe::TrainMetadata& meta = result.checkpoint.metadata;
    write_meta(*out, "train", cfg,
               {{"data", *data_paths},
                {"directions", meta.directions},
                {"history", hpath},
                {"best_val_rmse", meta.best_val_rmse},
                {"learning_rate", meta.learning_rate},
                {"steps", meta.steps}});

    std::printf("selected lr %g, best validation RMSE %.6f at step %lld\n",
                meta.learning_rate, meta.best_val_rmse,
                static_cast<long long>(meta.steps));
    std::printf("directions: %zu\n", meta.directions.size());
    std::printf("checkpoint: %s\n", out->c_str());
    std::printf("history: %s (%zu validation points)\n", hpath.c_str(),
                result.history.size());
  });
}

// ------------------------------------------------------------ predict ----

void add_predict_command(CLI::App& app) {
  auto ctx = std::make_shared<Ctx>();
  auto ckpt_path = std::make_shared<std::string>();
  auto input = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();

  CLI::App* sub = app.add_subcommand(
      "predict", "Score (source, hypothesis) pairs with a checkpoint");
  sub->add_option("--checkpoint", *ckpt_path, "Checkpoint JSON")->required();
  sub->add_option("--input", *input,
                  "Input TSV: source, hypothesis, [label ignored]")
      ->required();
  sub->add_option("--out", *out,
                  "Output TSV: input rows plus a prediction column")
      ->required();
  register_config_flags(sub, ctx);

  sub->callback([ctx, ckpt_path, input, out]() {
    RunConfig cfg = ctx->resolve();
    tqe::ModelCheckpoint ckpt = tqe::load_checkpoint(*ckpt_path);

    std::vector<std::string> lines = tqe::read_lines(*input);
    enum RowKind { kBlank, kHeader, kData };
    std::vector<RowKind> kinds(lines.size(), kBlank);
    std::vector<std::pair<std::string, std::string>> pairs;
    bool first_nonempty = true;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const std::string& line = lines[i];
      if (line.empty()) continue;
      std::vector<std::string> fields = split_tabs(line);
      if (fields.size() < 2) {
        throw tqe::ParseError(*input + ":" + std::to_string(i + 1) +
                              ": need at least source and hypothesis columns");
      }
      bool header = first_nonempty && fields.size() >= 3 &&
                    !parse_double_field(fields[2]).has_value();
      first_nonempty = false;
      if (header) {
        kinds[i] = kHeader;
      } else {
        kinds[i] = kData;
        pairs.emplace_back(fields[0], fields[1]);
      }
    }

    std::vector<double> scores = tqe::predict(ckpt, pairs);
    std::string text;
    std::size_t k = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      switch (kinds[i]) {
        case kBlank:
          text += "\n";
          break;
        case kHeader:
          text += lines[i] + "\tprediction\n";
          break;
        case kData:
          text += lines[i] + "\t" + tqe::format_label(scores[k++]) + "\n";
          break;
      }
    }
    if (lines.empty()) text.clear();
    tqe::atomic_write_file(*out, text);
    write_meta(*out, "predict", cfg,
               {{"checkpoint", *ckpt_path}, {"input", *input}});
    std::printf("wrote %zu predictions to %s\n", scores.size(), out->c_str());
  });
}

// ----------------------------------------------------------- evaluate ----

void add_evaluate_command(CLI::App& app) {
  auto ctx = std::make_shared<Ctx>();
  auto pred = std::make_shared<std::string>();
  auto pred_pol = std::make_shared<std::string>();
  auto gold = std::make_shared<std::string>();
  auto gold_pol = std::make_shared<std::string>();
  auto gold_kind = std::make_shared<std::string>();
  auto system_name = std::make_shared<std::string>("system");
  auto json_out = std::make_shared<std::string>();

  CLI::App* sub = app.add_subcommand(
      "evaluate", "Pearson correlation of predictions against gold labels");
  sub->add_option("--pred", *pred, "Prediction file (score per line or TSV)")
      ->required();
  sub->add_option("--pred-polarity", *pred_pol,
                  "Polarity of the predictions")
      ->required()
      ->check(CLI::IsMember({"lower-better", "higher-better"}));
  sub->add_option("--gold", *gold, "Gold dataset TSV")->required();
  sub->add_option("--gold-polarity", *gold_pol, "Polarity of the gold labels")
      ->required()
      ->check(CLI::IsMember({"lower-better", "higher-better"}));
  sub->add_option("--gold-kind", *gold_kind,
                  "Gold label kind (names the gold column in reports)")
      ->check(CLI::IsMember({"synthetic-ter", "gold-hter", "gold-da"}));
  sub->add_option("--system-name", *system_name, "System name in reports");
  sub->add_option("--json-out", *json_out, "Also write the JSON report here");
  register_config_flags(sub, ctx);

  sub->callback([ctx, pred, pred_pol, gold, gold_pol, gold_kind, system_name,
                 json_out]() {
    RunConfig cfg = ctx->resolve();
    tqe::Polarity pp = tqe::polarity_from_string(*pred_pol);
    tqe::Polarity gp = tqe::polarity_from_string(*gold_pol);
    tqe::DatasetKind kind = resolve_gold_kind(*gold_kind, gp);
    tqe::QeDataset gold_set = tqe::read_qe_tsv(*gold, kind);
    std::vector<double> preds = read_scores(*pred);

    tqe::CorrelationReport report =
        tqe::evaluate(preds, pp, gold_set, *system_name);
    print_report_table({report});
    json j = report_to_json(report);
    std::printf("%s\n", j.dump(2).c_str());
    if (!json_out->empty()) {
      json file_json = j;
      file_json["tool"] = std::string(tqe::kToolName);
      file_json["tool_version"] = std::string(tqe::kToolVersion);
      file_json["command"] = "evaluate";
      file_json["config"] = cfg.to_json();
      tqe::atomic_write_file(*json_out, file_json.dump(2) + "\n");
    }
  });
}

// ------------------------------------------------------------ compare ----

void add_compare_command(CLI::App& app) {
  auto ctx = std::make_shared<Ctx>();
  auto pred_a = std::make_shared<std::string>();
  auto pred_b = std::make_shared<std::string>();
  auto pol_a = std::make_shared<std::string>();
  auto pol_b = std::make_shared<std::string>();
  auto gold = std::make_shared<std::string>();
  auto gold_pol = std::make_shared<std::string>();
  auto gold_kind = std::make_shared<std::string>();
  auto name_a = std::make_shared<std::string>("system_a");
  auto name_b = std::make_shared<std::string>("system_b");
  auto json_out = std::make_shared<std::string>();

  CLI::App* sub = app.add_subcommand(
      "compare",
      "Williams significance test between two systems on shared gold labels");
  sub->add_option("--pred-a", *pred_a, "First system's prediction file")
      ->required();
  sub->add_option("--pred-b", *pred_b, "Second system's prediction file")
      ->required();
  sub->add_option("--pred-a-polarity", *pol_a, "Polarity of --pred-a")
      ->required()
      ->check(CLI::IsMember({"lower-better", "higher-better"}));
  sub->add_option("--pred-b-polarity", *pol_b, "Polarity of --pred-b")
      ->required()
      ->check(CLI::IsMember({"lower-better", "higher-better"}));
  sub->add_option("--gold", *gold, "Gold dataset TSV")->required();
  sub->add_option("--gold-polarity", *gold_pol, "Polarity of the gold labels")
      ->required()
      ->check(CLI::IsMember({"lower-better", "higher-better"}));
  sub->add_option("--gold-kind", *gold_kind,
                  "Gold label kind (names the gold column in reports)")
      ->check(CLI::IsMember({"synthetic-ter", "gold-hter", "gold-da"}));
  sub->add_option("--name-a", *name_a, "Name of the first system");
  sub->add_option("--name-b", *name_b, "Name of the second system");
  sub->add_option("--json-out", *json_out, "Also write the JSON report here");
  register_config_flags(sub, ctx);

  sub->callback([ctx, pred_a, pred_b, pol_a, pol_b, gold, gold_pol, gold_kind,
                 name_a, name_b, json_out]() {
    RunConfig cfg = ctx->resolve();
    tqe::Polarity pa = tqe::polarity_from_string(*pol_a);
    tqe::Polarity pb = tqe::polarity_from_string(*pol_b);
    tqe::Polarity gp = tqe::polarity_from_string(*gold_pol);
    tqe::DatasetKind kind = resolve_gold_kind(*gold_kind, gp);
    tqe::QeDataset gold_set = tqe::read_qe_tsv(*gold, kind);
    std::vector<double> preds_a = read_scores(*pred_a);
    std::vector<double> preds_b = read_scores(*pred_b);

    tqe::CompareResult result = tqe::compare(preds_a, pa, preds_b, pb,
                                             gold_set, *name_a, *name_b);
    print_report_table({result.report_a, result.report_b});
    const tqe::SignificanceResult& sig = result.significance;
    std::printf("\nwilliams: t = %.6f, df = %lld, p = %.6f\n", sig.t,
                static_cast<long long>(sig.df), sig.p);
    std::printf("winner: %s%s\n", sig.winner.c_str(),
                sig.winner != "tie" ? " *" : "");

    json j;
    j["system_a"] = report_to_json(result.report_a);
    j["system_b"] = report_to_json(result.report_b);
    j["t"] = sig.t;
    j["df"] = sig.df;
    j["p"] = sig.p;
    j["winner"] = sig.winner;
    std::printf("%s\n", j.dump(2).c_str());
    if (!json_out->empty()) {
      json file_json = j;
      file_json["tool"] = std::string(tqe::kToolName);
      file_json["tool_version"] = std::string(tqe::kToolVersion);
      file_json["command"] = "compare";
      file_json["config"] = cfg.to_json();
      tqe::atomic_write_file(*json_out, file_json.dump(2) + "\n");
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tqekit: unsupervised sentence-level translation quality "
               "estimation"};
  app.set_version_flag("--version", std::string(tqe::kToolVersion));
  app.require_subcommand(1);

  add_ter_command(app);
  add_synth_command(app);
  add_train_command(app);
  add_predict_command(app);
  add_evaluate_command(app);
  add_compare_command(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const tqe::DegenerateError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDegenerate;
  } catch (const tqe::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitContract;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitContract;
  }
  return 0;
}
