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

#include "tqe/synthesis.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "tqe/error.hpp"
#include "tqe/io_util.hpp"
#include "tqe/rng.hpp"

namespace fs = std::filesystem;

namespace tqe {

namespace {

std::vector<std::string> whitespace_split(const std::string& s) {
  std::vector<std::string> tokens;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

// Applies token noise to one sentence. The per-sentence rate is drawn first,
// then one uniform draw per consumed token decides whether to corrupt it;
// a swap consumes the right neighbor as well.
std::string corrupt_sentence(const std::string& sentence, double lo,
                             double hi, Rng& rng, double& rate_out) {
  double rate = lo == hi ? lo : rng.uniform(lo, hi);
  rate_out = rate;
  std::vector<std::string> tokens = whitespace_split(sentence);
  std::vector<std::string> out;
  out.reserve(tokens.size() + 4);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (rng.unit() >= rate) {
      out.push_back(tokens[i]);
      continue;
    }
    switch (rng.bounded(3)) {
      case 0:  // delete
        break;
      case 1:  // duplicate
        out.push_back(tokens[i]);
        out.push_back(tokens[i]);
        break;
      default:  // swap with right neighbor (no-op on the last token)
        if (i + 1 < tokens.size()) {
          out.push_back(tokens[i + 1]);
          out.push_back(tokens[i]);
          ++i;
        } else {
          out.push_back(tokens[i]);
        }
        break;
    }
  }
  return join(out);
}

std::string replace_all(std::string s, const std::string& from,
                        const std::string& to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

std::vector<std::string> run_external_command(
    const std::vector<std::string>& lines, const std::string& command_template) {
  if (command_template.find("{src}") == std::string::npos ||
      command_template.find("{out}") == std::string::npos) {
    throw Error("external translator command must contain {src} and {out} "
                "placeholders: " + command_template);
  }
  fs::path dir = fs::temp_directory_path() /
                 ("tqekit-mt-" + std::to_string(::getpid()) + "-" +
                  std::to_string(reinterpret_cast<std::uintptr_t>(&lines)));
  fs::create_directories(dir);
  fs::path src_path = dir / "src.txt";
  fs::path out_path = dir / "out.txt";
  fs::path err_path = dir / "stderr.txt";

  std::string src_content;
  for (const std::string& line : lines) {
    src_content += line;
    src_content += '\n';
  }
  atomic_write_file(src_path.string(), src_content);

  std::string command = replace_all(command_template, "{src}",
                                    src_path.string());
  command = replace_all(command, "{out}", out_path.string());
  command += " 2>" + err_path.string();

  int status = std::system(command.c_str());
  bool ok = status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0;
  if (!ok) {
    std::string diagnostics;
    try {
      for (const std::string& l : read_lines(err_path.string())) {
        diagnostics += "\n  " + l;
      }
    } catch (const IoError&) {
    }
    fs::remove_all(dir);
    std::ostringstream msg;
    msg << "external translator failed (status " << status
        << "): " << command_template;
    if (!diagnostics.empty()) msg << diagnostics;
    throw Error(msg.str());
  }

  std::vector<std::string> hyps = read_lines(out_path.string());
  fs::remove_all(dir);
  return hyps;
}

}  // namespace

TranslatorSpec file_backed_translator(const std::string& hypothesis_path) {
  TranslatorSpec spec;
  spec.kind = TranslatorSpec::Kind::kFileBacked;
  spec.hypothesis_path = hypothesis_path;
  return spec;
}

TranslatorSpec external_command_translator(
    const std::string& command_template) {
  TranslatorSpec spec;
  spec.kind = TranslatorSpec::Kind::kExternalCommand;
  spec.command_template = command_template;
  return spec;
}

TranslatorSpec corrupting_reference_translator(double noise_rate,
                                               std::uint64_t seed) {
  return corrupting_reference_translator(noise_rate, noise_rate, seed);
}

TranslatorSpec corrupting_reference_translator(double noise_lo,
                                               double noise_hi,
                                               std::uint64_t seed) {
  if (noise_lo < 0.0 || noise_hi > 1.0 || noise_lo > noise_hi) {
    throw Error("corrupting translator: noise interval must satisfy "
                "0 <= lo <= hi <= 1");
  }
  TranslatorSpec spec;
  spec.kind = TranslatorSpec::Kind::kCorrupting;
  spec.noise_lo = noise_lo;
  spec.noise_hi = noise_hi;
  spec.noise_seed = seed;
  return spec;
}

std::vector<std::string> obtain_hypotheses(
    const std::vector<std::string>& lines, const TranslatorSpec& translator,
    std::vector<double>* rates_out) {
  if (lines.empty()) {
    throw Error("obtain_hypotheses: no input sentences");
  }
  std::vector<std::string> hyps;
  switch (translator.kind) {
    case TranslatorSpec::Kind::kFileBacked:
      hyps = read_lines(translator.hypothesis_path);
      break;
    case TranslatorSpec::Kind::kExternalCommand:
      hyps = run_external_command(lines, translator.command_template);
      break;
    case TranslatorSpec::Kind::kCorrupting: {
      hyps.reserve(lines.size());
      if (rates_out) rates_out->reserve(lines.size());
      for (std::size_t i = 0; i < lines.size(); ++i) {
        Rng rng(Rng::mix(translator.noise_seed, i));
        double rate = 0.0;
        hyps.push_back(corrupt_sentence(lines[i], translator.noise_lo,
                                        translator.noise_hi, rng, rate));
        if (rates_out) rates_out->push_back(rate);
      }
      break;
    }
  }
  if (hyps.size() != lines.size()) {
    std::ostringstream msg;
    msg << "translator alignment error: " << lines.size() << " sources but "
        << hyps.size() << " hypotheses";
    throw StructuralError(msg.str());
  }
  return hyps;
}

SynthesisResult synthesize(const ParallelCorpus& corpus,
                           const TranslatorSpec& translator,
                           const SynthesisConfig& config) {
  if (corpus.pairs.empty()) {
    throw Error("synthesize: empty corpus");
  }
  if (config.sample_size < 1) {
    throw Error("synthesize: sample_size must be >= 1");
  }
  if (config.ter_cutoff <= 0.0) {
    throw Error("synthesize: ter_cutoff must be positive");
  }

  SynthesisResult result;
  ParallelCorpus sampled = sample_pairs(corpus, config.sample_size,
                                        config.max_tokens, config.seed);
  result.report.sampled = sampled.size();

  // The corrupting stand-in perturbs the reference side; real translators
  // consume the sources.
  std::vector<std::string> inputs;
  inputs.reserve(sampled.size());
  bool corrupting = translator.kind == TranslatorSpec::Kind::kCorrupting;
  for (const ParallelPair& p : sampled.pairs) {
    inputs.push_back(corrupting ? p.reference : p.source);
  }
  std::vector<std::string> hyps =
      obtain_hypotheses(inputs, translator,
                        corrupting ? &result.report.noise_rates : nullptr);
  result.report.translated = hyps.size();

  result.dataset.kind = DatasetKind::kSyntheticTer;
  result.report.labels.reserve(sampled.size());
  for (std::size_t i = 0; i < sampled.pairs.size(); ++i) {
    TerResult scored =
        ter(hyps[i], sampled.pairs[i].reference, config.ter_config);
    ++result.report.labeled;
    result.report.labels.push_back(scored.score);
    if (scored.score > config.ter_cutoff) {
      ++result.report.discarded_by_cutoff;
      continue;
    }
    result.dataset.tuples.push_back(QeTuple{sampled.pairs[i].source, hyps[i],
                                            scored.score, sampled.direction});
  }
  result.report.kept = result.dataset.tuples.size();
  if (result.report.kept == 0) {
    throw DegenerateError(
        "synthesize: every sampled pair was discarded by the TER cutoff (" +
        format_label(config.ter_cutoff) + ")");
  }
  return result;
}

}  // namespace tqe
