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

#ifndef TQE_SYNTHESIS_HPP_
#define TQE_SYNTHESIS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "tqe/data.hpp"
#include "tqe/ter.hpp"

namespace tqe {

// How MT hypotheses are obtained. Real decoders live behind the file or
// command variants (the external system is expected to honor its own beam
// settings; nothing here decodes). The corrupting variant is a built-in
// stand-in that perturbs the pair's reference, for tests and desk-scale
// experiments.
struct TranslatorSpec {
  enum class Kind {
    kFileBacked,       // read hypotheses from a line-aligned file
    kExternalCommand,  // run a command template with {src}/{out} placeholders
    kCorrupting,       // perturb references with seeded token noise
  };

  Kind kind = Kind::kFileBacked;
  std::string hypothesis_path;   // kFileBacked
  std::string command_template;  // kExternalCommand
  double noise_lo = 0.0;         // kCorrupting: per-sentence rate interval
  double noise_hi = 0.0;
  std::uint64_t noise_seed = 0;
};

TranslatorSpec file_backed_translator(const std::string& hypothesis_path);
TranslatorSpec external_command_translator(const std::string& command_template);

/// Built-in stand-in for an MT system: copies each reference and, per token,
/// with probability noise_rate applies one of delete / duplicate / swap with
/// the right neighbor, chosen uniformly. Deterministic per (seed, pair
/// index). The two-argument interval form draws a fresh rate per sentence,
/// uniformly from [noise_lo, noise_hi].
TranslatorSpec corrupting_reference_translator(double noise_rate,
                                               std::uint64_t seed);
TranslatorSpec corrupting_reference_translator(double noise_lo,
                                               double noise_hi,
                                               std::uint64_t seed);

struct SynthesisConfig {
  std::size_t sample_size = 1;
  std::size_t max_tokens = 128;
  double ter_cutoff = 1.0;
  std::uint64_t seed = 0;
  TerConfig ter_config;
};

// Stage counts plus the per-pair diagnostics tests rely on. The vectors are
// aligned with the sampled pairs (pre-cutoff); noise_rates is populated only
// by the corrupting translator.
struct SynthesisReport {
  std::size_t sampled = 0;
  std::size_t translated = 0;
  std::size_t labeled = 0;
  std::size_t discarded_by_cutoff = 0;
  std::size_t kept = 0;
  std::vector<double> labels;
  std::vector<double> noise_rates;
};

struct SynthesisResult {
  QeDataset dataset;
  SynthesisReport report;
};

/// Runs the given translator over the input lines: one hypothesis per line,
/// in order. For the corrupting variant the lines are the sentences to
/// perturb (synthesize passes references); `rates_out`, when non-null,
/// receives the per-sentence noise draws. Throws StructuralError when the
/// hypothesis count differs from the input count and Error when the external
/// command fails (with its captured stderr).
std::vector<std::string> obtain_hypotheses(
    const std::vector<std::string>& lines, const TranslatorSpec& translator,
    std::vector<double>* rates_out = nullptr);

/// Full pipeline: sample_pairs -> obtain_hypotheses -> TER labeling ->
/// cutoff filter (strictly-greater scores discarded, label == cutoff kept).
/// Dataset kind is synthetic-ter; direction is inherited from the corpus.
/// Throws DegenerateError when every pair is discarded.
SynthesisResult synthesize(const ParallelCorpus& corpus,
                           const TranslatorSpec& translator,
                           const SynthesisConfig& config);

}  // namespace tqe

#endif  // TQE_SYNTHESIS_HPP_
