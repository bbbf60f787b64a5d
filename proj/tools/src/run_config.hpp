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

#ifndef TQEKIT_TOOLS_RUN_CONFIG_HPP_
#define TQEKIT_TOOLS_RUN_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tqe/model/encoder.hpp"
#include "tqe/model/trainer.hpp"
#include "tqe/synthesis.hpp"
#include "tqe/ter.hpp"

namespace tqe::cli {

// Every knob a subcommand can consume, with documented defaults. Resolution
// order: defaults, then the named preset, then the JSON config file, then
// command-line flags (flags win).
struct RunConfig {
  std::string preset;     // "", "high", "medium", "low"
  std::string direction;  // "" = untagged

  // synthesis
  std::int64_t sample_size = 1000;  // desk-scale default; presets go higher
  int max_tokens = 128;
  double ter_cutoff = 1.0;
  std::string translator = "corrupting";  // file:<path> | cmd:<tpl> | corrupting
  double noise_lo = 0.0;
  double noise_hi = 0.0;

  // ter
  bool case_sensitive = false;
  bool split_punctuation = true;
  int max_shift_span = 10;
  int max_shift_distance = 50;

  // encoder
  int embed_dim = 64;
  int layers = 2;
  int heads = 2;
  int ff_dim = 128;
  int max_seq_len = 96;
  std::string mode = "concat";

  // training
  int batch_size = 128;
  std::vector<double> lr_grid = {5e-5, 1e-5, 5e-6, 1e-6};
  int patience = 3;
  long val_every = 10000;
  double val_fraction = 0.10;
  long max_steps = 20000;
  double weight_decay = 0.01;
  int vocab_max_size = 30000;
  int vocab_min_count = 1;

  std::uint64_t seed = 0;

  /// Builds the resolved config from the file and preset stages; flag
  /// overrides are applied by the caller afterwards.
  static RunConfig resolve(const std::string& config_path,
                           const std::string& preset_flag);

  void apply_preset(const std::string& name);        // throws Error
  void merge_json(const nlohmann::json& j);          // strict keys
  nlohmann::json to_json() const;                    // full echo

  TerConfig ter_config() const;
  SynthesisConfig synthesis_config() const;
  TranslatorSpec translator_spec() const;  // parses the translator string
  EncoderConfig encoder_config() const;
  TrainConfig train_config() const;
};

}  // namespace tqe::cli

#endif  // TQEKIT_TOOLS_RUN_CONFIG_HPP_
