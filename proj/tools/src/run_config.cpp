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

#include "run_config.hpp"

#include <fstream>
#include <sstream>

#include "tqe/error.hpp"

namespace tqe::cli {

namespace {

using nlohmann::json;

double as_double(const json& j, const std::string& key) {
  if (!j.is_number()) throw Error("config: '" + key + "' must be a number");
  return j.get<double>();
}

std::int64_t as_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) {
    throw Error("config: '" + key + "' must be an integer");
  }
  return j.get<std::int64_t>();
}

std::string as_string(const json& j, const std::string& key) {
  if (!j.is_string()) throw Error("config: '" + key + "' must be a string");
  return j.get<std::string>();
}

bool as_bool(const json& j, const std::string& key) {
  if (!j.is_boolean()) throw Error("config: '" + key + "' must be a boolean");
  return j.get<bool>();
}

}  // namespace

RunConfig RunConfig::resolve(const std::string& config_path,
                             const std::string& preset_flag) {
  json file_json;
  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw IoError("cannot open config '" + config_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      file_json = json::parse(buf.str());
    } catch (const json::parse_error& e) {
      throw tqe::ParseError("config '" + config_path + "': " + e.what());
    }
    if (!file_json.is_object()) {
      throw Error("config '" + config_path + "': top level must be an object");
    }
  }

  RunConfig cfg;
  std::string preset_name;
  if (auto it = file_json.find("preset"); it != file_json.end()) {
    preset_name = as_string(*it, "preset");
  }
  if (!preset_flag.empty()) preset_name = preset_flag;
  if (!preset_name.empty()) cfg.apply_preset(preset_name);
  cfg.merge_json(file_json);
  cfg.preset = preset_name;
  return cfg;
}

void RunConfig::apply_preset(const std::string& name) {
  // Paper-mirroring sample tiers; the training protocol constants below are
  // identical across tiers.
  if (name == "high") {
    sample_size = 1000000;
  } else if (name == "medium") {
    sample_size = 200000;
  } else if (name == "low") {
    sample_size = 50000;
  } else {
    throw Error("unknown preset '" + name +
                "' (expected high, medium, or low)");
  }
  lr_grid = {5e-5, 1e-5, 5e-6, 1e-6};
  batch_size = 128;
  patience = 3;
  preset = name;
}

void RunConfig::merge_json(const nlohmann::json& j) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const json& v = *it;
    if (key == "preset") {
      continue;  // handled during resolve()
    } else if (key == "direction") {
      direction = as_string(v, key);
    } else if (key == "sample_size") {
      sample_size = as_int(v, key);
    } else if (key == "max_tokens") {
      max_tokens = static_cast<int>(as_int(v, key));
    } else if (key == "ter_cutoff") {
      ter_cutoff = as_double(v, key);
    } else if (key == "translator") {
      translator = as_string(v, key);
    } else if (key == "noise_lo") {
      noise_lo = as_double(v, key);
    } else if (key == "noise_hi") {
      noise_hi = as_double(v, key);
    } else if (key == "case_sensitive") {
      case_sensitive = as_bool(v, key);
    } else if (key == "split_punctuation") {
      split_punctuation = as_bool(v, key);
    } else if (key == "max_shift_span") {
      max_shift_span = static_cast<int>(as_int(v, key));
    } else if (key == "max_shift_distance") {
      max_shift_distance = static_cast<int>(as_int(v, key));
    } else if (key == "embed_dim") {
      embed_dim = static_cast<int>(as_int(v, key));
    } else if (key == "layers") {
      layers = static_cast<int>(as_int(v, key));
    } else if (key == "heads") {
      heads = static_cast<int>(as_int(v, key));
    } else if (key == "ff_dim") {
      ff_dim = static_cast<int>(as_int(v, key));
    } else if (key == "max_seq_len") {
      max_seq_len = static_cast<int>(as_int(v, key));
    } else if (key == "mode") {
      mode = as_string(v, key);
    } else if (key == "batch_size") {
      batch_size = static_cast<int>(as_int(v, key));
    } else if (key == "lr_grid") {
      if (!v.is_array() || v.empty()) {
        throw Error("config: 'lr_grid' must be a non-empty array");
      }
      lr_grid.clear();
      for (const json& lr : v) lr_grid.push_back(as_double(lr, key));
    } else if (key == "patience") {
      patience = static_cast<int>(as_int(v, key));
    } else if (key == "val_every") {
      val_every = as_int(v, key);
    } else if (key == "val_fraction") {
      val_fraction = as_double(v, key);
    } else if (key == "max_steps") {
      max_steps = as_int(v, key);
    } else if (key == "weight_decay") {
      weight_decay = as_double(v, key);
    } else if (key == "vocab_max_size") {
      vocab_max_size = static_cast<int>(as_int(v, key));
    } else if (key == "vocab_min_count") {
      vocab_min_count = static_cast<int>(as_int(v, key));
    } else if (key == "seed") {
      if (v.is_number_unsigned()) {
        seed = v.get<std::uint64_t>();
      } else if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
        seed = static_cast<std::uint64_t>(v.get<std::int64_t>());
      } else {
        throw Error("config: 'seed' must be a non-negative integer");
      }
    } else {
      throw Error("config: unknown field '" + key + "'");
    }
  }
}

nlohmann::json RunConfig::to_json() const {
  json j;
  j["preset"] = preset;
  j["direction"] = direction;
  j["sample_size"] = sample_size;
  j["max_tokens"] = max_tokens;
  j["ter_cutoff"] = ter_cutoff;
  j["translator"] = translator;
  j["noise_lo"] = noise_lo;
  j["noise_hi"] = noise_hi;
  j["case_sensitive"] = case_sensitive;
  j["split_punctuation"] = split_punctuation;
  j["max_shift_span"] = max_shift_span;
  j["max_shift_distance"] = max_shift_distance;
  j["embed_dim"] = embed_dim;
  j["layers"] = layers;
  j["heads"] = heads;
  j["ff_dim"] = ff_dim;
  j["max_seq_len"] = max_seq_len;
  j["mode"] = mode;
  j["batch_size"] = batch_size;
  j["lr_grid"] = lr_grid;
  j["patience"] = patience;
  j["val_every"] = val_every;
  j["val_fraction"] = val_fraction;
  j["max_steps"] = max_steps;
  j["weight_decay"] = weight_decay;
  j["vocab_max_size"] = vocab_max_size;
  j["vocab_min_count"] = vocab_min_count;
  j["seed"] = seed;
  return j;
}

TerConfig RunConfig::ter_config() const {
  TerConfig tc;
  tc.case_sensitive = case_sensitive;
  tc.split_punctuation = split_punctuation;
  tc.max_shift_span = max_shift_span;
  tc.max_shift_distance = max_shift_distance;
  return tc;
}

SynthesisConfig RunConfig::synthesis_config() const {
  SynthesisConfig sc;
  sc.sample_size = sample_size;
  sc.max_tokens = max_tokens;
  sc.ter_cutoff = ter_cutoff;
  sc.seed = seed;
  sc.ter_config = ter_config();
  return sc;
}

TranslatorSpec RunConfig::translator_spec() const {
  if (translator.rfind("file:", 0) == 0) {
    std::string path = translator.substr(5);
    if (path.empty()) throw Error("translator 'file:' needs a path");
    return file_backed_translator(path);
  }
  if (translator.rfind("cmd:", 0) == 0) {
    std::string tpl = translator.substr(4);
    if (tpl.empty()) throw Error("translator 'cmd:' needs a command template");
    return external_command_translator(tpl);
  }
  if (translator == "corrupting") {
    return corrupting_reference_translator(noise_lo, noise_hi, seed);
  }
  throw Error("unknown translator '" + translator +
              "' (expected file:<path>, cmd:<template>, or corrupting)");
}

EncoderConfig RunConfig::encoder_config() const {
  EncoderConfig ec;
  ec.embed_dim = embed_dim;
  ec.layers = layers;
  ec.heads = heads;
  ec.ff_dim = ff_dim;
  ec.max_seq_len = max_seq_len;
  ec.mode = mode_from_string(mode);
  ec.seed = seed;
  return ec;
}

TrainConfig RunConfig::train_config() const {
  TrainConfig tc;
  tc.batch_size = batch_size;
  tc.lr_grid = lr_grid;
  tc.patience = patience;
  tc.val_every = val_every;
  tc.val_fraction = val_fraction;
  tc.max_steps = max_steps;
  tc.adamw.weight_decay = weight_decay;
  tc.seed = seed;
  tc.vocab_max_size = vocab_max_size;
  tc.vocab_min_count = vocab_min_count;
  return tc;
}

}  // namespace tqe::cli
