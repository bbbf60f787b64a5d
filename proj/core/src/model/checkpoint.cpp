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

#include "tqe/model/checkpoint.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "tqe/error.hpp"
#include "tqe/io_util.hpp"
#include "tqe/version.hpp"

namespace tqe {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw Error("checkpoint: unknown field '" + it.key() + "' in " + where);
    }
  }
}

const json& require(const json& obj, const std::string& where,
                    const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error("checkpoint: missing field '" + std::string(key) + "' in " +
                where);
  }
  return *it;
}

double as_double(const json& j, const std::string& what) {
  if (!j.is_number()) {
    throw Error("checkpoint: " + what + " must be a number");
  }
  return j.get<double>();
}

std::int64_t as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) {
    throw Error("checkpoint: " + what + " must be an integer");
  }
  return j.get<std::int64_t>();
}

std::uint64_t as_uint(const json& j, const std::string& what) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  }
  throw Error("checkpoint: " + what + " must be a non-negative integer");
}

json tensor_to_json(const TensorSpec& spec, const Eigen::VectorXd& params) {
  Eigen::Map<const Eigen::MatrixXd> m(params.data() + spec.offset, spec.rows,
                                      spec.cols);
  json data = json::array();
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      data.push_back(m(r, c));
    }
  }
  json out;
  out["name"] = spec.name;
  out["shape"] = {spec.rows, spec.cols};
  out["data"] = std::move(data);
  return out;
}

void fill_tensor(const TensorSpec& spec, const json& data,
                 Eigen::VectorXd& params) {
  Eigen::Map<Eigen::MatrixXd> m(params.data() + spec.offset, spec.rows,
                                spec.cols);
  std::size_t idx = 0;
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      m(r, c) = as_double(data[idx], "tensor '" + spec.name + "' entry " +
                                         std::to_string(idx));
      ++idx;
    }
  }
}

}  // namespace

Model ModelCheckpoint::to_model() const {
  return Model(vocab, encoder_config, parameters);
}

void save_checkpoint(const ModelCheckpoint& checkpoint,
                     const std::string& path) {
  checkpoint.encoder_config.validate();
  ParamLayout layout(checkpoint.encoder_config, checkpoint.vocab.size());
  if (checkpoint.parameters.size() != layout.total_size()) {
    throw Error("checkpoint: parameter buffer has " +
                std::to_string(checkpoint.parameters.size()) +
                " entries, layout expects " +
                std::to_string(layout.total_size()));
  }
  if (!checkpoint.parameters.allFinite()) {
    throw Error("checkpoint: refusing to save non-finite parameters");
  }
  if (!std::isfinite(checkpoint.metadata.best_val_rmse) ||
      !std::isfinite(checkpoint.metadata.learning_rate)) {
    throw Error("checkpoint: refusing to save non-finite metadata");
  }

  const EncoderConfig& cfg = checkpoint.encoder_config;
  json j;
  j["format_version"] = 1;
  j["vocab"]["tokens"] = checkpoint.vocab.id_to_token;
  j["encoder_config"]["embed_dim"] = cfg.embed_dim;
  j["encoder_config"]["layers"] = cfg.layers;
  j["encoder_config"]["heads"] = cfg.heads;
  j["encoder_config"]["ff_dim"] = cfg.ff_dim;
  j["encoder_config"]["max_seq_len"] = cfg.max_seq_len;
  j["encoder_config"]["mode"] = mode_to_string(cfg.mode);
  j["encoder_config"]["seed"] = cfg.seed;

  json tensors = json::array();
  for (const TensorSpec& spec : layout.tensors()) {
    if (!spec.in_head) {
      tensors.push_back(tensor_to_json(spec, checkpoint.parameters));
    }
  }
  j["parameters"] = std::move(tensors);

  const TensorSpec& wspec = layout.find("head.weight");
  json weight = json::array();
  for (std::ptrdiff_t i = 0; i < wspec.size(); ++i) {
    weight.push_back(checkpoint.parameters[wspec.offset + i]);
  }
  j["head"]["weight"] = std::move(weight);
  j["head"]["bias"] =
      checkpoint.parameters[layout.find("head.bias").offset];

  json meta;
  meta["best_val_rmse"] = checkpoint.metadata.best_val_rmse;
  meta["learning_rate"] = checkpoint.metadata.learning_rate;
  meta["steps"] = checkpoint.metadata.steps;
  meta["directions"] = checkpoint.metadata.directions;
  meta["diverged_lrs"] = checkpoint.metadata.diverged_lrs;
  meta["tool"] = std::string(kToolName);
  meta["tool_version"] = std::string(kToolVersion);
  j["metadata"] = std::move(meta);

  atomic_write_file(path, j.dump() + "\n");
}

ModelCheckpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open checkpoint '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();

  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ParseError("checkpoint '" + path + "': " + e.what());
  }
  if (!j.is_object()) {
    throw Error("checkpoint '" + path + "': top level must be an object");
  }
  check_keys(j, "top level",
             {"format_version", "vocab", "encoder_config", "parameters",
              "head", "metadata"});

  std::int64_t version =
      as_int(require(j, "top level", "format_version"), "format_version");
  if (version != 1) {
    throw Error("checkpoint '" + path + "': unsupported format_version " +
                std::to_string(version));
  }

  const json& jvocab = require(j, "top level", "vocab");
  check_keys(jvocab, "vocab", {"tokens"});
  const json& jtokens = require(jvocab, "vocab", "tokens");
  if (!jtokens.is_array()) {
    throw Error("checkpoint: vocab.tokens must be an array");
  }
  ModelCheckpoint out;
  for (const json& tok : jtokens) {
    if (!tok.is_string()) {
      throw Error("checkpoint: vocab.tokens must contain strings");
    }
    out.vocab.id_to_token.push_back(tok.get<std::string>());
  }
  static const char* kSpecials[] = {"[PAD]", "[UNK]", "[CLS]", "[SEP]"};
  if (out.vocab.id_to_token.size() < 4) {
    throw Error("checkpoint: vocabulary lacks the four special tokens");
  }
  for (int i = 0; i < 4; ++i) {
    if (out.vocab.id_to_token[i] != kSpecials[i]) {
      throw Error("checkpoint: special token at id " + std::to_string(i) +
                  " is '" + out.vocab.id_to_token[i] + "', expected '" +
                  kSpecials[i] + "'");
    }
  }
  out.vocab.reindex();
  if (out.vocab.token_to_id.size() != out.vocab.id_to_token.size()) {
    throw Error("checkpoint: vocabulary contains duplicate tokens");
  }

  const json& jcfg = require(j, "top level", "encoder_config");
  check_keys(jcfg, "encoder_config",
             {"embed_dim", "layers", "heads", "ff_dim", "max_seq_len", "mode",
              "seed"});
  EncoderConfig& cfg = out.encoder_config;
  cfg.embed_dim = static_cast<int>(
      as_int(require(jcfg, "encoder_config", "embed_dim"), "embed_dim"));
  cfg.layers = static_cast<int>(
      as_int(require(jcfg, "encoder_config", "layers"), "layers"));
  cfg.heads = static_cast<int>(
      as_int(require(jcfg, "encoder_config", "heads"), "heads"));
  cfg.ff_dim = static_cast<int>(
      as_int(require(jcfg, "encoder_config", "ff_dim"), "ff_dim"));
  cfg.max_seq_len = static_cast<int>(as_int(
      require(jcfg, "encoder_config", "max_seq_len"), "max_seq_len"));
  const json& jmode = require(jcfg, "encoder_config", "mode");
  if (!jmode.is_string()) {
    throw Error("checkpoint: encoder_config.mode must be a string");
  }
  cfg.mode = mode_from_string(jmode.get<std::string>());
  cfg.seed = as_uint(require(jcfg, "encoder_config", "seed"), "seed");

  ParamLayout layout(cfg, out.vocab.size());
  out.parameters = Eigen::VectorXd::Zero(layout.total_size());

  const json& jparams = require(j, "top level", "parameters");
  if (!jparams.is_array()) {
    throw Error("checkpoint: parameters must be an array");
  }
  std::set<std::string> seen;
  for (const json& jt : jparams) {
    if (!jt.is_object()) {
      throw Error("checkpoint: each parameters entry must be an object");
    }
    check_keys(jt, "parameters entry", {"name", "shape", "data"});
    const json& jname = require(jt, "parameters entry", "name");
    if (!jname.is_string()) {
      throw Error("checkpoint: tensor name must be a string");
    }
    const std::string name = jname.get<std::string>();
    const TensorSpec& spec = layout.find(name);
    if (spec.in_head) {
      throw Error("checkpoint: tensor '" + name +
                  "' belongs under \"head\", not \"parameters\"");
    }
    if (!seen.insert(name).second) {
      throw Error("checkpoint: duplicate tensor '" + name + "'");
    }
    const json& jshape = require(jt, "parameters entry", "shape");
    if (!jshape.is_array() || jshape.size() != 2 ||
        as_int(jshape[0], "shape") != spec.rows ||
        as_int(jshape[1], "shape") != spec.cols) {
      throw Error("checkpoint: tensor '" + name + "' has shape " +
                  jshape.dump() + ", expected [" + std::to_string(spec.rows) +
                  "," + std::to_string(spec.cols) + "]");
    }
    const json& jdata = require(jt, "parameters entry", "data");
    if (!jdata.is_array() ||
        jdata.size() != static_cast<std::size_t>(spec.size())) {
      throw Error("checkpoint: tensor '" + name + "' carries " +
                  std::to_string(jdata.size()) + " values, expected " +
                  std::to_string(spec.size()));
    }
    fill_tensor(spec, jdata, out.parameters);
  }
  for (const TensorSpec& spec : layout.tensors()) {
    if (!spec.in_head && seen.find(spec.name) == seen.end()) {
      throw Error("checkpoint: missing tensor '" + spec.name + "'");
    }
  }

  const json& jhead = require(j, "top level", "head");
  check_keys(jhead, "head", {"weight", "bias"});
  const json& jweight = require(jhead, "head", "weight");
  const TensorSpec& wspec = layout.find("head.weight");
  if (!jweight.is_array() ||
      jweight.size() != static_cast<std::size_t>(wspec.size())) {
    throw Error("checkpoint: head.weight carries " +
                std::to_string(jweight.size()) + " values, expected " +
                std::to_string(wspec.size()));
  }
  for (std::ptrdiff_t i = 0; i < wspec.size(); ++i) {
    out.parameters[wspec.offset + i] = as_double(
        jweight[static_cast<std::size_t>(i)], "head.weight entry");
  }
  out.parameters[layout.find("head.bias").offset] =
      as_double(require(jhead, "head", "bias"), "head.bias");

  const json& jmeta = require(j, "top level", "metadata");
  check_keys(jmeta, "metadata",
             {"best_val_rmse", "learning_rate", "steps", "directions",
              "diverged_lrs", "tool", "tool_version"});
  out.metadata.best_val_rmse = as_double(
      require(jmeta, "metadata", "best_val_rmse"), "metadata.best_val_rmse");
  out.metadata.learning_rate = as_double(
      require(jmeta, "metadata", "learning_rate"), "metadata.learning_rate");
  out.metadata.steps =
      as_int(require(jmeta, "metadata", "steps"), "metadata.steps");
  const json& jdirs = require(jmeta, "metadata", "directions");
  if (!jdirs.is_array()) {
    throw Error("checkpoint: metadata.directions must be an array");
  }
  for (const json& dir : jdirs) {
    if (!dir.is_string()) {
      throw Error("checkpoint: metadata.directions must contain strings");
    }
    out.metadata.directions.push_back(dir.get<std::string>());
  }
  if (auto it = jmeta.find("diverged_lrs"); it != jmeta.end()) {
    if (!it->is_array()) {
      throw Error("checkpoint: metadata.diverged_lrs must be an array");
    }
    for (const json& lr : *it) {
      out.metadata.diverged_lrs.push_back(
          as_double(lr, "metadata.diverged_lrs entry"));
    }
  }
  return out;
}

std::vector<double> predict(
    const ModelCheckpoint& checkpoint,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  return checkpoint.to_model().predict(pairs);
}

}  // namespace tqe
