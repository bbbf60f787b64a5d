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

#ifndef TQE_MODEL_CHECKPOINT_HPP_
#define TQE_MODEL_CHECKPOINT_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tqe/model/encoder.hpp"
#include "tqe/model/vocab.hpp"

namespace tqe {

// Provenance recorded by the trainer alongside the winning parameters.
struct TrainMetadata {
  double best_val_rmse = 0.0;
  double learning_rate = 0.0;
  std::int64_t steps = 0;  // optimizer step of the restored parameters
  std::vector<std::string> directions;
  std::vector<double> diverged_lrs;
};

struct ModelCheckpoint {
  Vocab vocab;
  EncoderConfig encoder_config;
  Eigen::VectorXd parameters;  // full flat buffer, head included
  TrainMetadata metadata;

  Model to_model() const;
};

/// Writes the checkpoint as JSON, atomically. Doubles are emitted in
/// shortest round-trip form, so save followed by load reproduces every
/// finite value bit for bit. Throws Error if any value is non-finite or the
/// parameter buffer does not match the layout, IoError on write failure.
void save_checkpoint(const ModelCheckpoint& checkpoint,
                     const std::string& path);

/// Strict loader. Unknown fields at any level, missing or duplicated
/// tensors, shape mismatches, a bad format_version, or specials misplaced in
/// the vocabulary all throw (ParseError for malformed JSON, Error
/// otherwise).
ModelCheckpoint load_checkpoint(const std::string& path);

/// Scores (source, hypothesis) pairs with a checkpoint. Convenience wrapper
/// over Model::predict.
std::vector<double> predict(
    const ModelCheckpoint& checkpoint,
    const std::vector<std::pair<std::string, std::string>>& pairs);

}  // namespace tqe

#endif  // TQE_MODEL_CHECKPOINT_HPP_
