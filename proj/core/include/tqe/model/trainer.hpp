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

#ifndef TQE_MODEL_TRAINER_HPP_
#define TQE_MODEL_TRAINER_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "tqe/data.hpp"
#include "tqe/model/checkpoint.hpp"
#include "tqe/model/encoder.hpp"

namespace tqe {

struct AdamWConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;
};

/// One decoupled-weight-decay Adam update with bias correction:
///   m <- b1 m + (1-b1) g,  v <- b2 v + (1-b2) g^2
///   theta <- theta - lr (mhat / (sqrt(vhat) + eps) + wd theta)
/// `step` counts from 1 and drives the bias correction.
void adamw_step(Eigen::VectorXd& params, const Eigen::VectorXd& grads,
                Eigen::VectorXd& m, Eigen::VectorXd& v, long step, double lr,
                const AdamWConfig& config = {});

// Stateful wrapper owning the moment buffers and the step counter.
class AdamW {
 public:
  AdamW(std::ptrdiff_t size, double lr, const AdamWConfig& config = {});

  void step(Eigen::VectorXd& params, const Eigen::VectorXd& grads);
  long steps() const { return steps_; }
  double lr() const { return lr_; }

 private:
  double lr_;
  AdamWConfig config_;
  Eigen::VectorXd m_, v_;
  long steps_ = 0;
};

struct TrainConfig {
  int batch_size = 128;
  std::vector<double> lr_grid = {5e-5, 1e-5, 5e-6, 1e-6};
  int patience = 3;       // consecutive non-improving evaluations per rate
  long val_every = 10000;  // optimizer steps between evaluations
  double val_fraction = 0.10;
  long max_steps = 20000;  // hard cap per learning rate
  AdamWConfig adamw;
  std::uint64_t seed = 0;
  int vocab_max_size = 30000;
  int vocab_min_count = 1;

  void validate() const;  // throws Error
};

// One validation measurement during the grid search.
struct ValPoint {
  double lr = 0.0;
  long step = 0;
  double val_rmse = 0.0;
  bool improved = false;
};

struct TrainResult {
  ModelCheckpoint checkpoint;
  std::vector<ValPoint> history;
};

/// Full training protocol: pool the synthetic-ter datasets, hold out one
/// shared validation split, run every learning rate in the grid from an
/// identical initialization, early-stop each rate on validation RMSE, and
/// return the best parameters seen under the winning rate (ties go to the
/// earlier grid entry). Rates that produce a non-finite loss are skipped and
/// recorded in the metadata. Throws Error when preconditions fail or every
/// rate diverges.
TrainResult train(const std::vector<QeDataset>& train_sets,
                  const EncoderConfig& encoder_config,
                  const TrainConfig& train_config);

}  // namespace tqe

#endif  // TQE_MODEL_TRAINER_HPP_
