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

#include "tqe/model/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "tqe/error.hpp"
#include "tqe/model/vocab.hpp"
#include "tqe/rng.hpp"

namespace tqe {

namespace {

constexpr std::size_t kMinTrainTuples = 20;

double eval_rmse(Model& model, const std::vector<const QeTuple*>& val,
                 int batch_size) {
  double ss = 0.0;
  std::vector<double> preds;
  for (std::size_t begin = 0; begin < val.size();
       begin += static_cast<std::size_t>(batch_size)) {
    std::size_t end =
        std::min(val.size(), begin + static_cast<std::size_t>(batch_size));
    std::vector<const QeTuple*> batch(val.begin() + begin, val.begin() + end);
    model.forward_loss(batch, &preds);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      double r = preds[i] - batch[i]->label;
      ss += r * r;
    }
  }
  return std::sqrt(ss / static_cast<double>(val.size()));
}

}  // namespace

void adamw_step(Eigen::VectorXd& params, const Eigen::VectorXd& grads,
                Eigen::VectorXd& m, Eigen::VectorXd& v, long step, double lr,
                const AdamWConfig& config) {
  if (step < 1) {
    throw Error("adamw_step: step counts from 1");
  }
  if (grads.size() != params.size() || m.size() != params.size() ||
      v.size() != params.size()) {
    throw Error("adamw_step: buffer sizes disagree");
  }
  m.array() = config.beta1 * m.array() + (1.0 - config.beta1) * grads.array();
  v.array() =
      config.beta2 * v.array() + (1.0 - config.beta2) * grads.array().square();
  const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(step));
  const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(step));
  params.array() -=
      lr * ((m.array() / bc1) / ((v.array() / bc2).sqrt() + config.eps) +
            config.weight_decay * params.array());
}

AdamW::AdamW(std::ptrdiff_t size, double lr, const AdamWConfig& config)
    : lr_(lr),
      config_(config),
      m_(Eigen::VectorXd::Zero(size)),
      v_(Eigen::VectorXd::Zero(size)) {
  if (!(lr > 0.0) || !std::isfinite(lr)) {
    throw Error("AdamW: learning rate must be positive and finite");
  }
}

void AdamW::step(Eigen::VectorXd& params, const Eigen::VectorXd& grads) {
  ++steps_;
  adamw_step(params, grads, m_, v_, steps_, lr_, config_);
}

void TrainConfig::validate() const {
  if (batch_size < 1) throw Error("train config: batch_size must be >= 1");
  if (lr_grid.empty()) throw Error("train config: lr_grid must be non-empty");
  for (double lr : lr_grid) {
    if (!(lr > 0.0) || !std::isfinite(lr)) {
      throw Error("train config: learning rates must be positive and finite");
    }
  }
  if (patience < 1) throw Error("train config: patience must be >= 1");
  if (val_every < 1) throw Error("train config: val_every must be >= 1");
  if (!(val_fraction > 0.0) || !(val_fraction < 1.0)) {
    throw Error("train config: val_fraction must lie in (0, 1)");
  }
  if (max_steps < 1) throw Error("train config: max_steps must be >= 1");
  if (vocab_max_size <= 4) {
    throw Error("train config: vocab_max_size must exceed the 4 specials");
  }
  if (vocab_min_count < 1) {
    throw Error("train config: vocab_min_count must be >= 1");
  }
  if (!(adamw.beta1 >= 0.0 && adamw.beta1 < 1.0) ||
      !(adamw.beta2 >= 0.0 && adamw.beta2 < 1.0)) {
    throw Error("train config: Adam betas must lie in [0, 1)");
  }
  if (!(adamw.eps > 0.0) || adamw.weight_decay < 0.0) {
    throw Error("train config: eps must be positive, weight_decay >= 0");
  }
}

TrainResult train(const std::vector<QeDataset>& train_sets,
                  const EncoderConfig& encoder_config,
                  const TrainConfig& train_config) {
  train_config.validate();
  encoder_config.validate();
  if (train_sets.empty()) {
    throw Error("train: no training datasets given");
  }
  for (const QeDataset& ds : train_sets) {
    if (ds.kind != DatasetKind::kSyntheticTer) {
      throw Error("train: training consumes synthetic-ter datasets, got " +
                  kind_to_string(ds.kind));
    }
  }

  std::vector<const QeTuple*> pool;
  std::vector<std::string> directions;
  for (const QeDataset& ds : train_sets) {
    for (const QeTuple& t : ds.tuples) {
      pool.push_back(&t);
      std::string tag = t.direction.tag();
      if (std::find(directions.begin(), directions.end(), tag) ==
          directions.end()) {
        directions.push_back(tag);
      }
    }
  }
  if (pool.size() < kMinTrainTuples) {
    throw Error("train: need at least " + std::to_string(kMinTrainTuples) +
                " tuples, got " + std::to_string(pool.size()));
  }

  Vocab vocab = build_vocab(train_sets, train_config.vocab_max_size,
                            train_config.vocab_min_count);

  // One validation split, shared by every learning rate.
  const std::size_t n = pool.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng split_rng(Rng::mix(train_config.seed, 0));
  split_rng.shuffle(order);
  const std::size_t val_count = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::llround(train_config.val_fraction * static_cast<double>(n))));
  if (val_count >= n) {
    throw Error("train: validation split leaves no training tuples");
  }
  std::vector<const QeTuple*> val, train_pool;
  val.reserve(val_count);
  train_pool.reserve(n - val_count);
  for (std::size_t i = 0; i < n; ++i) {
    (i < val_count ? val : train_pool).push_back(pool[order[i]]);
  }

  TrainResult result;
  bool have_winner = false;
  double winner_rmse = std::numeric_limits<double>::infinity();
  double winner_lr = 0.0;
  long winner_step = 0;
  Eigen::VectorXd winner_params;
  std::vector<double> diverged_lrs;

  for (std::size_t li = 0; li < train_config.lr_grid.size(); ++li) {
    const double lr = train_config.lr_grid[li];
    // Fresh model per rate; the shared encoder seed makes every rate start
    // from identical parameters.
    Model model(vocab, encoder_config);
    AdamW opt(model.parameters().size(), lr, train_config.adamw);
    Rng shuffle_rng(Rng::mix(train_config.seed, li + 1));

    double best_rmse = std::numeric_limits<double>::infinity();
    long best_step = 0;
    Eigen::VectorXd best_params;
    int bad = 0;
    bool stop = false;
    bool diverged = false;
    long step = 0;
    std::vector<const QeTuple*> epoch_order = train_pool;

    while (!stop) {
      shuffle_rng.shuffle(epoch_order);
      for (std::size_t begin = 0; begin < epoch_order.size() && !stop;
           begin += static_cast<std::size_t>(train_config.batch_size)) {
        std::size_t end = std::min(
            epoch_order.size(),
            begin + static_cast<std::size_t>(train_config.batch_size));
        std::vector<const QeTuple*> batch(epoch_order.begin() + begin,
                                          epoch_order.begin() + end);
        double loss = model.forward_loss(batch);
        if (!std::isfinite(loss)) {
          diverged = true;
          stop = true;
          break;
        }
        Eigen::VectorXd grads = model.backward();
        opt.step(model.mutable_parameters(), grads);
        ++step;

        const bool at_cap = step >= train_config.max_steps;
        if (step % train_config.val_every == 0 || at_cap) {
          double rmse = eval_rmse(model, val, train_config.batch_size);
          if (!std::isfinite(rmse)) {
            diverged = true;
            stop = true;
            break;
          }
          const bool improved = rmse < best_rmse;
          if (improved) {
            best_rmse = rmse;
            best_step = step;
            best_params = model.parameters();
            bad = 0;
          } else {
            ++bad;
          }
          result.history.push_back({lr, step, rmse, improved});
          if (bad >= train_config.patience) stop = true;
        }
        if (at_cap) stop = true;
      }
    }

    if (diverged || best_params.size() == 0) {
      diverged_lrs.push_back(lr);
      continue;
    }
    if (!have_winner || best_rmse < winner_rmse) {
      have_winner = true;
      winner_rmse = best_rmse;
      winner_lr = lr;
      winner_step = best_step;
      winner_params = std::move(best_params);
    }
  }

  if (!have_winner) {
    throw Error("train: every learning rate in the grid diverged");
  }

  result.checkpoint.vocab = std::move(vocab);
  result.checkpoint.encoder_config = encoder_config;
  result.checkpoint.parameters = std::move(winner_params);
  result.checkpoint.metadata.best_val_rmse = winner_rmse;
  result.checkpoint.metadata.learning_rate = winner_lr;
  result.checkpoint.metadata.steps = winner_step;
  result.checkpoint.metadata.directions = std::move(directions);
  result.checkpoint.metadata.diverged_lrs = std::move(diverged_lrs);
  return result;
}

}  // namespace tqe
