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

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <benchmark/benchmark.h>

#include "tqe/data.hpp"
#include "tqe/model/encoder.hpp"
#include "tqe/model/vocab.hpp"
#include "tqe/rng.hpp"

namespace {

struct Fixture {
  tqe::Vocab vocab;
  std::vector<tqe::QeTuple> tuples;

  explicit Fixture(std::size_t batch, std::size_t length) {
    vocab.id_to_token = {"[PAD]", "[UNK]", "[CLS]", "[SEP]"};
    for (int i = 0; i < 200; ++i) {
      vocab.id_to_token.push_back("tok" + std::to_string(i));
    }
    vocab.reindex();
    tqe::Rng rng(77);
    for (std::size_t b = 0; b < batch; ++b) {
      std::string src, hyp;
      for (std::size_t i = 0; i < length; ++i) {
        if (i) {
          src += ' ';
          hyp += ' ';
        }
        src += "tok" + std::to_string(rng.bounded(200));
        hyp += "tok" + std::to_string(rng.bounded(200));
      }
      tuples.push_back({std::move(src), std::move(hyp),
                        rng.unit(), {}});
    }
  }

  std::vector<const tqe::QeTuple*> batch() const {
    std::vector<const tqe::QeTuple*> out;
    out.reserve(tuples.size());
    for (const tqe::QeTuple& t : tuples) out.push_back(&t);
    return out;
  }
};

tqe::EncoderConfig bench_config(tqe::EncodingMode mode) {
  tqe::EncoderConfig config;
  config.embed_dim = 64;
  config.layers = 2;
  config.heads = 4;
  config.ff_dim = 128;
  config.max_seq_len = 64;
  config.mode = mode;
  config.seed = 9;
  return config;
}

void BM_ForwardLoss(benchmark::State& state) {
  const auto mode = state.range(0) == 0 ? tqe::EncodingMode::kSplit
                                        : tqe::EncodingMode::kConcat;
  Fixture fix(static_cast<std::size_t>(state.range(1)), 20);
  tqe::Model model(fix.vocab, bench_config(mode));
  const auto batch = fix.batch();
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.forward_loss(batch));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(batch.size()));
}
BENCHMARK(BM_ForwardLoss)
    ->ArgsProduct({{0, 1}, {8, 32}})
    ->ArgNames({"concat", "batch"});

void BM_ForwardBackward(benchmark::State& state) {
  const auto mode = state.range(0) == 0 ? tqe::EncodingMode::kSplit
                                        : tqe::EncodingMode::kConcat;
  Fixture fix(static_cast<std::size_t>(state.range(1)), 20);
  tqe::Model model(fix.vocab, bench_config(mode));
  const auto batch = fix.batch();
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.forward_loss(batch));
    benchmark::DoNotOptimize(model.backward());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(batch.size()));
}
BENCHMARK(BM_ForwardBackward)
    ->ArgsProduct({{0, 1}, {8, 32}})
    ->ArgNames({"concat", "batch"});

void BM_Predict(benchmark::State& state) {
  Fixture fix(32, 20);
  tqe::Model model(fix.vocab, bench_config(tqe::EncodingMode::kConcat));
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const tqe::QeTuple& t : fix.tuples) {
    pairs.emplace_back(t.source, t.hypothesis);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.predict(pairs));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(pairs.size()));
}
BENCHMARK(BM_Predict);

}  // namespace
