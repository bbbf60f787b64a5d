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
#include <vector>

#include <benchmark/benchmark.h>

#include "tqe/rng.hpp"
#include "tqe/ter.hpp"

namespace {

// Sentence pairs that exercise the shift search: the hypothesis is the
// reference with a few tokens moved, dropped, and substituted.
std::vector<std::pair<std::string, std::string>> make_pairs(
    std::size_t count, std::size_t length) {
  tqe::Rng rng(1234);
  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(count);
  for (std::size_t p = 0; p < count; ++p) {
    std::vector<std::string> ref;
    for (std::size_t i = 0; i < length; ++i) {
      ref.push_back("tok" + std::to_string(rng.bounded(40)));
    }
    std::vector<std::string> hyp = ref;
    for (int moves = 0; moves < 3 && hyp.size() > 2; ++moves) {
      std::size_t from = rng.bounded(hyp.size());
      std::string tok = hyp[from];
      hyp.erase(hyp.begin() + static_cast<std::ptrdiff_t>(from));
      std::size_t to = rng.bounded(hyp.size() + 1);
      hyp.insert(hyp.begin() + static_cast<std::ptrdiff_t>(to), tok);
    }
    if (!hyp.empty()) hyp[rng.bounded(hyp.size())] = "oov";
    std::string r, h;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      if (i) r += ' ';
      r += ref[i];
    }
    for (std::size_t i = 0; i < hyp.size(); ++i) {
      if (i) h += ' ';
      h += hyp[i];
    }
    pairs.emplace_back(std::move(h), std::move(r));
  }
  return pairs;
}

void BM_Ter(benchmark::State& state) {
  const std::size_t length = static_cast<std::size_t>(state.range(0));
  const auto pairs = make_pairs(64, length);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [hyp, ref] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(tqe::ter(hyp, ref));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_Ter)->Arg(10)->Arg(25)->Arg(50);

void BM_EditDistance(benchmark::State& state) {
  const std::size_t length = static_cast<std::size_t>(state.range(0));
  const auto pairs = make_pairs(64, length);
  std::vector<std::pair<tqe::Tokens, tqe::Tokens>> tokenized;
  tokenized.reserve(pairs.size());
  for (const auto& [hyp, ref] : pairs) {
    tokenized.emplace_back(tqe::tokenize(hyp), tqe::tokenize(ref));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [hyp, ref] = tokenized[i++ % tokenized.size()];
    benchmark::DoNotOptimize(tqe::edit_distance(hyp, ref));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_EditDistance)->Arg(10)->Arg(25)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
