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

#include "tqe/model/vocab.hpp"

#include <algorithm>
#include <map>

#include "tqe/error.hpp"

namespace tqe {

namespace {
const char* kSpecials[] = {"[PAD]", "[UNK]", "[CLS]", "[SEP]"};
}

void Vocab::reindex() {
  token_to_id.clear();
  token_to_id.reserve(id_to_token.size());
  for (std::size_t i = 0; i < id_to_token.size(); ++i) {
    token_to_id[id_to_token[i]] = static_cast<int>(i);
  }
}

Tokens model_tokenize(const std::string& text) {
  TerConfig config;  // case-insensitive, punctuation split
  return tokenize(text, config);
}

Vocab build_vocab(const std::vector<QeDataset>& datasets,
                  std::size_t max_size, std::size_t min_count) {
  if (datasets.empty()) {
    throw Error("build_vocab: no datasets");
  }
  // std::map keeps tokens ordered, which makes the lexicographic tie-break
  // free after the stable sort by count.
  std::map<std::string, std::size_t> counts;
  for (const QeDataset& dataset : datasets) {
    for (const QeTuple& tuple : dataset.tuples) {
      for (const std::string& tok : model_tokenize(tuple.source)) {
        ++counts[tok];
      }
      for (const std::string& tok : model_tokenize(tuple.hypothesis)) {
        ++counts[tok];
      }
    }
  }

  std::vector<std::pair<std::string, std::size_t>> ranked;
  ranked.reserve(counts.size());
  for (auto& [tok, count] : counts) {
    if (count >= min_count) ranked.emplace_back(tok, count);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     return a.second > b.second;
                   });

  Vocab vocab;
  for (const char* special : kSpecials) {
    vocab.id_to_token.emplace_back(special);
  }
  std::size_t capacity = max_size > 4 ? max_size - 4 : 0;
  for (std::size_t i = 0; i < ranked.size() && i < capacity; ++i) {
    vocab.id_to_token.push_back(ranked[i].first);
  }
  if (vocab.id_to_token.size() == 4) {
    throw Error("build_vocab: no token passed min_count " +
                std::to_string(min_count) + " within max_size " +
                std::to_string(max_size));
  }
  vocab.reindex();
  return vocab;
}

}  // namespace tqe
