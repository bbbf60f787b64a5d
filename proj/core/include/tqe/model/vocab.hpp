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

#ifndef TQE_MODEL_VOCAB_HPP_
#define TQE_MODEL_VOCAB_HPP_

#include <string>
#include <unordered_map>
#include <vector>

#include "tqe/data.hpp"
#include "tqe/ter.hpp"

namespace tqe {

// Dense token ids with the four specials fixed at 0..3. Text is segmented
// with the TER tokenizer (case-insensitive, punctuation split) so vocabulary
// and edit-rate labels agree on what a token is.
struct Vocab {
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kCls = 2;
  static constexpr int kSep = 3;

  std::vector<std::string> id_to_token;  // specials occupy 0..3
  std::unordered_map<std::string, int> token_to_id;

  int size() const { return static_cast<int>(id_to_token.size()); }

  int lookup(const std::string& token) const {
    auto it = token_to_id.find(token);
    return it == token_to_id.end() ? kUnk : it->second;
  }

  /// Rebuilds token_to_id from id_to_token (used after deserialization).
  void reindex();
};

/// The tokenizer shared by vocabulary construction and model input.
Tokens model_tokenize(const std::string& text);

/// Counts tokens over the sources and hypotheses of all datasets, keeps
/// those with count >= min_count ranked by (count desc, token asc), capped
/// at max_size - 4, and prepends the specials. Throws Error when no token
/// survives or the datasets are empty.
Vocab build_vocab(const std::vector<QeDataset>& datasets,
                  std::size_t max_size, std::size_t min_count);

}  // namespace tqe

#endif  // TQE_MODEL_VOCAB_HPP_
