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

#ifndef TQE_TER_HPP_
#define TQE_TER_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tqe {

// Normalization and shift-search bounds for TER scoring.
struct TerConfig {
  bool case_sensitive = false;
  bool split_punctuation = true;
  // Bounds on the greedy shift search, in tokens.
  std::size_t max_shift_span = 10;
  std::size_t max_shift_distance = 50;
};

struct TerResult {
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t substitutions = 0;
  std::size_t shifts = 0;
  std::size_t ref_length = 0;
  // (insertions + deletions + substitutions + shifts) / ref_length, exactly.
  double score = 0.0;

  std::size_t total_edits() const {
    return insertions + deletions + substitutions + shifts;
  }
};

// One block move: the span hyp[start, start+length) is removed and
// reinserted so that it starts at `destination` in the shortened sequence.
// destination == start would reproduce the input and is never returned.
struct Shift {
  std::size_t start = 0;
  std::size_t length = 0;
  std::size_t destination = 0;
};

using Tokens = std::vector<std::string>;

/// Splits on Unicode whitespace; with split_punctuation every punctuation
/// code point becomes its own token; without case_sensitive tokens are
/// case-folded. Empty input yields an empty list.
Tokens tokenize(std::string_view sentence, const TerConfig& config = {});

/// Word-level Levenshtein distance with unit insert/delete/substitute costs.
std::size_t edit_distance(const Tokens& hyp, const Tokens& ref);

/// Searches contiguous hypothesis spans (length 1..max_shift_span, moved at
/// most max_shift_distance positions) whose tokens exactly match a reference
/// span that the current edit-distance alignment leaves misaligned. Returns
/// the move giving the lowest post-shift edit distance, ties broken by lower
/// distance, then earlier start, then shorter span, then earlier destination;
/// nullopt when no move strictly reduces the distance.
std::optional<std::pair<Shift, Tokens>> find_best_shift(
    const Tokens& hyp, const Tokens& ref, const TerConfig& config = {});

/// Translation Edit Rate: greedy block shifts (one edit each) until no shift
/// reduces the edit distance, then the remaining distance decomposed into
/// insertions/deletions/substitutions via the DP traceback. Throws
/// Error when the reference tokenizes to nothing.
TerResult ter(std::string_view hypothesis, std::string_view reference,
              const TerConfig& config = {});

/// Same, over pre-tokenized input.
TerResult ter_tokens(Tokens hyp, const Tokens& ref,
                     const TerConfig& config = {});

}  // namespace tqe

#endif  // TQE_TER_HPP_
