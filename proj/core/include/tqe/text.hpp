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

#ifndef TQE_TEXT_HPP_
#define TQE_TEXT_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tqe::text {

// Minimal code-point utilities for the tokenizer. Coverage is intentionally
// table-based and small: Unicode space separators, the common punctuation
// blocks (ASCII, Latin-1, General Punctuation, CJK symbols, fullwidth forms)
// and a simple case fold for Latin, Greek and Cyrillic letters. Invalid bytes
// decode as U+FFFD so tokenization never fails.

/// Decodes the UTF-8 string into code points; malformed sequences become
/// single U+FFFD code points (one per bad byte).
std::vector<char32_t> decode_utf8(std::string_view s);

/// Encodes one code point as UTF-8 and appends it to `out`.
void append_utf8(char32_t cp, std::string& out);

bool is_whitespace(char32_t cp);
bool is_punctuation(char32_t cp);
char32_t fold_case(char32_t cp);

/// Number of whitespace-separated tokens. Used by the corpus length filter.
std::size_t whitespace_token_count(std::string_view s);

}  // namespace tqe::text

#endif  // TQE_TEXT_HPP_
