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

#include "tqe/ter.hpp"

#include <algorithm>

#include "tqe/error.hpp"
#include "tqe/text.hpp"

namespace tqe {

namespace {

// Full (m+1)x(n+1) Levenshtein table, row-major; rows index the hypothesis.
std::vector<std::size_t> fill_dp(const Tokens& hyp, const Tokens& ref) {
  const std::size_t m = hyp.size(), n = ref.size();
  std::vector<std::size_t> d((m + 1) * (n + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& {
    return d[i * (n + 1) + j];
  };
  for (std::size_t j = 0; j <= n; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= m; ++i) {
    at(i, 0) = i;
    for (std::size_t j = 1; j <= n; ++j) {
      std::size_t diag = at(i - 1, j - 1) + (hyp[i - 1] == ref[j - 1] ? 0 : 1);
      std::size_t del = at(i - 1, j) + 1;   // drop hyp token
      std::size_t ins = at(i, j - 1) + 1;   // add ref token
      at(i, j) = std::min({diag, del, ins});
    }
  }
  return d;
}

struct Decomposition {
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t substitutions = 0;
  // ref_matched[j] is true when ref[j] is aligned diagonally to an equal
  // hypothesis token in the canonical traceback.
  std::vector<bool> ref_matched;
};

// Canonical traceback: on equal cost prefer diagonal, then deletion, then
// insertion. This makes the decomposition (and the matched flags the shift
// search depends on) deterministic.
Decomposition trace_dp(const std::vector<std::size_t>& d, const Tokens& hyp,
                       const Tokens& ref) {
  const std::size_t m = hyp.size(), n = ref.size();
  auto at = [&](std::size_t i, std::size_t j) { return d[i * (n + 1) + j]; };

  Decomposition out;
  out.ref_matched.assign(n, false);
  std::size_t i = m, j = n;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      bool eq = hyp[i - 1] == ref[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + (eq ? 0 : 1)) {
        if (eq) {
          out.ref_matched[j - 1] = true;
        } else {
          ++out.substitutions;
        }
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      ++out.deletions;
      --i;
      continue;
    }
    ++out.insertions;
    --j;
  }
  return out;
}

// Distance-only Levenshtein with two rolling rows; used for scoring the many
// candidate sequences inside the shift search.
std::size_t edit_distance_rolling(const Tokens& hyp, const Tokens& ref,
                                  std::vector<std::size_t>& prev,
                                  std::vector<std::size_t>& cur) {
  const std::size_t m = hyp.size(), n = ref.size();
  prev.resize(n + 1);
  cur.resize(n + 1);
  for (std::size_t j = 0; j <= n; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= m; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= n; ++j) {
      std::size_t diag = prev[j - 1] + (hyp[i - 1] == ref[j - 1] ? 0 : 1);
      cur[j] = std::min({diag, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[n];
}

}  // namespace

Tokens tokenize(std::string_view sentence, const TerConfig& config) {
  Tokens tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  };
  for (char32_t cp : text::decode_utf8(sentence)) {
    if (text::is_whitespace(cp)) {
      flush();
      continue;
    }
    if (!config.case_sensitive) cp = text::fold_case(cp);
    if (config.split_punctuation && text::is_punctuation(cp)) {
      flush();
      std::string punct;
      text::append_utf8(cp, punct);
      tokens.push_back(std::move(punct));
      continue;
    }
    text::append_utf8(cp, current);
  }
  flush();
  return tokens;
}

std::size_t edit_distance(const Tokens& hyp, const Tokens& ref) {
  std::vector<std::size_t> prev, cur;
  return edit_distance_rolling(hyp, ref, prev, cur);
}

std::optional<std::pair<Shift, Tokens>> find_best_shift(
    const Tokens& hyp, const Tokens& ref, const TerConfig& config) {
  const std::size_t m = hyp.size(), n = ref.size();
  if (m == 0 || n == 0) return std::nullopt;

  std::vector<std::size_t> dp = fill_dp(hyp, ref);
  const std::size_t cur_dist = dp[m * (n + 1) + n];
  if (cur_dist == 0) return std::nullopt;
  Decomposition trace = trace_dp(dp, hyp, ref);

  // unmatched_before[j] = number of ref positions < j not exactly matched.
  std::vector<std::size_t> unmatched_before(n + 1, 0);
  for (std::size_t j = 0; j < n; ++j) {
    unmatched_before[j + 1] =
        unmatched_before[j] + (trace.ref_matched[j] ? 0 : 1);
  }
  auto span_has_unmatched = [&](std::size_t j, std::size_t len) {
    return unmatched_before[j + len] > unmatched_before[j];
  };

  bool found = false;
  Shift best;
  std::size_t best_dist = cur_dist;
  Tokens best_hyp;

  std::vector<std::size_t> row_a, row_b;  // scratch for candidate scoring
  Tokens moved, candidate;
  moved.reserve(m);
  candidate.reserve(m);

  const std::size_t max_span = std::min(config.max_shift_span, m);
  for (std::size_t start = 0; start < m; ++start) {
    // occ holds the ref positions where hyp[start, start+len) still matches.
    std::vector<std::size_t> occ;
    for (std::size_t j = 0; j < n; ++j) {
      if (ref[j] == hyp[start]) occ.push_back(j);
    }
    for (std::size_t len = 1; len <= max_span && start + len <= m; ++len) {
      if (len > 1) {
        std::vector<std::size_t> kept;
        for (std::size_t j : occ) {
          if (j + len <= n && ref[j + len - 1] == hyp[start + len - 1]) {
            kept.push_back(j);
          }
        }
        occ = std::move(kept);
      }
      if (occ.empty()) break;
      bool eligible = false;
      for (std::size_t j : occ) {
        if (j + len <= n && span_has_unmatched(j, len)) {
          eligible = true;
          break;
        }
      }
      if (!eligible) continue;

      // hyp with the span removed; destinations index into this sequence.
      moved.clear();
      moved.insert(moved.end(), hyp.begin(),
                   hyp.begin() + static_cast<std::ptrdiff_t>(start));
      moved.insert(moved.end(),
                   hyp.begin() + static_cast<std::ptrdiff_t>(start + len),
                   hyp.end());
      for (std::size_t dest = 0; dest + len <= m; ++dest) {
        if (dest == start) continue;
        std::size_t distance = dest > start ? dest - start : start - dest;
        if (distance > config.max_shift_distance) continue;
        candidate.clear();
        candidate.insert(candidate.end(), moved.begin(),
                         moved.begin() + static_cast<std::ptrdiff_t>(dest));
        candidate.insert(candidate.end(),
                         hyp.begin() + static_cast<std::ptrdiff_t>(start),
                         hyp.begin() + static_cast<std::ptrdiff_t>(start + len));
        candidate.insert(candidate.end(),
                         moved.begin() + static_cast<std::ptrdiff_t>(dest),
                         moved.end());
        std::size_t d = edit_distance_rolling(candidate, ref, row_a, row_b);
        // Candidates are visited in (start, len, dest) order, so a strict
        // improvement implements the documented tie-break.
        if (d < best_dist) {
          best_dist = d;
          best = Shift{start, len, dest};
          best_hyp = candidate;
          found = true;
        }
      }
    }
  }

  if (!found) return std::nullopt;
  return std::make_pair(best, std::move(best_hyp));
}

TerResult ter_tokens(Tokens hyp, const Tokens& ref, const TerConfig& config) {
  if (ref.empty()) {
    throw Error("TER: reference tokenizes to zero tokens "
                "(undefined denominator)");
  }
  TerResult result;
  result.ref_length = ref.size();
  while (auto shift = find_best_shift(hyp, ref, config)) {
    hyp = std::move(shift->second);
    ++result.shifts;
  }
  std::vector<std::size_t> dp = fill_dp(hyp, ref);
  Decomposition trace = trace_dp(dp, hyp, ref);
  result.insertions = trace.insertions;
  result.deletions = trace.deletions;
  result.substitutions = trace.substitutions;
  result.score = static_cast<double>(result.total_edits()) /
                 static_cast<double>(result.ref_length);
  return result;
}

TerResult ter(std::string_view hypothesis, std::string_view reference,
              const TerConfig& config) {
  return ter_tokens(tokenize(hypothesis, config), tokenize(reference, config),
                    config);
}

}  // namespace tqe
