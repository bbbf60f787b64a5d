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

#ifndef TQE_DATA_HPP_
#define TQE_DATA_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace tqe {

// Translation direction tag, e.g. {"en", "de"}. A default-constructed
// Direction is "untagged" and accepted wherever a tag is optional (gold
// test sets, ad-hoc evaluation data). Tags supplied by the user must pass
// validate().
struct Direction {
  std::string source_lang;
  std::string target_lang;

  bool tagged() const { return !source_lang.empty() || !target_lang.empty(); }

  /// "en-de" for tagged directions, "untagged" otherwise.
  std::string tag() const;

  /// Enforces: both codes non-empty lowercase ASCII, source != target.
  /// Throws Error on violation.
  void validate() const;

  friend bool operator==(const Direction& a, const Direction& b) {
    return a.source_lang == b.source_lang && a.target_lang == b.target_lang;
  }
  friend bool operator!=(const Direction& a, const Direction& b) {
    return !(a == b);
  }
};

/// Parses "en-de" into a validated Direction.
Direction parse_direction(const std::string& spec);

// One (source, reference) sentence pair. Sides are nonempty and free of
// embedded tabs and newlines (the corpus reader enforces this).
struct ParallelPair {
  std::string source;
  std::string reference;
};

struct ParallelCorpus {
  std::vector<ParallelPair> pairs;
  Direction direction;

  std::size_t size() const { return pairs.size(); }
};

enum class DatasetKind {
  kSyntheticTer,  // labels are TER in [0, cutoff]
  kGoldHter,      // labels are human-targeted TER, lower is better
  kGoldDa,        // labels are direct assessments, higher is better
};

std::string kind_to_string(DatasetKind kind);
DatasetKind kind_from_string(const std::string& s);

// One QE record: a source sentence, an MT hypothesis, and a quality label.
struct QeTuple {
  std::string source;
  std::string hypothesis;
  double label = 0.0;
  Direction direction;
};

struct QeDataset {
  std::vector<QeTuple> tuples;
  DatasetKind kind = DatasetKind::kSyntheticTer;

  std::size_t size() const { return tuples.size(); }
};

struct ReadCorpusResult {
  ParallelCorpus corpus;
  std::size_t skipped = 0;  // lines dropped because either side was empty
};

/// Reads two line-aligned UTF-8 files into a corpus. Pairs with an empty
/// source or reference line are dropped and counted in `skipped`. Embedded
/// tabs are replaced by spaces so downstream TSV output stays well-formed.
/// Throws StructuralError on a line-count mismatch (naming both counts) and
/// ParseError on undecodable bytes (naming the line).
ReadCorpusResult read_parallel_corpus(const std::string& source_path,
                                      const std::string& target_path,
                                      const Direction& direction);

// Column positions (0-based) for adapting foreign TSV layouts. The default
// is the canonical source/hypothesis/label order.
struct TsvColumns {
  std::size_t source = 0;
  std::size_t hypothesis = 1;
  std::size_t label = 2;
};

/// Reads a QE TSV into a dataset. Rows need at least enough tab-separated
/// fields to cover the mapped columns; a first row whose label field is not
/// numeric is treated as a header and skipped. Throws ParseError on a
/// non-numeric label in a data row (naming the row) and Error on an empty
/// file or a file with no data rows.
QeDataset read_qe_tsv(const std::string& path, DatasetKind kind,
                      const Direction& direction = Direction{},
                      const TsvColumns& columns = TsvColumns{});

/// Writes source/hypothesis/label rows, labels rendered with 6 decimal
/// places. The write is atomic (temp file + rename). Throws Error on an
/// empty dataset and IoError on I/O failure.
void write_qe_tsv(const QeDataset& dataset, const std::string& path);

/// Renders a label the way write_qe_tsv does ("0.333333").
std::string format_label(double label);

/// Drops pairs whose source or reference exceeds max_tokens whitespace
/// tokens, then samples min(n, remaining) pairs uniformly without
/// replacement with a generator seeded by `seed`. The result preserves the
/// original corpus order. Throws Error if no pair survives the filter.
ParallelCorpus sample_pairs(const ParallelCorpus& corpus, std::size_t n,
                            std::size_t max_tokens, std::uint64_t seed);

}  // namespace tqe

#endif  // TQE_DATA_HPP_
