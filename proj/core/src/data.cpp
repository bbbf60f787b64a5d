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

#include "tqe/data.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "tqe/error.hpp"
#include "tqe/io_util.hpp"
#include "tqe/rng.hpp"
#include "tqe/text.hpp"

namespace tqe {

namespace {

bool is_lower_ascii(const std::string& s) {
  for (char c : s) {
    if (c < 'a' || c > 'z') return false;
  }
  return !s.empty();
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

// Strict C-locale double parse over the whole field.
bool parse_label(const std::string& field, double& out) {
  if (field.empty()) return false;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

void replace_tabs(std::string& s) {
  std::replace(s.begin(), s.end(), '\t', ' ');
}

}  // namespace

std::string Direction::tag() const {
  if (!tagged()) return "untagged";
  return source_lang + "-" + target_lang;
}

void Direction::validate() const {
  if (!is_lower_ascii(source_lang) || !is_lower_ascii(target_lang)) {
    throw Error("direction '" + tag() +
                "': language codes must be non-empty lowercase ASCII");
  }
  if (source_lang == target_lang) {
    throw Error("direction '" + tag() +
                "': source and target language must differ");
  }
}

Direction parse_direction(const std::string& spec) {
  std::size_t dash = spec.find('-');
  if (dash == std::string::npos) {
    throw Error("direction '" + spec + "': expected the form 'src-tgt'");
  }
  Direction d{spec.substr(0, dash), spec.substr(dash + 1)};
  d.validate();
  return d;
}

std::string kind_to_string(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::kSyntheticTer:
      return "synthetic-ter";
    case DatasetKind::kGoldHter:
      return "gold-hter";
    case DatasetKind::kGoldDa:
      return "gold-da";
  }
  throw Error("unknown dataset kind");
}

DatasetKind kind_from_string(const std::string& s) {
  if (s == "synthetic-ter") return DatasetKind::kSyntheticTer;
  if (s == "gold-hter") return DatasetKind::kGoldHter;
  if (s == "gold-da") return DatasetKind::kGoldDa;
  throw Error("unknown dataset kind '" + s +
              "' (expected synthetic-ter, gold-hter or gold-da)");
}

ReadCorpusResult read_parallel_corpus(const std::string& source_path,
                                      const std::string& target_path,
                                      const Direction& direction) {
  std::vector<std::string> src_lines = read_lines(source_path);
  std::vector<std::string> tgt_lines = read_lines(target_path);
  if (src_lines.size() != tgt_lines.size()) {
    std::ostringstream msg;
    msg << "line count mismatch: " << source_path << " has "
        << src_lines.size() << " lines, " << target_path << " has "
        << tgt_lines.size();
    throw StructuralError(msg.str());
  }

  auto check_utf8 = [](const std::string& line, const std::string& path,
                       std::size_t line_no) {
    std::size_t bad = find_invalid_utf8(line);
    if (bad != std::string::npos) {
      std::ostringstream msg;
      msg << path << ":" << line_no << ": invalid UTF-8 at byte offset "
          << bad;
      throw ParseError(msg.str());
    }
  };

  ReadCorpusResult result;
  result.corpus.direction = direction;
  result.corpus.pairs.reserve(src_lines.size());
  for (std::size_t i = 0; i < src_lines.size(); ++i) {
    check_utf8(src_lines[i], source_path, i + 1);
    check_utf8(tgt_lines[i], target_path, i + 1);
    if (src_lines[i].empty() || tgt_lines[i].empty()) {
      ++result.skipped;
      continue;
    }
    ParallelPair pair{std::move(src_lines[i]), std::move(tgt_lines[i])};
    replace_tabs(pair.source);
    replace_tabs(pair.reference);
    result.corpus.pairs.push_back(std::move(pair));
  }
  return result;
}

QeDataset read_qe_tsv(const std::string& path, DatasetKind kind,
                      const Direction& direction, const TsvColumns& columns) {
  std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) {
    throw Error("empty QE TSV file: " + path);
  }
  std::size_t need =
      std::max({columns.source, columns.hypothesis, columns.label}) + 1;

  QeDataset dataset;
  dataset.kind = kind;
  dataset.tuples.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;  // tolerate blank lines
    std::vector<std::string> fields = split_tabs(lines[i]);
    if (fields.size() < need) {
      std::ostringstream msg;
      msg << path << ":" << (i + 1) << ": expected at least " << need
          << " tab-separated fields, got " << fields.size();
      throw ParseError(msg.str());
    }
    double label = 0.0;
    if (!parse_label(fields[columns.label], label)) {
      // A non-numeric label in the first row marks a header.
      if (i == 0) continue;
      std::ostringstream msg;
      msg << path << ":" << (i + 1) << ": non-numeric label '"
          << fields[columns.label] << "'";
      throw ParseError(msg.str());
    }
    dataset.tuples.push_back(QeTuple{std::move(fields[columns.source]),
                                     std::move(fields[columns.hypothesis]),
                                     label, direction});
  }
  if (dataset.tuples.empty()) {
    throw Error("no data rows in QE TSV file: " + path);
  }
  return dataset;
}

std::string format_label(double label) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", label);
  return buf;
}

void write_qe_tsv(const QeDataset& dataset, const std::string& path) {
  if (dataset.tuples.empty()) {
    throw Error("refusing to write empty QE dataset to " + path);
  }
  std::string content;
  for (const QeTuple& t : dataset.tuples) {
    content += t.source;
    content += '\t';
    content += t.hypothesis;
    content += '\t';
    content += format_label(t.label);
    content += '\n';
  }
  atomic_write_file(path, content);
}

ParallelCorpus sample_pairs(const ParallelCorpus& corpus, std::size_t n,
                            std::size_t max_tokens, std::uint64_t seed) {
  if (n < 1) throw Error("sample_pairs: n must be >= 1");
  if (max_tokens < 1) throw Error("sample_pairs: max_tokens must be >= 1");

  std::vector<std::size_t> eligible;
  eligible.reserve(corpus.pairs.size());
  for (std::size_t i = 0; i < corpus.pairs.size(); ++i) {
    const ParallelPair& p = corpus.pairs[i];
    if (text::whitespace_token_count(p.source) <= max_tokens &&
        text::whitespace_token_count(p.reference) <= max_tokens) {
      eligible.push_back(i);
    }
  }
  if (eligible.empty()) {
    throw Error("sample_pairs: no pair survived the length filter (max " +
                std::to_string(max_tokens) + " tokens per side)");
  }

  std::size_t k = std::min(n, eligible.size());
  Rng rng(seed);
  std::vector<std::size_t> picks = rng.sample_indices(eligible.size(), k);

  ParallelCorpus out;
  out.direction = corpus.direction;
  out.pairs.reserve(k);
  for (std::size_t pick : picks) {  // picks are sorted: original order kept
    out.pairs.push_back(corpus.pairs[eligible[pick]]);
  }
  return out;
}

}  // namespace tqe
