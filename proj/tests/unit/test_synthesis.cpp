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

#include "tqe/synthesis.hpp"

#include <cstddef>
#include <string>
#include <vector>

#include "doctest.h"
#include "temp_dir.hpp"
#include "tqe/error.hpp"
#include "tqe/eval.hpp"
#include "tqe/rng.hpp"
#include "tqe/ter.hpp"

namespace tqe {
namespace {

ParallelCorpus toy_corpus(std::size_t pairs, std::uint64_t seed,
                          std::size_t min_len = 4, std::size_t max_len = 12) {
  ParallelCorpus corpus;
  corpus.direction = Direction{"aa", "bb"};
  Rng rng(seed);
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::size_t len = min_len + rng.bounded(max_len - min_len + 1);
    std::string src, ref;
    for (std::size_t t = 0; t < len; ++t) {
      if (t) {
        src += ' ';
        ref += ' ';
      }
      const std::string word = "w" + std::to_string(rng.bounded(40));
      src += "s" + word;
      ref += word;
    }
    corpus.pairs.push_back({src, ref});
  }
  return corpus;
}

TEST_CASE("file-backed translator returns the aligned lines") {
  tqetest::TempDir dir;
  const auto path = dir.write("hyp.txt", "one\ntwo\nthree\n");
  const std::vector<std::string> sources = {"a", "b", "c"};
  const std::vector<std::string> hyps =
      obtain_hypotheses(sources, file_backed_translator(path));
  CHECK(hyps == std::vector<std::string>{"one", "two", "three"});
}

TEST_CASE("file-backed translator reports misalignment with both counts") {
  tqetest::TempDir dir;
  const auto path = dir.write("hyp.txt", "one\ntwo\n");
  const std::vector<std::string> sources = {"a", "b", "c"};
  try {
    obtain_hypotheses(sources, file_backed_translator(path));
    FAIL("expected StructuralError");
  } catch (const StructuralError& e) {
    const std::string msg = e.what();
    CHECK(msg.find('3') != std::string::npos);
    CHECK(msg.find('2') != std::string::npos);
  }
}

TEST_CASE("external command translator runs the template") {
  const std::vector<std::string> sources = {"alpha beta", "gamma"};
  const std::vector<std::string> hyps = obtain_hypotheses(
      sources, external_command_translator("cat {src} > {out}"));
  CHECK(hyps == sources);
}

TEST_CASE("external command failure surfaces as an error") {
  const std::vector<std::string> sources = {"a"};
  CHECK_THROWS_AS(
      obtain_hypotheses(sources,
                        external_command_translator("exit 7 # {src} {out}")),
      Error);
}

TEST_CASE("obtain_hypotheses rejects an empty input") {
  CHECK_THROWS_AS(obtain_hypotheses({}, file_backed_translator("unused")),
                  Error);
}

TEST_CASE("corrupting translator at rate zero copies the references") {
  const std::vector<std::string> lines = {"a b c", "d e f g"};
  std::vector<double> rates;
  const std::vector<std::string> hyps = obtain_hypotheses(
      lines, corrupting_reference_translator(0.0, 7), &rates);
  CHECK(hyps == lines);
  CHECK(rates == std::vector<double>{0.0, 0.0});
}

TEST_CASE("corrupting translator is deterministic per seed and pair index") {
  const std::vector<std::string> lines = {"a b c d e", "f g h i j", "k l m"};
  const auto first =
      obtain_hypotheses(lines, corrupting_reference_translator(0.8, 11));
  const auto second =
      obtain_hypotheses(lines, corrupting_reference_translator(0.8, 11));
  CHECK(first == second);
  const auto other =
      obtain_hypotheses(lines, corrupting_reference_translator(0.8, 12));
  CHECK(first != other);
}

TEST_CASE("corrupting translator rejects a bad noise interval") {
  CHECK_THROWS_AS(corrupting_reference_translator(-0.1, 1), Error);
  CHECK_THROWS_AS(corrupting_reference_translator(1.1, 1), Error);
  CHECK_THROWS_AS(corrupting_reference_translator(0.7, 0.3, 1), Error);
}

TEST_CASE("interval noise draws per-sentence rates inside the bounds") {
  std::vector<std::string> lines(50, "a b c d e f");
  std::vector<double> rates;
  obtain_hypotheses(lines, corrupting_reference_translator(0.2, 0.6, 5),
                    &rates);
  REQUIRE(rates.size() == 50);
  bool varied = false;
  for (double rate : rates) {
    REQUIRE(rate >= 0.2);
    REQUIRE(rate < 0.6);
    varied = varied || rate != rates[0];
  }
  CHECK(varied);
}

TEST_CASE("mean TER rises with the corruption rate") {
  const ParallelCorpus corpus = toy_corpus(500, 99);
  double previous = -1.0;
  for (double rate : {0.1, 0.3, 0.5}) {
    std::vector<std::string> refs;
    for (const ParallelPair& pair : corpus.pairs) {
      refs.push_back(pair.reference);
    }
    const std::vector<std::string> hyps =
        obtain_hypotheses(refs, corrupting_reference_translator(rate, 123));
    double total = 0.0;
    for (std::size_t i = 0; i < refs.size(); ++i) {
      total += ter(hyps[i], refs[i]).score;
    }
    const double mean = total / static_cast<double>(refs.size());
    CHECK(mean > previous);
    previous = mean;
  }
}

TEST_CASE("synthesize keeps cutoff-passing tuples and reports stages") {
  // File-backed hypotheses engineered to produce labels 0.0, 0.5, 1.25.
  tqetest::TempDir dir;
  ParallelCorpus corpus;
  corpus.direction = Direction{"aa", "bb"};
  corpus.pairs = {
      {"s1", "a b c d"},
      {"s2", "e f g h"},
      {"s3", "p q r s"},
  };
  const auto hyp_path =
      dir.write("hyps.txt", "a b c d\ne f x y\nu v w x t\n");
  // Labels: 0/4, 2/4, 5/4.
  SynthesisConfig config;
  config.sample_size = 3;
  config.seed = 1;
  const SynthesisResult result = synthesize(
      corpus, file_backed_translator(hyp_path), config);

  CHECK(result.report.sampled == 3);
  CHECK(result.report.translated == 3);
  CHECK(result.report.labeled == 3);
  CHECK(result.report.discarded_by_cutoff == 1);
  CHECK(result.report.kept == 2);
  CHECK(result.report.kept + result.report.discarded_by_cutoff ==
        result.report.labeled);

  REQUIRE(result.dataset.size() == 2);
  CHECK(result.dataset.kind == DatasetKind::kSyntheticTer);
  CHECK(result.dataset.tuples[0].label == 0.0);
  CHECK(result.dataset.tuples[1].label == 0.5);
  CHECK(result.dataset.tuples[0].source == "s1");
  CHECK(result.dataset.tuples[0].direction == corpus.direction);
  REQUIRE(result.report.labels.size() == 3);
  CHECK(result.report.labels[2] == 1.25);
}

TEST_CASE("synthesize with the identity translator labels everything zero") {
  tqetest::TempDir dir;
  const ParallelCorpus corpus = toy_corpus(20, 3);
  std::string refs;
  for (const ParallelPair& pair : corpus.pairs) refs += pair.reference + "\n";
  const auto hyp_path = dir.write("hyps.txt", refs);
  SynthesisConfig config;
  config.sample_size = corpus.size();
  const SynthesisResult result = synthesize(
      corpus, file_backed_translator(hyp_path), config);
  CHECK(result.report.kept == 20);
  CHECK(result.report.discarded_by_cutoff == 0);
  for (const QeTuple& tuple : result.dataset.tuples) {
    CHECK(tuple.label == 0.0);
  }
}

TEST_CASE("synthesize honors cutoff boundaries inclusively") {
  // One-token references: a duplicated token gives TER exactly 1.0.
  ParallelCorpus corpus;
  corpus.pairs = {{"s", "tok"}};
  tqetest::TempDir dir;
  const auto hyp_path = dir.write("hyps.txt", "tok tok\n");
  SynthesisConfig config;
  config.sample_size = 1;
  config.ter_cutoff = 1.0;
  const SynthesisResult result = synthesize(
      corpus, file_backed_translator(hyp_path), config);
  CHECK(result.report.kept == 1);
  CHECK(result.dataset.tuples[0].label == 1.0);
}

TEST_CASE("synthesize throws DegenerateError when everything is discarded") {
  ParallelCorpus corpus;
  corpus.pairs = {{"s", "tok"}};
  tqetest::TempDir dir;
  const auto hyp_path = dir.write("hyps.txt", "tok tok tok\n");
  SynthesisConfig config;
  config.sample_size = 1;
  config.ter_cutoff = 1.0;  // label is 2.0, above the cutoff
  CHECK_THROWS_AS(synthesize(corpus, file_backed_translator(hyp_path),
                             config),
                  DegenerateError);
}

TEST_CASE("synthesize validates its config") {
  const ParallelCorpus corpus = toy_corpus(5, 1);
  SynthesisConfig config;
  config.sample_size = 0;
  CHECK_THROWS_AS(
      synthesize(corpus, corrupting_reference_translator(0.1, 1), config),
      Error);
  SynthesisConfig bad_cutoff;
  bad_cutoff.sample_size = 5;
  bad_cutoff.ter_cutoff = 0.0;
  CHECK_THROWS_AS(synthesize(corpus, corrupting_reference_translator(0.1, 1),
                             bad_cutoff),
                  Error);
}

TEST_CASE("kept labels verify bit-exactly against independent TER") {
  const ParallelCorpus corpus = toy_corpus(120, 17);
  SynthesisConfig config;
  config.sample_size = 100;
  config.seed = 42;
  const SynthesisResult result = synthesize(
      corpus, corrupting_reference_translator(0.5, 77), config);

  CHECK(result.report.sampled == 100);
  CHECK(result.report.kept + result.report.discarded_by_cutoff ==
        result.report.sampled);
  CHECK(result.dataset.size() == result.report.kept);

  // Recover each tuple's reference from the corpus by its source sentence.
  for (const QeTuple& tuple : result.dataset.tuples) {
    std::string reference;
    for (const ParallelPair& pair : corpus.pairs) {
      if (pair.source == tuple.source) {
        reference = pair.reference;
        break;
      }
    }
    REQUIRE_FALSE(reference.empty());
    const TerResult independent =
        ter(tuple.hypothesis, reference, config.ter_config);
    CHECK(tuple.label == independent.score);
    CHECK(tuple.label <= config.ter_cutoff);
    CHECK(tuple.label >= 0.0);
  }
}

TEST_CASE("noise draws correlate with the TER labels") {
  const ParallelCorpus corpus = toy_corpus(500, 23, 6, 14);
  SynthesisConfig config;
  config.sample_size = 500;
  config.ter_cutoff = 10.0;  // keep everything; correlate raw labels
  config.seed = 5;
  const SynthesisResult result = synthesize(
      corpus, corrupting_reference_translator(0.0, 0.9, 55), config);
  REQUIRE(result.report.noise_rates.size() == 500);
  REQUIRE(result.report.labels.size() == 500);
  CHECK(pearson(result.report.noise_rates, result.report.labels) > 0.5);
}

TEST_CASE("synthesize is deterministic given the seed") {
  const ParallelCorpus corpus = toy_corpus(80, 29);
  SynthesisConfig config;
  config.sample_size = 40;
  config.seed = 9;
  const TranslatorSpec translator = corrupting_reference_translator(0.4, 31);
  const SynthesisResult a = synthesize(corpus, translator, config);
  const SynthesisResult b = synthesize(corpus, translator, config);
  REQUIRE(a.dataset.size() == b.dataset.size());
  for (std::size_t i = 0; i < a.dataset.size(); ++i) {
    CHECK(a.dataset.tuples[i].source == b.dataset.tuples[i].source);
    CHECK(a.dataset.tuples[i].hypothesis == b.dataset.tuples[i].hypothesis);
    CHECK(a.dataset.tuples[i].label == b.dataset.tuples[i].label);
  }
}

}  // namespace
}  // namespace tqe
