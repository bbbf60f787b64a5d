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

#ifndef TQE_TESTS_SUPPORT_TOY_HPP_
#define TQE_TESTS_SUPPORT_TOY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "tqe/data.hpp"

namespace tqetest {

// Templated toy language: every sentence has `length` tokens; the positions
// listed in `marker_slots` draw from small closed classes (one class per
// such slot, `marker_class_size` tokens each), all other positions draw
// independently from a shared open content pool. Both corpus sides carry
// the same token strings, so a hypothesis produced by corrupting the
// reference can be judged against the source directly. `prefix`
// distinguishes disjoint-vocabulary variants of the language.
struct ToySpec {
  std::size_t length = 10;
  std::vector<std::size_t> marker_slots = {0, 3, 5, 8};
  std::size_t marker_class_size = 12;
  std::size_t content_pool = 252;
  std::string prefix;
  tqe::Direction direction;
};

tqe::ParallelCorpus make_toy_corpus(const ToySpec& spec, std::size_t pairs,
                                    std::uint64_t seed);

// Bilingual toy language over a 1:1 lexical map: content class c surfaces
// as k<c> on the source side and always translates to v<c> on the target
// side, so a hypothesis token is verifiable against the source. Sentences
// are instantiated from fixed templates: a template assigns one content
// group to each of `length` slots and a slot draws a class from its group,
// Zipf-weighted when `zipf_weights` is set. `synonyms` > 1 widens the
// source vocabulary: class c surfaces as one of the forms k<c>x<s>, all
// mapping to the same target token, with a steep rank-frequency falloff so
// the primary form dominates. Templates are properties of the language and
// do not depend on the draw seed.
struct MapSpec {
  std::size_t length = 8;
  std::size_t classes = 40;
  std::size_t groups = 1;
  std::size_t templates = 1;
  std::size_t synonyms = 1;
  bool zipf_weights = false;
  std::string prefix;
  tqe::Direction direction;
  // Distinct corpus token types (specials not counted).
  std::size_t vocab_size() const { return classes * synonyms + classes; }
};

tqe::ParallelCorpus make_map_corpus(const MapSpec& spec, std::size_t pairs,
                                    std::uint64_t seed);

// Bimodal lexical-overlap dataset: half the tuples pair a sentence with a
// token-level permutation of itself (overlap 1), half with fully disjoint
// tokens (overlap 0); the label is the overlap fraction.
tqe::QeDataset make_overlap_dataset(std::size_t tuples, std::uint64_t seed);

// Varied sentences, one fixed label everywhere.
tqe::QeDataset make_constant_label_dataset(std::size_t tuples, double label,
                                           std::uint64_t seed);

}  // namespace tqetest

#endif  // TQE_TESTS_SUPPORT_TOY_HPP_
