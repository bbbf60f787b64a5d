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

#include "toy.hpp"

#include <algorithm>

#include "tqe/rng.hpp"

namespace tqetest {

tqe::ParallelCorpus make_toy_corpus(const ToySpec& spec, std::size_t pairs,
                                    std::uint64_t seed) {
  tqe::Rng rng(seed);
  tqe::ParallelCorpus corpus;
  corpus.direction = spec.direction;
  corpus.pairs.reserve(pairs);
  for (std::size_t p = 0; p < pairs; ++p) {
    std::string sentence;
    for (std::size_t slot = 0; slot < spec.length; ++slot) {
      if (slot > 0) sentence += ' ';
      auto it = std::find(spec.marker_slots.begin(), spec.marker_slots.end(),
                          slot);
      if (it != spec.marker_slots.end()) {
        std::size_t cls =
            static_cast<std::size_t>(it - spec.marker_slots.begin());
        sentence += spec.prefix + "mk" + std::to_string(cls) + "_" +
                    std::to_string(rng.bounded(spec.marker_class_size));
      } else {
        sentence += spec.prefix + "w" +
                    std::to_string(rng.bounded(spec.content_pool));
      }
    }
    corpus.pairs.push_back({sentence, sentence});
  }
  return corpus;
}

tqe::ParallelCorpus make_map_corpus(const MapSpec& spec, std::size_t pairs,
                                    std::uint64_t seed) {
  // Template patterns come from their own fixed stream so train and
  // held-out corpora drawn with different seeds share one language.
  std::vector<std::vector<std::size_t>> patterns(spec.templates);
  tqe::Rng trng(tqe::Rng::mix(0x7031, spec.groups * 131 + spec.templates));
  for (auto& pattern : patterns) {
    pattern.resize(spec.length);
    for (auto& g : pattern) g = trng.bounded(spec.groups);
  }
  // Round-robin class-to-group assignment keeps group sizes level and
  // spreads Zipf ranks evenly across groups.
  std::vector<std::vector<std::size_t>> members(spec.groups);
  for (std::size_t c = 0; c < spec.classes; ++c) {
    members[c % spec.groups].push_back(c);
  }
  std::vector<std::vector<double>> cumulative(spec.groups);
  for (std::size_t g = 0; g < spec.groups; ++g) {
    double acc = 0.0;
    for (std::size_t rank = 0; rank < members[g].size(); ++rank) {
      acc += spec.zipf_weights ? 1.0 / static_cast<double>(rank + 5) : 1.0;
      cumulative[g].push_back(acc);
    }
  }
  // Synonym ranks fall off steeply so the primary form of each class
  // dominates and the later forms populate the vocabulary tail.
  std::vector<double> synonym_cum;
  {
    double acc = 0.0;
    for (std::size_t s = 0; s < spec.synonyms; ++s) {
      acc += 1.0 / static_cast<double>((s + 1) * (s + 1));
      synonym_cum.push_back(acc);
    }
  }
  tqe::Rng rng(seed);
  tqe::ParallelCorpus corpus;
  corpus.direction = spec.direction;
  corpus.pairs.reserve(pairs);
  for (std::size_t p = 0; p < pairs; ++p) {
    const auto& pattern = patterns[rng.bounded(spec.templates)];
    std::string src, tgt;
    for (std::size_t slot = 0; slot < spec.length; ++slot) {
      if (slot > 0) {
        src += ' ';
        tgt += ' ';
      }
      std::size_t g = pattern[slot];
      const auto& cum = cumulative[g];
      double u = rng.unit() * cum.back();
      std::size_t rank = static_cast<std::size_t>(
          std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
      if (rank >= cum.size()) rank = cum.size() - 1;
      std::size_t cls = members[g][rank];
      src += spec.prefix + "k" + std::to_string(cls);
      if (spec.synonyms > 1) {
        double su = rng.unit() * synonym_cum.back();
        std::size_t syn = static_cast<std::size_t>(
            std::lower_bound(synonym_cum.begin(), synonym_cum.end(), su) -
            synonym_cum.begin());
        if (syn >= synonym_cum.size()) syn = synonym_cum.size() - 1;
        src += "x" + std::to_string(syn);
      }
      tgt += spec.prefix + "v" + std::to_string(cls);
    }
    corpus.pairs.push_back({src, tgt});
  }
  return corpus;
}

tqe::QeDataset make_overlap_dataset(std::size_t tuples, std::uint64_t seed) {
  tqe::Rng rng(seed);
  tqe::QeDataset ds;
  ds.kind = tqe::DatasetKind::kSyntheticTer;
  ds.tuples.reserve(tuples);
  for (std::size_t i = 0; i < tuples; ++i) {
    std::size_t len = 4 + rng.bounded(4);
    std::vector<std::string> src;
    for (std::size_t k = 0; k < len; ++k) {
      src.push_back("ov" + std::to_string(rng.bounded(120)));
    }
    bool overlapping = rng.bounded(2) == 0;
    std::vector<std::string> hyp;
    if (overlapping) {
      hyp = src;
      rng.shuffle(hyp);
    } else {
      for (std::size_t k = 0; k < len; ++k) {
        // Disjoint half of the id space.
        hyp.push_back("ov" + std::to_string(120 + rng.bounded(120)));
      }
    }
    std::string s, h;
    for (std::size_t k = 0; k < len; ++k) {
      if (k > 0) {
        s += ' ';
        h += ' ';
      }
      s += src[k];
      h += hyp[k];
    }
    ds.tuples.push_back({s, h, overlapping ? 1.0 : 0.0, {}});
  }
  return ds;
}

tqe::QeDataset make_constant_label_dataset(std::size_t tuples, double label,
                                           std::uint64_t seed) {
  tqe::Rng rng(seed);
  tqe::QeDataset ds;
  ds.kind = tqe::DatasetKind::kSyntheticTer;
  ds.tuples.reserve(tuples);
  for (std::size_t i = 0; i < tuples; ++i) {
    std::string s, h;
    std::size_t len = 3 + rng.bounded(5);
    for (std::size_t k = 0; k < len; ++k) {
      if (k > 0) {
        s += ' ';
        h += ' ';
      }
      s += "cs" + std::to_string(rng.bounded(40));
      h += "ch" + std::to_string(rng.bounded(40));
    }
    ds.tuples.push_back({s, h, label, {}});
  }
  return ds;
}

}  // namespace tqetest
