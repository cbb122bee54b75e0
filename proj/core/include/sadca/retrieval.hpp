// Copyright 2026 The SADCA Authors.
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

#ifndef SADCA_RETRIEVAL_HPP_
#define SADCA_RETRIEVAL_HPP_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "sadca/attack.hpp"
#include "sadca/dataset.hpp"
#include "sadca/encoder.hpp"

namespace sadca {

/// Clean embeddings of a whole dataset under one encoder.
struct RetrievalIndex {
  std::vector<std::string> ids;
  std::vector<Embedding> images;           // one per sample
  std::vector<Embedding> texts;            // all captions, sample-major
  std::vector<std::size_t> text_owner;     // sample index of texts[i]
  std::vector<std::vector<std::size_t>> sample_texts;  // caption indices per sample
};

RetrievalIndex build_index(const Dataset& dataset, const DualEncoder& encoder);

/// Text retrieval: query i is an image embedding for sample i; a hit means
/// one of sample i's captions ranks in the top k of all indexed texts.
std::vector<bool> text_retrieval_hits(const RetrievalIndex& index,
                                      std::span<const Embedding> image_queries, int k);

/// Image retrieval: one query per caption, `owners[q]` is the sample the
/// query caption belongs to; a hit means that sample's image ranks in the
/// top k of all indexed images.
std::vector<bool> image_retrieval_hits(const RetrievalIndex& index,
                                       std::span<const Embedding> text_queries,
                                       std::span<const std::size_t> owners, int k);

enum class AsrDenominator {
  kCorrectBefore,  // broken / correct-before
  kAll,            // wrong-after / all queries
};

/// Percentage of queries broken by the attack. Throws UndefinedMetricError
/// when the denominator is empty.
double asr_at_k(const std::vector<bool>& clean_hits, const std::vector<bool>& adversarial_hits,
                AsrDenominator denominator = AsrDenominator::kCorrectBefore);

inline constexpr int kRanks[] = {1, 5, 10};

struct RetrievalReport {
  std::string surrogate;
  std::string target;
  std::string method;
  std::map<int, double> tr_asr;
  std::map<int, double> ir_asr;
  std::map<int, std::size_t> tr_evaluated;
  std::map<int, std::size_t> ir_evaluated;

  bool white_box() const { return surrogate == target; }
  friend bool operator==(const RetrievalReport&, const RetrievalReport&) = default;
};

/// Scores attack results (aligned with dataset.samples) against a target
/// encoder at ranks 1, 5, 10. Cells with an empty denominator are omitted.
RetrievalReport evaluate_attack(const DualEncoder& target, const Dataset& dataset,
                                std::span<const AttackResult> results,
                                AsrDenominator denominator = AsrDenominator::kCorrectBefore);

}  // namespace sadca

#endif  // SADCA_RETRIEVAL_HPP_
