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

#include "sadca/retrieval.hpp"

#include "sadca/errors.hpp"
#include "sadca/losses.hpp"

namespace sadca {

RetrievalIndex build_index(const Dataset& dataset, const DualEncoder& encoder) {
  if (dataset.samples.empty()) throw InputError("cannot index an empty dataset");
  RetrievalIndex index;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto& s = dataset.samples[i];
    index.ids.push_back(s.id);
    index.images.push_back(encoder.encode_image(s.image));
    auto& mine = index.sample_texts.emplace_back();
    for (const auto& c : s.captions) {
      mine.push_back(index.texts.size());
      index.texts.push_back(encoder.encode_text(c));
      index.text_owner.push_back(i);
    }
  }
  return index;
}

namespace {

// 0-based rank of `target` among `gallery` scored against `query`: the number
// of entries that score higher, or equal with a lower index.
std::size_t rank_of(const Embedding& query, std::span<const Embedding> gallery,
                    std::size_t target) {
  const double t = cosine(query, gallery[target]);
  std::size_t rank = 0;
  for (std::size_t i = 0; i < gallery.size(); ++i) {
    if (i == target) continue;
    const double s = cosine(query, gallery[i]);
    if (s > t || (s == t && i < target)) ++rank;
  }
  return rank;
}

}  // namespace

std::vector<bool> text_retrieval_hits(const RetrievalIndex& index,
                                      std::span<const Embedding> image_queries, int k) {
  if (image_queries.size() != index.images.size()) {
    throw InputError("text retrieval needs one image query per indexed sample");
  }
  std::vector<bool> hits(image_queries.size(), false);
  for (std::size_t q = 0; q < image_queries.size(); ++q) {
    for (std::size_t t : index.sample_texts[q]) {
      if (rank_of(image_queries[q], index.texts, t) < static_cast<std::size_t>(k)) {
        hits[q] = true;
        break;
      }
    }
  }
  return hits;
}

std::vector<bool> image_retrieval_hits(const RetrievalIndex& index,
                                       std::span<const Embedding> text_queries,
                                       std::span<const std::size_t> owners, int k) {
  if (text_queries.size() != owners.size()) throw InputError("one owner per text query required");
  std::vector<bool> hits(text_queries.size(), false);
  for (std::size_t q = 0; q < text_queries.size(); ++q) {
    if (owners[q] >= index.images.size()) throw InputError("text query owner out of range");
    hits[q] = rank_of(text_queries[q], index.images, owners[q]) < static_cast<std::size_t>(k);
  }
  return hits;
}

double asr_at_k(const std::vector<bool>& clean_hits, const std::vector<bool>& adversarial_hits,
                AsrDenominator denominator) {
  if (clean_hits.size() != adversarial_hits.size()) {
    throw InputError("clean and adversarial hit vectors differ in length");
  }
  std::size_t base = 0;
  std::size_t broken = 0;
  for (std::size_t i = 0; i < clean_hits.size(); ++i) {
    if (denominator == AsrDenominator::kAll) {
      ++base;
      broken += !adversarial_hits[i];
    } else if (clean_hits[i]) {
      ++base;
      broken += !adversarial_hits[i];
    }
  }
  if (base == 0) throw UndefinedMetricError("ASR undefined: no query in the denominator");
  return 100.0 * static_cast<double>(broken) / static_cast<double>(base);
}

RetrievalReport evaluate_attack(const DualEncoder& target, const Dataset& dataset,
                                std::span<const AttackResult> results,
                                AsrDenominator denominator) {
  if (results.size() != dataset.size()) {
    throw InputError("one attack result per dataset sample required");
  }
  const RetrievalIndex index = build_index(dataset, target);

  std::vector<Embedding> adv_images;
  std::vector<Embedding> adv_texts;
  std::vector<std::size_t> owners;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].sample_id != dataset.samples[i].id) {
      throw InputError("attack results are not aligned with the dataset");
    }
    adv_images.push_back(target.encode_image(results[i].adv_image));
    for (const auto& c : results[i].adv_captions) {
      adv_texts.push_back(target.encode_text(c));
      owners.push_back(i);
    }
  }

  RetrievalReport report;
  report.target = target.name();
  for (int k : kRanks) {
    const auto tr_clean = text_retrieval_hits(index, index.images, k);
    const auto tr_adv = text_retrieval_hits(index, adv_images, k);
    const auto ir_clean = image_retrieval_hits(index, index.texts, index.text_owner, k);
    const auto ir_adv = image_retrieval_hits(index, adv_texts, owners, k);
    auto count = [&](const std::vector<bool>& clean) {
      if (denominator == AsrDenominator::kAll) return clean.size();
      return static_cast<std::size_t>(std::count(clean.begin(), clean.end(), true));
    };
    if (count(tr_clean) > 0) {
      report.tr_asr[k] = asr_at_k(tr_clean, tr_adv, denominator);
      report.tr_evaluated[k] = count(tr_clean);
    }
    if (ir_clean.size() == ir_adv.size() && count(ir_clean) > 0) {
      report.ir_asr[k] = asr_at_k(ir_clean, ir_adv, denominator);
      report.ir_evaluated[k] = count(ir_clean);
    }
  }
  return report;
}

}  // namespace sadca
