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

#include "sadca/sampling.hpp"

#include <algorithm>
#include <numeric>

#include "sadca/errors.hpp"
#include "sadca/gradient.hpp"
#include "sadca/losses.hpp"
#include "sadca/projection.hpp"

namespace sadca {

double caption_alignment(const DualEncoder& encoder, const ImageTensor& image,
                         std::span<const Embedding> captions) {
  const Embedding e = encoder.encode_image(image);
  double s = 0.0;
  for (const auto& c : captions) s += cosine(e, c);
  return s;
}

ImageTensor align_positive_image(const DualEncoder& encoder, const ImageTensor& image,
                                 std::span<const TokenSeq> captions, double eps_v, int steps,
                                 double alpha) {
  if (steps < 1) throw InputError("alignment needs at least one step");
  if (!(alpha > 0.0) || eps_v < 0.0) throw InputError("alignment needs alpha > 0, eps_v >= 0");
  if (captions.empty()) throw InputError("alignment needs at least one caption");

  std::vector<Embedding> texts;
  for (const auto& c : captions) texts.push_back(encoder.encode_text(c));
  const Eigen::VectorXd upstream = sum_embeddings(texts, encoder.embed_dim());

  EmbeddingLoss objective = [&](std::span<const Embedding> e) {
    EmbeddingLossValue out;
    for (const auto& t : texts) out.value += cosine(e[0], t);
    out.grads.push_back(upstream);
    return out;
  };

  ImageTensor current = image;
  for (int step = 0; step < steps; ++step) {
    const std::span<const ImageTensor> one(&current, 1);
    ImageLossGradient g = image_loss_gradient(encoder, objective, one, step);
    current = sign_step(current, g.grads[0], alpha, +1.0, image, eps_v);
  }
  return current;
}

std::string_view to_string(SelectionStrategy strategy) {
  switch (strategy) {
    case SelectionStrategy::kMostSimilar:
      return "most_similar";
    case SelectionStrategy::kLeastSimilar:
      return "least_similar";
    case SelectionStrategy::kIntermediate:
      return "intermediate";
    case SelectionStrategy::kRandom:
      return "random";
  }
  return "random";
}

std::optional<SelectionStrategy> parse_selection_strategy(std::string_view text) {
  if (text == "most_similar" || text == "1") return SelectionStrategy::kMostSimilar;
  if (text == "least_similar" || text == "2") return SelectionStrategy::kLeastSimilar;
  if (text == "intermediate" || text == "3") return SelectionStrategy::kIntermediate;
  if (text == "random" || text == "4") return SelectionStrategy::kRandom;
  return std::nullopt;
}

std::vector<std::size_t> select_negatives(std::span<const std::string> ids,
                                          std::span<const double> similarity, std::size_t k,
                                          SelectionStrategy strategy, Rng& rng) {
  const std::size_t n = ids.size();
  if (similarity.size() != n) throw ConfigError("one similarity per candidate required");
  if (k > n) {
    throw InputError("need " + std::to_string(k) + " negatives but only " + std::to_string(n) +
                     " candidates");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  if (strategy == SelectionStrategy::kRandom) {
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(order[i], order[i + rng.index(n - i)]);
    }
    order.resize(k);
    return order;
  }

  // One ranking for every strategy: similarity descending, then id ascending.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (similarity[a] != similarity[b]) return similarity[a] > similarity[b];
    return ids[a] < ids[b];
  });
  if (strategy == SelectionStrategy::kLeastSimilar) {
    return {order.rbegin(), order.rbegin() + static_cast<std::ptrdiff_t>(k)};
  }
  const std::size_t start = strategy == SelectionStrategy::kIntermediate ? (n - k) / 2 : 0;
  return {order.begin() + static_cast<std::ptrdiff_t>(start),
          order.begin() + static_cast<std::ptrdiff_t>(start + k)};
}

NegativeBank build_negative_bank(const Dataset& dataset, const PairedSample& anchor,
                                 const ImageTensor& positive_image, std::size_t k,
                                 SelectionStrategy strategy, const DualEncoder& encoder,
                                 Rng& rng) {
  std::vector<std::size_t> pool;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (dataset.samples[i].id == anchor.id) continue;
    pool.push_back(i);
    ids.push_back(dataset.samples[i].id);
  }
  if (pool.size() < k) {
    throw InputError("negative pool of " + std::to_string(pool.size()) +
                     " samples is smaller than K = " + std::to_string(k));
  }

  std::vector<double> sim(pool.size(), 0.0);
  std::vector<Embedding> pool_embeddings;
  if (strategy != SelectionStrategy::kRandom) {
    const Embedding anchor_emb = encoder.encode_image(positive_image);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      pool_embeddings.push_back(encoder.encode_image(dataset.samples[pool[i]].image));
      sim[i] = cosine(pool_embeddings.back(), anchor_emb);
    }
  }

  NegativeBank bank;
  for (std::size_t pos : select_negatives(ids, sim, k, strategy, rng)) {
    const PairedSample& s = dataset.samples[pool[pos]];
    bank.sample_ids.push_back(s.id);
    bank.images.push_back(s.image);
    bank.texts.push_back(s.captions.front());
    bank.image_embeddings.push_back(pool_embeddings.empty() ? encoder.encode_image(s.image)
                                                            : pool_embeddings[pos]);
    bank.text_embeddings.push_back(encoder.encode_text(s.captions.front()));
  }
  return bank;
}

}  // namespace sadca
