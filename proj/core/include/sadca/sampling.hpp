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

#ifndef SADCA_SAMPLING_HPP_
#define SADCA_SAMPLING_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sadca/dataset.hpp"
#include "sadca/encoder.hpp"
#include "sadca/rng.hpp"

namespace sadca {

/// sum_m cos(F_I(image), F_T(t_m)) over precomputed caption embeddings.
double caption_alignment(const DualEncoder& encoder, const ImageTensor& image,
                         std::span<const Embedding> captions);

/// Projected sign-gradient ascent on caption_alignment, starting at `image`
/// and staying inside B[image, eps_v] and [0, 1]. Returns the final iterate.
ImageTensor align_positive_image(const DualEncoder& encoder, const ImageTensor& image,
                                 std::span<const TokenSeq> captions, double eps_v,
                                 int steps, double alpha);

enum class SelectionStrategy { kMostSimilar, kLeastSimilar, kIntermediate, kRandom };

std::string_view to_string(SelectionStrategy strategy);
// Accepts the names from to_string and the ablation numbers "1".."4".
std::optional<SelectionStrategy> parse_selection_strategy(std::string_view text);

/// Picks K of the candidates. `similarity[i]` scores candidate `ids[i]`
/// against the anchor's positive image; ties order by ascending id.
///   most_similar: top K; least_similar: bottom K; intermediate: the K
///   ranks centered on the median of the descending ranking, starting at
///   floor((n - K) / 2); random: K uniformly without replacement.
/// Returns positions into `ids`, in selection order.
std::vector<std::size_t> select_negatives(std::span<const std::string> ids,
                                          std::span<const double> similarity,
                                          std::size_t k, SelectionStrategy strategy,
                                          Rng& rng);

struct NegativeBank {
  std::vector<std::string> sample_ids;
  std::vector<ImageTensor> images;
  std::vector<TokenSeq> texts;  // first caption of each negative
  std::vector<Embedding> image_embeddings;
  std::vector<Embedding> text_embeddings;

  std::size_t size() const { return sample_ids.size(); }
};

/// K mismatched samples from everything but the anchor. Throws InputError
/// when fewer than K candidates exist.
NegativeBank build_negative_bank(const Dataset& dataset, const PairedSample& anchor,
                                 const ImageTensor& positive_image, std::size_t k,
                                 SelectionStrategy strategy, const DualEncoder& encoder,
                                 Rng& rng);

}  // namespace sadca

#endif  // SADCA_SAMPLING_HPP_
