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

#ifndef SADCA_LOSSES_HPP_
#define SADCA_LOSSES_HPP_

#include <functional>
#include <span>

#include "sadca/encoder.hpp"

namespace sadca {

/// total = positive_term - lambda * negative_term.
struct LossBreakdown {
  double total = 0.0;
  double positive_term = 0.0;
  double negative_term = 0.0;
  double lambda = 0.0;
};

// Dot product; both inputs are unit vectors.
double cosine(const Embedding& a, const Embedding& b);

/// Image-side contrastive loss against the benign captions:
///   sum_m cos(v, t_pm) - lambda * sum_k cos(v, t_nk).
LossBreakdown contrastive_image_loss(const Embedding& image,
                                     std::span<const Embedding> positive_texts,
                                     std::span<const Embedding> negative_texts,
                                     double lambda);

/// Text-side contrastive loss against the aligned positive image:
///   cos(v_p, t) - lambda * sum_k cos(v_nk, t).
LossBreakdown contrastive_text_loss(const Embedding& text,
                                    const Embedding& positive_image,
                                    std::span<const Embedding> negative_images,
                                    double lambda);

/// Same arithmetic as contrastive_image_loss, with the current adversarial
/// captions as positives.
LossBreakdown dynamic_image_loss(const Embedding& image,
                                 std::span<const Embedding> adversarial_texts,
                                 std::span<const Embedding> negative_texts,
                                 double lambda);

/// Same arithmetic as contrastive_text_loss, with the current adversarial
/// image as the positive.
LossBreakdown dynamic_text_loss(const Embedding& text,
                                const Embedding& adversarial_image,
                                std::span<const Embedding> negative_images,
                                double lambda);

/// Arithmetic mean of loss_per_view over the views.
double view_averaged_loss(std::span<const Embedding> views,
                          const std::function<double(const Embedding&)>& loss_per_view);

// Sum of the vectors, accumulated in order. Zero vector of `dim` when empty.
Eigen::VectorXd sum_embeddings(std::span<const Embedding> embeddings, Eigen::Index dim);

}  // namespace sadca

#endif  // SADCA_LOSSES_HPP_
