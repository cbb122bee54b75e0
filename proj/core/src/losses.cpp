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

#include "sadca/losses.hpp"

#include "sadca/errors.hpp"

namespace sadca {

double cosine(const Embedding& a, const Embedding& b) {
  return a.vector().dot(b.vector());
}

namespace {

double sum_cosines(const Embedding& anchor, std::span<const Embedding> others) {
  double s = 0.0;
  for (const auto& o : others) s += cosine(anchor, o);
  return s;
}

LossBreakdown combine(double positive, double negative, double lambda) {
  return {positive - lambda * negative, positive, negative, lambda};
}

}  // namespace

LossBreakdown contrastive_image_loss(const Embedding& image,
                                     std::span<const Embedding> positive_texts,
                                     std::span<const Embedding> negative_texts, double lambda) {
  if (positive_texts.empty()) throw InputError("contrastive_image_loss: no positive texts");
  return combine(sum_cosines(image, positive_texts), sum_cosines(image, negative_texts), lambda);
}

LossBreakdown contrastive_text_loss(const Embedding& text, const Embedding& positive_image,
                                    std::span<const Embedding> negative_images, double lambda) {
  return combine(cosine(positive_image, text), sum_cosines(text, negative_images), lambda);
}

LossBreakdown dynamic_image_loss(const Embedding& image,
                                 std::span<const Embedding> adversarial_texts,
                                 std::span<const Embedding> negative_texts, double lambda) {
  if (adversarial_texts.empty()) throw InputError("dynamic_image_loss: no adversarial texts");
  return contrastive_image_loss(image, adversarial_texts, negative_texts, lambda);
}

LossBreakdown dynamic_text_loss(const Embedding& text, const Embedding& adversarial_image,
                                std::span<const Embedding> negative_images, double lambda) {
  return contrastive_text_loss(text, adversarial_image, negative_images, lambda);
}

double view_averaged_loss(std::span<const Embedding> views,
                          const std::function<double(const Embedding&)>& loss_per_view) {
  if (views.empty()) throw InputError("view_averaged_loss: no views");
  double s = 0.0;
  for (const auto& v : views) s += loss_per_view(v);
  return s / static_cast<double>(views.size());
}

Eigen::VectorXd sum_embeddings(std::span<const Embedding> embeddings, Eigen::Index dim) {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(dim);
  for (const auto& e : embeddings) s += e.vector();
  return s;
}

}  // namespace sadca
