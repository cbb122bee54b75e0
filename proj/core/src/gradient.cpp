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

#include "sadca/gradient.hpp"

#include <cmath>

#include "sadca/errors.hpp"

namespace sadca {

ImageLossGradient image_loss_gradient(const DualEncoder& encoder, const EmbeddingLoss& loss,
                                      std::span<const ImageTensor> images,
                                      std::span<const LossTerm> terms, int step) {
  std::vector<ImageTensor> inputs;
  std::vector<Embedding> embeddings;
  inputs.reserve(terms.size());
  embeddings.reserve(terms.size());
  for (const auto& term : terms) {
    if (term.source >= images.size()) throw ConfigError("loss term source out of range");
    const ImageTensor& src = images[term.source];
    inputs.push_back(term.transform ? term.transform->forward(src) : src);
    embeddings.push_back(encoder.encode_image(inputs.back()));
  }

  EmbeddingLossValue lv = loss(embeddings);
  if (!std::isfinite(lv.value)) throw NumericalError("non-finite loss", step);
  if (lv.grads.size() != terms.size()) {
    throw ConfigError("loss returned " + std::to_string(lv.grads.size()) +
                      " embedding gradients for " + std::to_string(terms.size()) + " terms");
  }

  ImageLossGradient out;
  out.value = lv.value;
  out.grads.reserve(images.size());
  for (const auto& img : images) out.grads.emplace_back(img.shape());

  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (!lv.grads[t].allFinite()) throw NumericalError("non-finite embedding gradient", step);
    if (lv.grads[t].isZero(0.0)) continue;
    PixelArray g = encoder.image_vjp(inputs[t], lv.grads[t]);
    if (terms[t].transform) g = terms[t].transform->backward(images[terms[t].source], g);
    auto& acc = out.grads[terms[t].source].values;
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += g.values[i];
  }
  for (const auto& g : out.grads) {
    if (!g.all_finite()) throw NumericalError("non-finite pixel gradient", step);
  }
  return out;
}

ImageLossGradient image_loss_gradient(const DualEncoder& encoder, const EmbeddingLoss& loss,
                                      std::span<const ImageTensor> images, int step) {
  std::vector<LossTerm> terms(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) terms[i].source = i;
  return image_loss_gradient(encoder, loss, images, terms, step);
}

}  // namespace sadca
