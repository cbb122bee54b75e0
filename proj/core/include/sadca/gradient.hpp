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

#ifndef SADCA_GRADIENT_HPP_
#define SADCA_GRADIENT_HPP_

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

#include "sadca/encoder.hpp"
#include "sadca/image.hpp"

namespace sadca {

/// Differentiable image -> image map placed between an attacked image and
/// the encoder.
class ImageTransform {
 public:
  virtual ~ImageTransform() = default;
  virtual ImageTensor forward(const ImageTensor& input) const = 0;
  // Pulls grad_output (shaped like forward's output) back to the input.
  virtual PixelArray backward(const ImageTensor& input,
                              const PixelArray& grad_output) const = 0;
};

struct EmbeddingLossValue {
  double value = 0.0;
  // dL/d(embedding) for every embedding handed to the loss, same order.
  std::vector<Eigen::VectorXd> grads;
};

/// Scalar loss over a list of image embeddings, returning its value and its
/// gradient with respect to each embedding.
using EmbeddingLoss = std::function<EmbeddingLossValue(std::span<const Embedding>)>;

/// One encoded input of the loss: images[source] pushed through `transform`
/// (identity when null).
struct LossTerm {
  std::size_t source = 0;
  const ImageTransform* transform = nullptr;
};

struct ImageLossGradient {
  double value = 0.0;
  std::vector<PixelArray> grads;  // one per source image
};

/// Exact gradient of `loss` with respect to every pixel of every source
/// image, summed over all terms reading that image. `step` is reported in
/// the NumericalError thrown for a non-finite value or gradient.
ImageLossGradient image_loss_gradient(const DualEncoder& encoder,
                                      const EmbeddingLoss& loss,
                                      std::span<const ImageTensor> images,
                                      std::span<const LossTerm> terms,
                                      int step = 0);

// One identity term per image.
ImageLossGradient image_loss_gradient(const DualEncoder& encoder,
                                      const EmbeddingLoss& loss,
                                      std::span<const ImageTensor> images,
                                      int step = 0);

}  // namespace sadca

#endif  // SADCA_GRADIENT_HPP_
