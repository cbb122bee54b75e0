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

#ifndef SADCA_TOY_ENCODER_HPP_
#define SADCA_TOY_ENCODER_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <string>

#include "sadca/encoder.hpp"

namespace sadca {

/// Weights of the two-layer toy encoders.
///
/// Vision: flatten -> affine(H*W*C -> hidden) -> tanh -> affine(hidden -> d)
///         -> L2 normalize.
/// Text:   mean of token embedding rows (vocab x hidden) -> affine(hidden ->
///         hidden) -> tanh -> affine(hidden -> d) -> L2 normalize.
struct EncoderParams {
  ImageShape image_shape;
  std::size_t vocab_size = 0;
  int hidden = 0;
  int embed_dim = 0;
  std::uint64_t seed = 0;

  // Vision branch.
  Eigen::MatrixXd image_w1;  // hidden x (H*W*C)
  Eigen::VectorXd image_b1;  // hidden
  Eigen::MatrixXd image_w2;  // d x hidden
  Eigen::VectorXd image_b2;  // d

  // Text branch.
  Eigen::MatrixXd token_table;  // vocab x hidden
  Eigen::MatrixXd text_w1;      // hidden x hidden
  Eigen::VectorXd text_b1;      // hidden
  Eigen::MatrixXd text_w2;      // d x hidden
  Eigen::VectorXd text_b2;      // d

  bool all_finite() const;
  friend bool operator==(const EncoderParams&, const EncoderParams&);
};

/// Weights drawn from a seeded uniform(-0.1, 0.1) stream in a fixed order, so
/// the result is a pure function of (seed, dims).
EncoderParams init_toy_encoders(std::uint64_t seed, ImageShape image_shape,
                                std::size_t vocab_size, int hidden, int embed_dim);

Embedding encode_image(const EncoderParams& params, const ImageTensor& image);
Embedding encode_text(const EncoderParams& params, const TokenSeq& text);

class ToyDualEncoder final : public DualEncoder {
 public:
  explicit ToyDualEncoder(EncoderParams params, std::string name = "toy");

  std::string name() const override { return name_; }
  ImageShape image_shape() const override { return params_.image_shape; }
  std::size_t vocab_size() const override { return params_.vocab_size; }
  Eigen::Index embed_dim() const override { return params_.embed_dim; }

  Embedding encode_image(const ImageTensor& image) const override;
  Embedding encode_text(const TokenSeq& text) const override;
  PixelArray image_vjp(const ImageTensor& image,
                       const Eigen::VectorXd& upstream) const override;

  const EncoderParams& params() const { return params_; }

 private:
  EncoderParams params_;
  std::string name_;
};

// Backward through y = z / |z|: returns dL/dz given dL/dy and y = z/|z|.
Eigen::VectorXd normalize_backward(const Eigen::VectorXd& unit,
                                   double norm,
                                   const Eigen::VectorXd& upstream);

}  // namespace sadca

#endif  // SADCA_TOY_ENCODER_HPP_
