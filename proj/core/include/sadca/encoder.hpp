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

#ifndef SADCA_ENCODER_HPP_
#define SADCA_ENCODER_HPP_

#include <Eigen/Dense>

#include <string>

#include "sadca/image.hpp"
#include "sadca/text.hpp"

namespace sadca {

/// Unit-norm feature vector. Cosine similarity between two embeddings is
/// their dot product.
class Embedding {
 public:
  static constexpr double kNormTolerance = 1e-6;

  Embedding() = default;
  // Throws InputError unless |v| = 1 within kNormTolerance.
  explicit Embedding(Eigen::VectorXd v);
  // Scales v to unit length. Throws NumericalError on a zero or non-finite vector.
  static Embedding normalized(const Eigen::VectorXd& v);

  const Eigen::VectorXd& vector() const { return v_; }
  Eigen::Index dim() const { return v_.size(); }
  double operator[](Eigen::Index i) const { return v_[i]; }

  friend bool operator==(const Embedding& a, const Embedding& b) {
    return a.v_.size() == b.v_.size() && a.v_ == b.v_;
  }

 private:
  Eigen::VectorXd v_;
};

/// Image encoder F_I and text encoder F_T sharing one embedding space.
/// Implementations are immutable after construction and safe to share
/// across threads.
class DualEncoder {
 public:
  virtual ~DualEncoder() = default;

  virtual std::string name() const = 0;
  virtual ImageShape image_shape() const = 0;
  virtual std::size_t vocab_size() const = 0;
  virtual Eigen::Index embed_dim() const = 0;

  virtual Embedding encode_image(const ImageTensor& image) const = 0;
  virtual Embedding encode_text(const TokenSeq& text) const = 0;

  /// Vector-Jacobian product of F_I at `image`: the gradient with respect to
  /// every pixel of <upstream, F_I(image)>.
  virtual PixelArray image_vjp(const ImageTensor& image,
                               const Eigen::VectorXd& upstream) const = 0;
};

}  // namespace sadca

#endif  // SADCA_ENCODER_HPP_
