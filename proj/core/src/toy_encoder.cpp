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

#include "sadca/toy_encoder.hpp"

#include <cmath>

#include "sadca/errors.hpp"
#include "sadca/rng.hpp"

namespace sadca {

Embedding::Embedding(Eigen::VectorXd v) : v_(std::move(v)) {
  const double n = v_.norm();
  if (!(std::abs(n - 1.0) <= kNormTolerance)) {
    throw InputError("embedding norm " + std::to_string(n) + " is not 1");
  }
}

Embedding Embedding::normalized(const Eigen::VectorXd& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw NumericalError("cannot normalize a zero or non-finite vector", -1);
  }
  return Embedding(v / n);
}

namespace {

void fill_uniform(Eigen::MatrixXd& m, Rng& rng) {
  // Column-major fill order is part of the reproducibility contract.
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = rng.uniform(-0.1, 0.1);
  }
}

void fill_uniform(Eigen::VectorXd& v, Rng& rng) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.uniform(-0.1, 0.1);
}

Eigen::Map<const Eigen::VectorXd> flat(const ImageTensor& image) {
  auto px = image.pixels();
  return {px.data(), static_cast<Eigen::Index>(px.size())};
}

void check_image(const EncoderParams& params, const ImageTensor& image) {
  if (image.shape() != params.image_shape) {
    throw ConfigError("image shape " + std::to_string(image.height()) + "x" +
                      std::to_string(image.width()) + "x" +
                      std::to_string(image.channels()) + " does not match encoder input " +
                      std::to_string(params.image_shape.height) + "x" +
                      std::to_string(params.image_shape.width) + "x" +
                      std::to_string(params.image_shape.channels));
  }
}

Eigen::VectorXd bag_of_tokens(const EncoderParams& params, const TokenSeq& text) {
  if (text.tokens.empty()) throw InputError("empty token sequence");
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(params.hidden);
  for (TokenId t : text.tokens) {
    if (t >= params.vocab_size) {
      throw InputError("token id " + std::to_string(t) + " outside vocabulary of size " +
                       std::to_string(params.vocab_size));
    }
    sum += params.token_table.row(t).transpose();
  }
  return sum / static_cast<double>(text.tokens.size());
}

}  // namespace

bool EncoderParams::all_finite() const {
  return image_w1.allFinite() && image_b1.allFinite() && image_w2.allFinite() &&
         image_b2.allFinite() && token_table.allFinite() && text_w1.allFinite() &&
         text_b1.allFinite() && text_w2.allFinite() && text_b2.allFinite();
}

bool operator==(const EncoderParams& a, const EncoderParams& b) {
  return a.image_shape == b.image_shape && a.vocab_size == b.vocab_size &&
         a.hidden == b.hidden && a.embed_dim == b.embed_dim && a.seed == b.seed &&
         a.image_w1 == b.image_w1 && a.image_b1 == b.image_b1 && a.image_w2 == b.image_w2 &&
         a.image_b2 == b.image_b2 && a.token_table == b.token_table &&
         a.text_w1 == b.text_w1 && a.text_b1 == b.text_b1 && a.text_w2 == b.text_w2 &&
         a.text_b2 == b.text_b2;
}

EncoderParams init_toy_encoders(std::uint64_t seed, ImageShape image_shape,
                                std::size_t vocab_size, int hidden, int embed_dim) {
  if (!image_shape.valid() || vocab_size == 0 || hidden <= 0 || embed_dim <= 0) {
    throw ConfigError("toy encoder dimensions must be positive");
  }
  EncoderParams p;
  p.image_shape = image_shape;
  p.vocab_size = vocab_size;
  p.hidden = hidden;
  p.embed_dim = embed_dim;
  p.seed = seed;

  const auto in = static_cast<Eigen::Index>(image_shape.size());
  p.image_w1.resize(hidden, in);
  p.image_b1.resize(hidden);
  p.image_w2.resize(embed_dim, hidden);
  p.image_b2.resize(embed_dim);
  p.token_table.resize(static_cast<Eigen::Index>(vocab_size), hidden);
  p.text_w1.resize(hidden, hidden);
  p.text_b1.resize(hidden);
  p.text_w2.resize(embed_dim, hidden);
  p.text_b2.resize(embed_dim);

  Rng rng(seed);
  fill_uniform(p.image_w1, rng);
  fill_uniform(p.image_b1, rng);
  fill_uniform(p.image_w2, rng);
  fill_uniform(p.image_b2, rng);
  fill_uniform(p.token_table, rng);
  fill_uniform(p.text_w1, rng);
  fill_uniform(p.text_b1, rng);
  fill_uniform(p.text_w2, rng);
  fill_uniform(p.text_b2, rng);
  return p;
}

Embedding encode_image(const EncoderParams& params, const ImageTensor& image) {
  check_image(params, image);
  Eigen::VectorXd h = (params.image_w1 * flat(image) + params.image_b1).array().tanh();
  return Embedding::normalized(params.image_w2 * h + params.image_b2);
}

Embedding encode_text(const EncoderParams& params, const TokenSeq& text) {
  Eigen::VectorXd u = bag_of_tokens(params, text);
  Eigen::VectorXd h = (params.text_w1 * u + params.text_b1).array().tanh();
  return Embedding::normalized(params.text_w2 * h + params.text_b2);
}

Eigen::VectorXd normalize_backward(const Eigen::VectorXd& unit, double norm,
                                   const Eigen::VectorXd& upstream) {
  return (upstream - unit * unit.dot(upstream)) / norm;
}

ToyDualEncoder::ToyDualEncoder(EncoderParams params, std::string name)
    : params_(std::move(params)), name_(std::move(name)) {}

Embedding ToyDualEncoder::encode_image(const ImageTensor& image) const {
  return sadca::encode_image(params_, image);
}

Embedding ToyDualEncoder::encode_text(const TokenSeq& text) const {
  return sadca::encode_text(params_, text);
}

PixelArray ToyDualEncoder::image_vjp(const ImageTensor& image,
                                     const Eigen::VectorXd& upstream) const {
  check_image(params_, image);
  if (upstream.size() != params_.embed_dim) throw ConfigError("upstream gradient dimension");
  Eigen::VectorXd h = (params_.image_w1 * flat(image) + params_.image_b1).array().tanh();
  Eigen::VectorXd z = params_.image_w2 * h + params_.image_b2;
  const double norm = z.norm();
  Eigen::VectorXd dz = normalize_backward(z / norm, norm, upstream);
  Eigen::VectorXd dpre = (params_.image_w2.transpose() * dz).array() * (1.0 - h.array().square());
  Eigen::VectorXd dx = params_.image_w1.transpose() * dpre;
  return PixelArray(image.shape(), std::vector<double>(dx.data(), dx.data() + dx.size()));
}

}  // namespace sadca
