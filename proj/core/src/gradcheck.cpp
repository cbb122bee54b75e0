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

#include "sadca/gradcheck.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "sadca/augmentation.hpp"
#include "sadca/gradient.hpp"
#include "sadca/losses.hpp"
#include "sadca/toy_encoder.hpp"

namespace sadca {

bool GradCheckReport::ok() const {
  return !cases.empty() &&
         std::all_of(cases.begin(), cases.end(), [](const GradCheckCase& c) { return c.ok; });
}

double relative_error(double analytic, double numeric) {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
  return std::abs(analytic - numeric) / scale;
}

GradCheckCase check_gradient(const std::string& name, const ImageTensor& image,
                             const PixelArray& analytic,
                             const std::function<double(const ImageTensor&)>& loss,
                             const GradCheckOptions& options, Rng& rng) {
  std::vector<std::size_t> coords(image.size());
  std::iota(coords.begin(), coords.end(), 0);
  const std::size_t n = std::min(coords.size(), static_cast<std::size_t>(options.coordinates));
  for (std::size_t i = 0; i < n; ++i) std::swap(coords[i], coords[i + rng.index(coords.size() - i)]);

  GradCheckCase out;
  out.name = name;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = coords[i];
    ImageTensor plus = image;
    ImageTensor minus = image;
    plus.mutable_pixels()[c] = std::min(1.0, image.pixels()[c] + options.step);
    minus.mutable_pixels()[c] = std::max(0.0, image.pixels()[c] - options.step);
    const double width = plus.pixels()[c] - minus.pixels()[c];
    const double numeric = (loss(plus) - loss(minus)) / width;
    const double err = relative_error(analytic.values[c], numeric);
    out.max_relative_error = std::max(out.max_relative_error, err);
    ++out.sampled;
    if (err <= options.relative_tolerance) ++out.passed;
  }
  out.ok = out.sampled > 0 &&
           out.passed >= static_cast<int>(std::ceil(options.required_fraction * out.sampled));
  return out;
}

namespace {

ImageTensor random_image(const ImageShape& shape, Rng& rng) {
  // Interior values keep brightness clamps inactive under +-h.
  std::vector<double> px(shape.size());
  for (double& x : px) x = rng.uniform(0.1, 0.7);
  return ImageTensor(shape, std::move(px));
}

Embedding random_embedding(Eigen::Index dim, Rng& rng) {
  Eigen::VectorXd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = rng.uniform(-1.0, 1.0);
  return Embedding::normalized(v);
}

double weighted_sum(const ImageTensor& image, const PixelArray& weights) {
  double s = 0.0;
  auto px = image.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) s += weights.values[i] * px[i];
  return s;
}

}  // namespace

GradCheckReport run_gradient_suite(const GradCheckOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const ImageShape shape{8, 8, 1};
  Rng rng(options.seed);
  const ToyDualEncoder encoder(init_toy_encoders(options.seed, shape, 16, 32, 8));
  const Eigen::Index dim = encoder.embed_dim();

  GradCheckReport report;

  // Encoder alone: cos(F_I(v), e).
  {
    const ImageTensor v = random_image(shape, rng);
    const Embedding fixed = random_embedding(dim, rng);
    EmbeddingLoss loss = [&](std::span<const Embedding> e) {
      return EmbeddingLossValue{cosine(e[0], fixed), {fixed.vector()}};
    };
    const auto g = image_loss_gradient(encoder, loss, std::span<const ImageTensor>(&v, 1));
    report.cases.push_back(check_gradient(
        "encoder_cosine", v, g.grads[0],
        [&](const ImageTensor& x) { return cosine(encoder.encode_image(x), fixed); }, options, rng));
  }

  // Crop-resize: gradient of the output sum.
  {
    const ImageTensor v = random_image(shape, rng);
    const CropSpec crop = sample_crop_spec(shape, rng.uniform(kMinCropRatio, kMaxCropRatio), rng);
    PixelArray ones(shape, std::vector<double>(shape.size(), 1.0));
    const PixelArray analytic = crop_resize_backward(shape, crop, ones);
    report.cases.push_back(check_gradient(
        "crop_resize_sum", v, analytic,
        [&](const ImageTensor& x) { return weighted_sum(crop_resize(x, crop), ones); }, options,
        rng));
  }

  // Each augmentation op against a random linear readout.
  const std::pair<const char*, AugmentationOp> ops[] = {
      {"flip", AugmentationOp::flip()},
      {"rotate", AugmentationOp::rotate(rng.uniform(-kMaxRotateDegrees, kMaxRotateDegrees))},
      {"brightness", AugmentationOp::brightness(rng.uniform(kMinBrightness, kMaxBrightness))},
  };
  for (const auto& [name, op] : ops) {
    const ImageTensor v = random_image(shape, rng);
    PixelArray w(shape);
    for (double& x : w.values) x = rng.uniform(-1.0, 1.0);
    const PixelArray analytic = augmentation_backward(v, op, w);
    report.cases.push_back(check_gradient(
        name, v, analytic,
        [&](const ImageTensor& x) { return weighted_sum(apply_augmentation(x, op), w); }, options,
        rng));
  }

  // Full image loss: view-averaged static + dynamic contrastive terms.
  {
    const ImageTensor v = random_image(shape, rng);
    const double lambda = 0.2;
    std::vector<Embedding> positives, dynamic, negatives;
    for (int i = 0; i < 3; ++i) positives.push_back(random_embedding(dim, rng));
    for (int i = 0; i < options.num_views; ++i) dynamic.push_back(random_embedding(dim, rng));
    for (int i = 0; i < 4; ++i) negatives.push_back(random_embedding(dim, rng));
    const auto views = sample_local_views(shape, options.num_views, rng);

    auto value_of = [&](std::span<const Embedding> e) {
      return view_averaged_loss(e, [&](const Embedding& x) {
               return contrastive_image_loss(x, positives, negatives, lambda).total;
             }) +
             view_averaged_loss(e, [&](const Embedding& x) {
               return dynamic_image_loss(x, dynamic, negatives, lambda).total;
             });
    };
    EmbeddingLoss loss = [&](std::span<const Embedding> e) {
      Eigen::VectorXd g = sum_embeddings(positives, dim) + sum_embeddings(dynamic, dim) -
                          2.0 * lambda * sum_embeddings(negatives, dim);
      g /= static_cast<double>(e.size());
      return EmbeddingLossValue{value_of(e), std::vector<Eigen::VectorXd>(e.size(), g)};
    };
    std::vector<LossTerm> terms;
    for (const auto& view : views) terms.push_back({0, &view});
    const auto g = image_loss_gradient(encoder, loss, std::span<const ImageTensor>(&v, 1), terms);
    report.cases.push_back(check_gradient(
        "image_loss_views", v, g.grads[0],
        [&](const ImageTensor& x) {
          std::vector<Embedding> e;
          for (const auto& view : views) e.push_back(encoder.encode_image(view.forward(x)));
          return value_of(e);
        },
        options, rng));
  }

  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace sadca
