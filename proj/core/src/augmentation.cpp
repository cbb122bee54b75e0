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

#include "sadca/augmentation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "sadca/errors.hpp"

namespace sadca {

namespace {

// Spatial resampling: every output location reads up to four weighted input
// locations, the same taps for every channel. Forward and adjoint share it.
struct Tap {
  std::size_t source = 0;  // h * W + w
  double weight = 0.0;
};

struct SampleMap {
  ImageShape shape;
  std::vector<std::array<Tap, 4>> taps;
  std::vector<std::uint8_t> count;

  explicit SampleMap(ImageShape s) : shape(s), taps(s.plane()), count(s.plane(), 0) {}

  void add(std::size_t out, int h, int w, double weight) {
    if (weight == 0.0) return;
    if (h < 0 || w < 0 || h >= shape.height || w >= shape.width) return;  // zero padding
    taps[out][count[out]++] = {static_cast<std::size_t>(h) * shape.width + w, weight};
  }

  void add_bilinear(std::size_t out, double sy, double sx) {
    const double fy0 = std::floor(sy);
    const double fx0 = std::floor(sx);
    const int y0 = static_cast<int>(fy0);
    const int x0 = static_cast<int>(fx0);
    const double fy = sy - fy0;
    const double fx = sx - fx0;
    add(out, y0, x0, (1.0 - fy) * (1.0 - fx));
    add(out, y0, x0 + 1, (1.0 - fy) * fx);
    add(out, y0 + 1, x0, fy * (1.0 - fx));
    add(out, y0 + 1, x0 + 1, fy * fx);
  }

  std::vector<double> apply(std::span<const double> in) const {
    const auto c = static_cast<std::size_t>(shape.channels);
    std::vector<double> out(shape.size(), 0.0);
    for (std::size_t o = 0; o < taps.size(); ++o) {
      for (std::uint8_t t = 0; t < count[o]; ++t) {
        const Tap& tap = taps[o][t];
        for (std::size_t ch = 0; ch < c; ++ch) out[o * c + ch] += tap.weight * in[tap.source * c + ch];
      }
    }
    return out;
  }

  std::vector<double> adjoint(std::span<const double> grad_out) const {
    const auto c = static_cast<std::size_t>(shape.channels);
    std::vector<double> g(shape.size(), 0.0);
    for (std::size_t o = 0; o < taps.size(); ++o) {
      for (std::uint8_t t = 0; t < count[o]; ++t) {
        const Tap& tap = taps[o][t];
        for (std::size_t ch = 0; ch < c; ++ch) g[tap.source * c + ch] += tap.weight * grad_out[o * c + ch];
      }
    }
    return g;
  }
};

// Source coordinate along one axis of a crop of `extent` pixels starting at
// `offset`, resized to `size` pixels (half-pixel centers, clamped to the crop).
double crop_source(int out, int offset, int extent, int size) {
  double s = offset + (out + 0.5) * static_cast<double>(extent) / size - 0.5;
  return std::clamp(s, static_cast<double>(offset), static_cast<double>(offset + extent - 1));
}

SampleMap crop_resize_map(const ImageShape& shape, const CropSpec& crop) {
  SampleMap map(shape);
  for (int y = 0; y < shape.height; ++y) {
    const double sy = crop_source(y, crop.top, crop.height, shape.height);
    for (int x = 0; x < shape.width; ++x) {
      const double sx = crop_source(x, crop.left, crop.width, shape.width);
      map.add_bilinear(static_cast<std::size_t>(y) * shape.width + x, sy, sx);
    }
  }
  return map;
}

SampleMap flip_map(const ImageShape& shape) {
  SampleMap map(shape);
  for (int y = 0; y < shape.height; ++y) {
    for (int x = 0; x < shape.width; ++x) {
      map.add(static_cast<std::size_t>(y) * shape.width + x, y, shape.width - 1 - x, 1.0);
    }
  }
  return map;
}

SampleMap rotate_map(const ImageShape& shape, double degrees) {
  SampleMap map(shape);
  const double theta = degrees * std::numbers::pi / 180.0;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double cy = (shape.height - 1) / 2.0;
  const double cx = (shape.width - 1) / 2.0;
  for (int y = 0; y < shape.height; ++y) {
    for (int x = 0; x < shape.width; ++x) {
      // Inverse rotation of the output location gives the source location.
      const double dy = y - cy;
      const double dx = x - cx;
      const double sx = c * dx + s * dy + cx;
      const double sy = -s * dx + c * dy + cy;
      map.add_bilinear(static_cast<std::size_t>(y) * shape.width + x, sy, sx);
    }
  }
  return map;
}

// Bilinear outputs are convex combinations of [0, 1] inputs; rounding can
// leave them a few ulps outside.
std::vector<double> clamp_unit(std::vector<double> v) {
  for (double& x : v) x = std::clamp(x, 0.0, 1.0);
  return v;
}

}  // namespace

bool AugmentationOp::valid() const {
  switch (kind) {
    case AugmentationKind::kIdentity:
    case AugmentationKind::kHorizontalFlip:
      return true;
    case AugmentationKind::kRotate:
      return std::abs(rotate_degrees) <= kMaxRotateDegrees;
    case AugmentationKind::kBrightness:
      return brightness_scale >= kMinBrightness && brightness_scale <= kMaxBrightness;
  }
  return false;
}

CropSpec crop_spec_at(const ImageShape& shape, double ratio, int top, int left) {
  const double side = std::sqrt(ratio);
  CropSpec crop;
  crop.ratio = ratio;
  crop.height = std::clamp(static_cast<int>(std::lround(side * shape.height)), 1, shape.height);
  crop.width = std::clamp(static_cast<int>(std::lround(side * shape.width)), 1, shape.width);
  if (top < 0 || left < 0 || top + crop.height > shape.height ||
      left + crop.width > shape.width) {
    throw InputError("crop does not fit inside the image");
  }
  crop.top = top;
  crop.left = left;
  return crop;
}

CropSpec sample_crop_spec(const ImageShape& shape, double ratio, Rng& rng) {
  if (!(ratio >= kMinCropRatio && ratio <= kMaxCropRatio)) {
    throw InputError("crop ratio " + std::to_string(ratio) + " outside [0.4, 0.8]");
  }
  CropSpec sides = crop_spec_at(shape, ratio, 0, 0);
  const int top = static_cast<int>(rng.index(static_cast<std::size_t>(shape.height - sides.height + 1)));
  const int left = static_cast<int>(rng.index(static_cast<std::size_t>(shape.width - sides.width + 1)));
  return crop_spec_at(shape, ratio, top, left);
}

ImageTensor crop_resize(const ImageTensor& image, const CropSpec& crop) {
  return ImageTensor(image.shape(),
                     clamp_unit(crop_resize_map(image.shape(), crop).apply(image.pixels())));
}

PixelArray crop_resize_backward(const ImageShape& shape, const CropSpec& crop,
                                const PixelArray& grad_output) {
  return PixelArray(shape, crop_resize_map(shape, crop).adjoint(grad_output.values));
}

ImageTensor sample_crop_resize(const ImageTensor& image, double ratio, Rng& rng) {
  return crop_resize(image, sample_crop_spec(image.shape(), ratio, rng));
}

ImageTensor apply_augmentation(const ImageTensor& image, const AugmentationOp& op) {
  if (!op.valid()) throw InputError("augmentation parameters out of range");
  switch (op.kind) {
    case AugmentationKind::kIdentity:
      return image;
    case AugmentationKind::kHorizontalFlip:
      return ImageTensor(image.shape(), flip_map(image.shape()).apply(image.pixels()));
    case AugmentationKind::kRotate:
      return ImageTensor(image.shape(),
                         clamp_unit(rotate_map(image.shape(), op.rotate_degrees).apply(image.pixels())));
    case AugmentationKind::kBrightness: {
      std::vector<double> out(image.pixels().begin(), image.pixels().end());
      for (double& x : out) x = std::clamp(x * op.brightness_scale, 0.0, 1.0);
      return ImageTensor(image.shape(), std::move(out));
    }
  }
  return image;
}

PixelArray augmentation_backward(const ImageTensor& input, const AugmentationOp& op,
                                 const PixelArray& grad_output) {
  switch (op.kind) {
    case AugmentationKind::kIdentity:
      return grad_output;
    case AugmentationKind::kHorizontalFlip:
      return PixelArray(input.shape(), flip_map(input.shape()).adjoint(grad_output.values));
    case AugmentationKind::kRotate:
      return PixelArray(input.shape(),
                        rotate_map(input.shape(), op.rotate_degrees).adjoint(grad_output.values));
    case AugmentationKind::kBrightness: {
      PixelArray g(input.shape());
      auto px = input.pixels();
      for (std::size_t i = 0; i < px.size(); ++i) {
        const double y = px[i] * op.brightness_scale;
        g.values[i] = (y >= 0.0 && y <= 1.0) ? grad_output.values[i] * op.brightness_scale : 0.0;
      }
      return g;
    }
  }
  return grad_output;
}

ImageTensor LocalView::forward(const ImageTensor& input) const {
  return apply_augmentation(crop_resize(input, crop_), op_);
}

PixelArray LocalView::backward(const ImageTensor& input, const PixelArray& grad_output) const {
  PixelArray g = augmentation_backward(crop_resize(input, crop_), op_, grad_output);
  return crop_resize_backward(input.shape(), crop_, g);
}

AugmentationOp sample_augmentation_op(Rng& rng) {
  switch (rng.index(4)) {
    case 0:
      return AugmentationOp::identity();
    case 1:
      return AugmentationOp::flip();
    case 2:
      return AugmentationOp::rotate(rng.uniform(-kMaxRotateDegrees, kMaxRotateDegrees));
    default:
      return AugmentationOp::brightness(rng.uniform(kMinBrightness, kMaxBrightness));
  }
}

std::vector<LocalView> sample_local_views(const ImageShape& shape, int num_views, Rng& rng) {
  if (num_views < 1) throw InputError("need at least one view");
  std::vector<LocalView> views;
  views.reserve(static_cast<std::size_t>(num_views));
  for (int s = 0; s < num_views; ++s) {
    const double ratio = rng.uniform(kMinCropRatio, kMaxCropRatio);
    CropSpec crop = sample_crop_spec(shape, ratio, rng);
    views.emplace_back(crop, sample_augmentation_op(rng));
  }
  return views;
}

std::vector<ImageTensor> augment_image_local(const ImageTensor& image, int num_views, Rng& rng) {
  std::vector<ImageTensor> out;
  for (const auto& view : sample_local_views(image.shape(), num_views, rng)) {
    out.push_back(view.forward(image));
  }
  return out;
}

std::vector<TokenSeq> augment_text_mixed(std::span<const TokenSeq> texts, int num_views,
                                         Rng& rng) {
  if (texts.size() < 2) throw InputError("mixed text augmentation needs at least two captions");
  if (num_views < 1) throw InputError("need at least one view");
  std::vector<TokenSeq> out;
  out.reserve(static_cast<std::size_t>(num_views));
  for (int s = 0; s < num_views; ++s) {
    const std::size_t i = rng.index(texts.size());
    std::size_t j = rng.index(texts.size() - 1);
    if (j >= i) ++j;
    TokenSeq mixed;
    mixed.tokens = texts[i].tokens;
    mixed.tokens.insert(mixed.tokens.end(), texts[j].tokens.begin(), texts[j].tokens.end());
    mixed.source = texts[i].source + " " + texts[j].source;
    out.push_back(std::move(mixed));
  }
  return out;
}

}  // namespace sadca
