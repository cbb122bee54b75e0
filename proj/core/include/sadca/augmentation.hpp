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

#ifndef SADCA_AUGMENTATION_HPP_
#define SADCA_AUGMENTATION_HPP_

#include <vector>

#include "sadca/gradient.hpp"
#include "sadca/image.hpp"
#include "sadca/rng.hpp"
#include "sadca/text.hpp"

namespace sadca {

inline constexpr double kMinCropRatio = 0.4;
inline constexpr double kMaxCropRatio = 0.8;
inline constexpr double kMaxRotateDegrees = 15.0;
inline constexpr double kMinBrightness = 0.8;
inline constexpr double kMaxBrightness = 1.2;

enum class AugmentationKind { kIdentity, kHorizontalFlip, kRotate, kBrightness };

struct AugmentationOp {
  AugmentationKind kind = AugmentationKind::kIdentity;
  double rotate_degrees = 0.0;
  double brightness_scale = 1.0;

  static AugmentationOp identity() { return {}; }
  static AugmentationOp flip() { return {AugmentationKind::kHorizontalFlip, 0.0, 1.0}; }
  static AugmentationOp rotate(double degrees) {
    return {AugmentationKind::kRotate, degrees, 1.0};
  }
  static AugmentationOp brightness(double scale) {
    return {AugmentationKind::kBrightness, 0.0, scale};
  }
  bool valid() const;
  friend bool operator==(const AugmentationOp&, const AugmentationOp&) = default;
};

/// Axis-aligned crop with the source aspect ratio. Side lengths are
/// round(sqrt(ratio) * H) and round(sqrt(ratio) * W).
struct CropSpec {
  double ratio = 1.0;
  int top = 0;
  int left = 0;
  int height = 0;
  int width = 0;

  double area_fraction(const ImageShape& shape) const {
    return static_cast<double>(height) * width / static_cast<double>(shape.plane());
  }
  friend bool operator==(const CropSpec&, const CropSpec&) = default;
};

// Throws InputError when ratio is outside [0.4, 0.8].
CropSpec sample_crop_spec(const ImageShape& shape, double ratio, Rng& rng);
// Crop sides for a ratio, without the range check.
CropSpec crop_spec_at(const ImageShape& shape, double ratio, int top, int left);

/// Bilinear resize of the crop back to the full image size.
ImageTensor crop_resize(const ImageTensor& image, const CropSpec& crop);
PixelArray crop_resize_backward(const ImageShape& shape, const CropSpec& crop,
                                const PixelArray& grad_output);

ImageTensor sample_crop_resize(const ImageTensor& image, double ratio, Rng& rng);

/// Flip reverses the width axis. Rotate resamples bilinearly about the image
/// center with zero padding. Brightness scales and clamps to [0, 1].
ImageTensor apply_augmentation(const ImageTensor& image, const AugmentationOp& op);
// Clamp subgradient: 1 strictly inside (0, 1), 0 where the clamp is active.
PixelArray augmentation_backward(const ImageTensor& input, const AugmentationOp& op,
                                 const PixelArray& grad_output);

/// One local-semantic view: op(resize(crop(image))).
class LocalView final : public ImageTransform {
 public:
  LocalView(CropSpec crop, AugmentationOp op) : crop_(crop), op_(op) {}

  ImageTensor forward(const ImageTensor& input) const override;
  PixelArray backward(const ImageTensor& input,
                      const PixelArray& grad_output) const override;

  const CropSpec& crop() const { return crop_; }
  const AugmentationOp& op() const { return op_; }
  friend bool operator==(const LocalView& a, const LocalView& b) {
    return a.crop_ == b.crop_ && a.op_ == b.op_;
  }

 private:
  CropSpec crop_;
  AugmentationOp op_;
};

AugmentationOp sample_augmentation_op(Rng& rng);

/// S independent draws of (ratio ~ U(0.4, 0.8), offset, op).
std::vector<LocalView> sample_local_views(const ImageShape& shape, int num_views, Rng& rng);

/// The S views themselves. Same draws as sample_local_views.
std::vector<ImageTensor> augment_image_local(const ImageTensor& image, int num_views,
                                             Rng& rng);

/// Each output concatenates two distinct captions (i != j), pairs drawn
/// independently per output. Throws InputError for fewer than 2 texts.
std::vector<TokenSeq> augment_text_mixed(std::span<const TokenSeq> texts, int num_views,
                                         Rng& rng);

}  // namespace sadca

#endif  // SADCA_AUGMENTATION_HPP_
