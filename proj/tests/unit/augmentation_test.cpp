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

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "sadca/augmentation.hpp"
#include "sadca/errors.hpp"

namespace sadca {
namespace {

ImageTensor smooth_image(ImageShape shape) {
  ImageTensor img(shape);
  for (int h = 0; h < shape.height; ++h) {
    for (int w = 0; w < shape.width; ++w) {
      for (int c = 0; c < shape.channels; ++c) {
        img(h, w, c) = 0.5 + 0.3 * std::sin(0.2 * h + 0.1 * c) * std::cos(0.15 * w);
      }
    }
  }
  return img;
}

ImageTensor noisy_image(ImageShape shape, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> px(shape.size());
  for (double& p : px) p = rng.uniform(0.05, 0.95);
  return ImageTensor(shape, std::move(px));
}

double inner(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

TEST(CropResize, SideLengthsFollowRounding) {
  const CropSpec c = crop_spec_at(ImageShape{32, 32, 3}, 0.64, 0, 0);
  EXPECT_EQ(c.height, 26);
  EXPECT_EQ(c.width, 26);
  Rng rng(1);
  const ImageTensor out = sample_crop_resize(smooth_image({32, 32, 3}), 0.64, rng);
  EXPECT_EQ(out.shape(), (ImageShape{32, 32, 3}));
}

TEST(CropResize, FullCropIsIdentity) {
  const ImageTensor img = noisy_image({9, 7, 2}, 3);
  const ImageTensor out = crop_resize(img, crop_spec_at(img.shape(), 1.0, 0, 0));
  for (std::size_t i = 0; i < img.size(); ++i) EXPECT_NEAR(out.pixels()[i], img.pixels()[i], 1e-6);
}

TEST(CropResize, RejectsRatioOutsideRange) {
  Rng rng(1);
  EXPECT_THROW(sample_crop_spec({16, 16, 1}, 0.3, rng), InputError);
  EXPECT_THROW(sample_crop_spec({16, 16, 1}, 0.9, rng), InputError);
  EXPECT_THROW(crop_spec_at({16, 16, 1}, 0.64, 10, 0), InputError);
}

TEST(CropResize, BackwardIsAdjointOfForward) {
  const ImageShape shape{10, 12, 2};
  const ImageTensor x = noisy_image(shape, 5);
  const ImageTensor up = noisy_image(shape, 6);
  const PixelArray y(shape, std::vector<double>(up.pixels().begin(), up.pixels().end()));
  for (double r : {0.4, 0.55, 0.8}) {
    const CropSpec c = crop_spec_at(shape, r, 1, 1);
    const double lhs = inner(crop_resize(x, c).pixels(), y.values);
    const double rhs = inner(x.pixels(), crop_resize_backward(shape, c, y).values);
    EXPECT_NEAR(lhs, rhs, 1e-12) << "ratio " << r;
  }
}

TEST(CropResize, SumGradientMatchesFiniteDifferences) {
  const ImageShape shape{8, 8, 1};
  const ImageTensor x = noisy_image(shape, 8);
  const CropSpec c = crop_spec_at(shape, 0.6, 1, 2);
  const PixelArray ones(shape, std::vector<double>(shape.size(), 1.0));
  const PixelArray g = crop_resize_backward(shape, c, ones);
  auto total = [&](const ImageTensor& im) {
    double s = 0.0;
    const ImageTensor out = crop_resize(im, c);
    for (double v : out.pixels()) s += v;
    return s;
  };
  for (std::size_t i = 0; i < shape.size(); i += 5) {
    ImageTensor p = x, m = x;
    p.mutable_pixels()[i] += 1e-4;
    m.mutable_pixels()[i] -= 1e-4;
    const double fd = (total(p) - total(m)) / 2e-4;
    EXPECT_LE(std::abs(g.values[i] - fd), 1e-3 * std::max({std::abs(fd), std::abs(g.values[i]), 1e-8}));
  }
}

TEST(Augmentation, FlipTwiceRestoresImageExactly) {
  const ImageTensor img = noisy_image({7, 9, 3}, 2);
  const auto once = apply_augmentation(img, AugmentationOp::flip());
  EXPECT_NE(once, img);
  EXPECT_EQ(apply_augmentation(once, AugmentationOp::flip()), img);
}

TEST(Augmentation, UnitBrightnessIsIdentity) {
  const ImageTensor img = noisy_image({5, 5, 3}, 2);
  EXPECT_EQ(apply_augmentation(img, AugmentationOp::brightness(1.0)), img);
}

TEST(Augmentation, BrightnessClampsAndZeroesGradientOutside) {
  ImageTensor img({1, 3, 1}, std::vector<double>{0.5, 0.9, 1.0 / 1.2});
  const auto op = AugmentationOp::brightness(1.2);
  const auto out = apply_augmentation(img, op);
  EXPECT_DOUBLE_EQ(out.pixels()[0], 0.6);
  EXPECT_DOUBLE_EQ(out.pixels()[1], 1.0);
  const PixelArray up({1, 3, 1}, {1.0, 1.0, 1.0});
  const PixelArray g = augmentation_backward(img, op, up);
  EXPECT_DOUBLE_EQ(g.values[0], 1.2);
  EXPECT_DOUBLE_EQ(g.values[1], 0.0);
  // Landing exactly on the bound counts as inside.
  EXPECT_DOUBLE_EQ(g.values[2], 1.2);
}

// Zero padding discards the corners, so the bilinear loss is measured where
// both rotations read from inside the image: within the inscribed disc
// shrunk by two pixels of bilinear support.
TEST(Augmentation, RotateRoundTripStaysClose) {
  const ImageTensor img = smooth_image({32, 32, 1});
  const auto there = apply_augmentation(img, AugmentationOp::rotate(15.0));
  const auto back = apply_augmentation(there, AugmentationOp::rotate(-15.0));
  const double centre = 15.5;
  double mae = 0.0;
  int counted = 0;
  for (int h = 0; h < 32; ++h) {
    for (int w = 0; w < 32; ++w) {
      if (std::hypot(h - centre, w - centre) > centre - 2.0) continue;
      mae += std::abs(back(h, w, 0) - img(h, w, 0));
      ++counted;
    }
  }
  mae /= counted;
  EXPECT_GT(counted, 500);
  EXPECT_LE(mae, 0.05);
  // Corner pixels map outside the source and come back as padding.
  EXPECT_EQ(there(0, 0, 0), 0.0);
}

TEST(Augmentation, RotateBackwardIsAdjoint) {
  const ImageShape shape{9, 9, 2};
  const ImageTensor x = noisy_image(shape, 11);
  const ImageTensor yi = noisy_image(shape, 12);
  const PixelArray y(shape, std::vector<double>(yi.pixels().begin(), yi.pixels().end()));
  for (double deg : {-15.0, 7.5, 15.0}) {
    const auto op = AugmentationOp::rotate(deg);
    EXPECT_NEAR(inner(apply_augmentation(x, op).pixels(), y.values),
                inner(x.pixels(), augmentation_backward(x, op, y).values), 1e-12);
  }
}

TEST(Augmentation, RejectsOutOfRangeOps) {
  const ImageTensor img({4, 4, 1}, 0.5);
  EXPECT_THROW(apply_augmentation(img, AugmentationOp::rotate(20.0)), InputError);
  EXPECT_THROW(apply_augmentation(img, AugmentationOp::brightness(1.5)), InputError);
}

TEST(LocalViews, SeededDrawsAreReproducible) {
  const ImageTensor img = noisy_image({16, 16, 3}, 4);
  Rng a(99), b(99);
  const auto va = augment_image_local(img, 10, a);
  const auto vb = augment_image_local(img, 10, b);
  ASSERT_EQ(va.size(), 10u);
  EXPECT_EQ(va, vb);
}

TEST(LocalViews, CropAreasStayInRange) {
  const ImageShape shape{16, 16, 3};
  Rng rng(5);
  // One-pixel rounding of each side, relative to the full image.
  const double slack = (2.0 * 16 + 1.0) / 256.0;
  for (const auto& v : sample_local_views(shape, 200, rng)) {
    const double a = v.crop().area_fraction(shape);
    EXPECT_GE(a, kMinCropRatio - slack);
    EXPECT_LE(a, kMaxCropRatio + slack);
    EXPECT_GE(v.crop().top, 0);
    EXPECT_LE(v.crop().top + v.crop().height, shape.height);
    EXPECT_TRUE(v.op().valid());
  }
}

TEST(LocalViews, ViewGradientMatchesFiniteDifferences) {
  const ImageShape shape{8, 8, 1};
  const ImageTensor x = noisy_image(shape, 21);
  Rng rng(3);
  const auto views = sample_local_views(shape, 6, rng);
  const ImageTensor wi = noisy_image(shape, 22);
  const PixelArray weights(shape, std::vector<double>(wi.pixels().begin(), wi.pixels().end()));
  for (const auto& v : views) {
    const PixelArray g = v.backward(x, weights);
    auto f = [&](const ImageTensor& im) { return inner(v.forward(im).pixels(), weights.values); };
    for (std::size_t i = 0; i < shape.size(); i += 7) {
      ImageTensor p = x, m = x;
      p.mutable_pixels()[i] += 1e-4;
      m.mutable_pixels()[i] -= 1e-4;
      const double fd = (f(p) - f(m)) / 2e-4;
      EXPECT_LE(std::abs(g.values[i] - fd),
                1e-3 * std::max({std::abs(fd), std::abs(g.values[i]), 1e-8}));
    }
  }
}

TEST(MixedText, TwoCaptionsGiveOnlyTheTwoOrders) {
  const std::vector<TokenSeq> texts{{{1, 2}, "a dog"}, {{3}, "runs"}};
  Rng rng(8);
  const TokenSeq ab{{1, 2, 3}, ""}, ba{{3, 1, 2}, ""};
  std::set<std::vector<TokenId>> seen;
  for (const auto& t : augment_text_mixed(texts, 50, rng)) {
    EXPECT_TRUE(t == ab || t == ba);
    seen.insert(t.tokens);
  }
  EXPECT_EQ(seen.size(), 2u);
}

TEST(MixedText, OutputsConcatenateTwoDistinctCaptions) {
  const std::vector<TokenSeq> texts{{{1}, ""}, {{2, 2}, ""}, {{3, 3, 3}, ""}, {{4, 4, 4, 4}, ""}};
  Rng rng(2);
  for (const auto& t : augment_text_mixed(texts, 100, rng)) {
    // Lengths are 1..4, so a valid output splits uniquely into two distinct members.
    bool found = false;
    for (std::size_t i = 0; i < texts.size(); ++i) {
      for (std::size_t j = 0; j < texts.size(); ++j) {
        if (i == j) continue;
        std::vector<TokenId> cat = texts[i].tokens;
        cat.insert(cat.end(), texts[j].tokens.begin(), texts[j].tokens.end());
        found = found || cat == t.tokens;
      }
    }
    EXPECT_TRUE(found);
    EXPECT_EQ(std::set<TokenId>(t.tokens.begin(), t.tokens.end()).size(), 2u);
  }
}

TEST(MixedText, NeedsTwoCaptions) {
  const std::vector<TokenSeq> one{{{1}, ""}};
  Rng rng(1);
  EXPECT_THROW(augment_text_mixed(one, 3, rng), InputError);
}

}  // namespace
}  // namespace sadca
