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

#ifndef SADCA_IMAGE_HPP_
#define SADCA_IMAGE_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace sadca {

struct ImageShape {
  int height = 0;
  int width = 0;
  int channels = 0;

  std::size_t size() const {
    return static_cast<std::size_t>(height) * static_cast<std::size_t>(width) *
           static_cast<std::size_t>(channels);
  }
  std::size_t plane() const {
    return static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  }
  bool valid() const { return height > 0 && width > 0 && channels > 0; }
  friend bool operator==(const ImageShape&, const ImageShape&) = default;
};

/// H x W x C pixel array, row-major with channels innermost. Every value lies
/// in [0, 1]; the constructors reject anything else and all library
/// operations that write pixels keep the range.
class ImageTensor {
 public:
  ImageTensor() = default;
  explicit ImageTensor(ImageShape shape, double fill = 0.0);
  ImageTensor(ImageShape shape, std::vector<double> pixels);

  const ImageShape& shape() const { return shape_; }
  int height() const { return shape_.height; }
  int width() const { return shape_.width; }
  int channels() const { return shape_.channels; }
  std::size_t size() const { return data_.size(); }

  std::size_t index(int h, int w, int c) const {
    return (static_cast<std::size_t>(h) * static_cast<std::size_t>(shape_.width) +
            static_cast<std::size_t>(w)) *
               static_cast<std::size_t>(shape_.channels) +
           static_cast<std::size_t>(c);
  }
  double operator()(int h, int w, int c) const { return data_[index(h, w, c)]; }
  double& operator()(int h, int w, int c) { return data_[index(h, w, c)]; }

  std::span<const double> pixels() const { return data_; }
  // Writers must keep values in [0, 1].
  std::span<double> mutable_pixels() { return data_; }

  bool in_unit_range() const;

  friend bool operator==(const ImageTensor&, const ImageTensor&) = default;

 private:
  ImageShape shape_;
  std::vector<double> data_;
};

/// Unconstrained array shaped like an image: pixel gradients, momentum.
struct PixelArray {
  ImageShape shape;
  std::vector<double> values;

  PixelArray() = default;
  explicit PixelArray(ImageShape s) : shape(s), values(s.size(), 0.0) {}
  PixelArray(ImageShape s, std::vector<double> v) : shape(s), values(std::move(v)) {}

  bool all_finite() const;
  friend bool operator==(const PixelArray&, const PixelArray&) = default;
};

double linf_distance(const ImageTensor& a, const ImageTensor& b);

}  // namespace sadca

#endif  // SADCA_IMAGE_HPP_
