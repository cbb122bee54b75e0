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

#include "sadca/image.hpp"

#include <algorithm>
#include <cmath>

#include "sadca/errors.hpp"

namespace sadca {

ImageTensor::ImageTensor(ImageShape shape, double fill)
    : shape_(shape), data_(shape.size(), fill) {
  if (!shape.valid()) throw ConfigError("image dimensions must be positive");
  if (!(fill >= 0.0 && fill <= 1.0)) throw InputError("pixel fill outside [0, 1]");
}

ImageTensor::ImageTensor(ImageShape shape, std::vector<double> pixels)
    : shape_(shape), data_(std::move(pixels)) {
  if (!shape.valid()) throw ConfigError("image dimensions must be positive");
  if (data_.size() != shape.size()) {
    throw ConfigError("pixel count " + std::to_string(data_.size()) +
                      " does not match shape " + std::to_string(shape.size()));
  }
  if (!in_unit_range()) throw InputError("pixel value outside [0, 1]");
}

bool ImageTensor::in_unit_range() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double x) { return x >= 0.0 && x <= 1.0; });
}

bool PixelArray::all_finite() const {
  return std::all_of(values.begin(), values.end(),
                     [](double x) { return std::isfinite(x); });
}

double linf_distance(const ImageTensor& a, const ImageTensor& b) {
  if (a.shape() != b.shape()) throw ConfigError("linf_distance: shape mismatch");
  double worst = 0.0;
  auto pa = a.pixels();
  auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    worst = std::max(worst, std::abs(pa[i] - pb[i]));
  }
  return worst;
}

}  // namespace sadca
