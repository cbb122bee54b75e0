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

#include "sadca/projection.hpp"

#include <algorithm>
#include <cmath>

#include "sadca/errors.hpp"

namespace sadca {

namespace {

// o +/- eps rounded toward o until the difference itself rounds to <= eps,
// so the budget holds exactly when measured as |x - o|.
double upper_bound(double o, double eps) {
  double hi = o + eps;
  while (hi - o > eps) hi = std::nextafter(hi, o);
  return hi;
}

double lower_bound(double o, double eps) {
  double lo = o - eps;
  while (o - lo > eps) lo = std::nextafter(lo, o);
  return lo;
}

}  // namespace

ImageTensor project_clip(const PixelArray& candidate, const ImageTensor& origin, double eps) {
  if (candidate.shape != origin.shape()) throw ConfigError("project_clip: shape mismatch");
  std::vector<double> out(candidate.values.size());
  auto o = origin.pixels();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double lo = std::max(0.0, lower_bound(o[i], eps));
    const double hi = std::min(1.0, upper_bound(o[i], eps));
    out[i] = std::clamp(candidate.values[i], lo, hi);
  }
  return ImageTensor(origin.shape(), std::move(out));
}

ImageTensor project_clip(const ImageTensor& candidate, const ImageTensor& origin, double eps) {
  auto px = candidate.pixels();
  return project_clip(PixelArray(candidate.shape(), {px.begin(), px.end()}), origin, eps);
}

ImageTensor sign_step(const ImageTensor& current, const PixelArray& g, double alpha,
                      double direction, const ImageTensor& origin, double eps) {
  if (g.shape != current.shape()) throw ConfigError("sign_step: shape mismatch");
  PixelArray moved(current.shape());
  auto px = current.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    const double s = (g.values[i] > 0.0) - (g.values[i] < 0.0);
    moved.values[i] = px[i] + direction * alpha * s;
  }
  return project_clip(moved, origin, eps);
}

}  // namespace sadca
