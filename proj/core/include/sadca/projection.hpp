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

#ifndef SADCA_PROJECTION_HPP_
#define SADCA_PROJECTION_HPP_

#include "sadca/image.hpp"

namespace sadca {

/// Clamp to [origin - eps, origin + eps] intersected with [0, 1].
ImageTensor project_clip(const PixelArray& candidate, const ImageTensor& origin, double eps);
ImageTensor project_clip(const ImageTensor& candidate, const ImageTensor& origin, double eps);

/// project_clip(current + direction * alpha * sign(g)). sign(0) = 0.
ImageTensor sign_step(const ImageTensor& current, const PixelArray& g, double alpha,
                      double direction, const ImageTensor& origin, double eps);

}  // namespace sadca

#endif  // SADCA_PROJECTION_HPP_
