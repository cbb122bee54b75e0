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

#ifndef SADCA_GRADCHECK_HPP_
#define SADCA_GRADCHECK_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sadca/image.hpp"
#include "sadca/rng.hpp"

namespace sadca {

struct GradCheckOptions {
  std::uint64_t seed = 7;
  int coordinates = 50;
  double step = 1e-4;
  double relative_tolerance = 1e-3;
  double required_fraction = 0.95;
  int num_views = 3;
};

struct GradCheckCase {
  std::string name;
  int sampled = 0;
  int passed = 0;
  double max_relative_error = 0.0;
  bool ok = false;
};

struct GradCheckReport {
  std::vector<GradCheckCase> cases;
  double seconds = 0.0;
  bool ok() const;
};

/// |a - n| / max(|a|, |n|, 1e-8).
double relative_error(double analytic, double numeric);

/// Central differences of `loss` at `coordinates` pixels drawn from rng,
/// compared with `analytic`.
GradCheckCase check_gradient(const std::string& name, const ImageTensor& image,
                             const PixelArray& analytic,
                             const std::function<double(const ImageTensor&)>& loss,
                             const GradCheckOptions& options, Rng& rng);

/// Finite-difference suite over 8x8x1 toy images: encoder cosine, every
/// augmentation op, crop-resize and the full view-averaged image loss.
GradCheckReport run_gradient_suite(const GradCheckOptions& options);

}  // namespace sadca

#endif  // SADCA_GRADCHECK_HPP_
