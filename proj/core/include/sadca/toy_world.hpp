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

#ifndef SADCA_TOY_WORLD_HPP_
#define SADCA_TOY_WORLD_HPP_

#include <cstdint>
#include <vector>

#include "sadca/dataset.hpp"

namespace sadca {

/// Synthetic image-caption world used for desk-scale experiments.
///
/// Each sample is one (color, shape, quadrant) combination out of 4 x 4 x 4,
/// drawn as a filled shape on a noisy background. Its captions describe the
/// same three attributes with varied synonyms and filler words. The lexicon
/// maps every attribute word to same-slot alternatives, so a single
/// substitution can change a caption's meaning.
struct ToyWorldOptions {
  int num_samples = 64;  // at most 64
  int captions_per_sample = 5;
  ImageShape shape{16, 16, 3};
  double noise = 0.05;
  std::uint64_t seed = 0;
};

std::vector<SampleRecord> make_toy_records(const ToyWorldOptions& options);
Lexicon make_toy_lexicon();
Dataset make_toy_dataset(const ToyWorldOptions& options);

}  // namespace sadca

#endif  // SADCA_TOY_WORLD_HPP_
