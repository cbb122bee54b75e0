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

#ifndef SADCA_TRAINING_HPP_
#define SADCA_TRAINING_HPP_

#include <cstdint>

#include "sadca/dataset.hpp"
#include "sadca/toy_encoder.hpp"

namespace sadca {

struct TrainingOptions {
  int epochs = 300;
  double learning_rate = 5e-3;
  double temperature = 0.1;
  // Fraction of images swapped for a random local view each epoch.
  double view_fraction = 0.0;
  std::uint64_t seed = 0;
};

struct TrainingSummary {
  double initial_loss = 0.0;
  double final_loss = 0.0;
};

/// Full-batch symmetric contrastive fit of toy encoder weights to a dataset
/// (Adam). Image->text treats all M captions of a sample as positives,
/// text->image uses each caption as its own query. Deterministic.
TrainingSummary fit_contrastive(EncoderParams& params, const Dataset& dataset,
                                const TrainingOptions& options);

/// Named toy model recipe: init with (seed, hidden, embed_dim), then fit for
/// `epochs` on the dataset (epochs = 0 keeps the random init).
struct ModelSpec {
  std::string name;
  std::uint64_t seed = 0;
  int hidden = 64;
  int embed_dim = 32;
  int epochs = 1500;
  double view_fraction = 1.0;
};

ToyDualEncoder build_model(const ModelSpec& spec, const Dataset& dataset);

}  // namespace sadca

#endif  // SADCA_TRAINING_HPP_
