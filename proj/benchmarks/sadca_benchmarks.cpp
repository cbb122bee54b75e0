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

#include <benchmark/benchmark.h>

#include "sadca/attack.hpp"
#include "sadca/augmentation.hpp"
#include "sadca/toy_world.hpp"
#include "sadca/training.hpp"

namespace {

using namespace sadca;

const Dataset& toy_data() {
  static const Dataset data = [] {
    ToyWorldOptions o;
    o.num_samples = 32;
    return make_toy_dataset(o);
  }();
  return data;
}

const ToyDualEncoder& toy_model() {
  static const ToyDualEncoder model = build_model(ModelSpec{"bench", 1, 64, 32, 100}, toy_data());
  return model;
}

void BM_EncodeImage(benchmark::State& state) {
  const auto& model = toy_model();
  const auto& image = toy_data().samples[0].image;
  for (auto _ : state) benchmark::DoNotOptimize(model.encode_image(image));
}
BENCHMARK(BM_EncodeImage);

void BM_ImageVjp(benchmark::State& state) {
  const auto& model = toy_model();
  const auto& s = toy_data().samples[0];
  const Embedding t = model.encode_text(s.captions[0]);
  for (auto _ : state) benchmark::DoNotOptimize(model.image_vjp(s.image, t.vector()));
}
BENCHMARK(BM_ImageVjp);

void BM_LocalView(benchmark::State& state) {
  const auto& image = toy_data().samples[0].image;
  Rng rng(1);
  for (auto _ : state) {
    const auto views = sample_local_views(image.shape(), 1, rng);
    benchmark::DoNotOptimize(views.front().forward(image));
  }
}
BENCHMARK(BM_LocalView);

void BM_SadcaAttack(benchmark::State& state) {
  const auto& data = toy_data();
  AttackConfig c;
  c.num_views = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sadca_attack(toy_model(), data.samples[1], data, c));
  }
}
BENCHMARK(BM_SadcaAttack)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_PgdBaseline(benchmark::State& state) {
  const auto& data = toy_data();
  const AttackConfig c;
  for (auto _ : state) benchmark::DoNotOptimize(pgd_baseline(toy_model(), data.samples[1], c));
}
BENCHMARK(BM_PgdBaseline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
