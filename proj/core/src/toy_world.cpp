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

#include "sadca/toy_world.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "sadca/errors.hpp"
#include "sadca/rng.hpp"

namespace sadca {

namespace {

struct Attribute {
  std::array<std::string, 3> words;  // canonical word first, then synonyms
};

const std::array<Attribute, 4> kColors = {{
    {{"red", "crimson", "scarlet"}},
    {{"green", "emerald", "lime"}},
    {{"blue", "azure", "navy"}},
    {{"yellow", "golden", "amber"}},
}};

const std::array<std::array<double, 3>, 4> kRgb = {{
    {0.90, 0.10, 0.10},
    {0.10, 0.80, 0.15},
    {0.10, 0.20, 0.90},
    {0.90, 0.85, 0.10},
}};

const std::array<Attribute, 4> kShapes = {{
    {{"square", "block", "box"}},
    {{"circle", "disc", "ring"}},
    {{"cross", "plus", "intersection"}},
    {{"triangle", "wedge", "pyramid"}},
}};

// Quadrant q: row = q / 2 (top, bottom), column = q % 2 (left, right).
const std::array<Attribute, 2> kRows = {{
    {{"top", "upper", "high"}},
    {{"bottom", "lower", "low"}},
}};
const std::array<Attribute, 2> kCols = {{
    {{"left", "leftmost", "port"}},
    {{"right", "rightmost", "starboard"}},
}};

bool inside_shape(int shape, double dy, double dx, double radius) {
  switch (shape) {
    case 0:
      return std::abs(dy) <= radius - 0.5 && std::abs(dx) <= radius - 0.5;
    case 1:
      return dy * dy + dx * dx <= radius * radius;
    case 2:
      return (std::abs(dy) <= 1.0 && std::abs(dx) <= radius) ||
             (std::abs(dx) <= 1.0 && std::abs(dy) <= radius);
    default:
      return dy >= -radius && dy <= radius && std::abs(dx) <= (dy + radius) / 2.0;
  }
}

ImageTensor render(const ImageShape& shape, int color, int form, int quadrant, double noise,
                   Rng& rng) {
  ImageTensor img(shape);
  auto px = img.mutable_pixels();
  for (double& x : px) x = std::clamp(0.35 + noise * rng.uniform(-1.0, 1.0), 0.0, 1.0);

  const double qh = shape.height / 2.0;
  const double qw = shape.width / 2.0;
  const double cy = (quadrant / 2) * qh + qh / 2.0 - 0.5 + rng.uniform(-0.75, 0.75);
  const double cx = (quadrant % 2) * qw + qw / 2.0 - 0.5 + rng.uniform(-0.75, 0.75);
  const double radius = 0.4 * std::min(qh, qw);
  for (int y = 0; y < shape.height; ++y) {
    for (int x = 0; x < shape.width; ++x) {
      if (!inside_shape(form, y - cy, x - cx, radius)) continue;
      for (int c = 0; c < shape.channels; ++c) {
        // Gray images get the channel mean of the color.
        const double base = shape.channels == 3
                                ? kRgb[color][c]
                                : (kRgb[color][0] + kRgb[color][1] + kRgb[color][2]) / 3.0;
        img(y, x, c) = std::clamp(base + noise * rng.uniform(-1.0, 1.0), 0.0, 1.0);
      }
    }
  }
  return img;
}

std::string pick(const Attribute& a, Rng& rng) { return a.words[rng.index(a.words.size())]; }

std::vector<std::string> captions_for(int color, int form, int quadrant, int count, Rng& rng) {
  const auto& c = kColors[color];
  const auto& s = kShapes[form];
  const auto& r = kRows[quadrant / 2];
  const auto& k = kCols[quadrant % 2];
  std::vector<std::string> out;
  for (int attempt = 0; static_cast<int>(out.size()) < count; ++attempt) {
    std::string cap;
    switch (attempt % 5) {
      case 0:
        cap = "a " + pick(c, rng) + " " + pick(s, rng) + " in the " + pick(r, rng) + " " + pick(k, rng);
        break;
      case 1:
        cap = "the " + pick(r, rng) + " " + pick(k, rng) + " corner holds a " + pick(c, rng) + " " + pick(s, rng);
        break;
      case 2:
        cap = "the " + pick(s, rng) + " is " + pick(c, rng) + " and sits " + pick(r, rng) + " " + pick(k, rng);
        break;
      case 3:
        cap = pick(c, rng) + " " + pick(s, rng) + " at " + pick(r, rng) + " " + pick(k, rng);
        break;
      default:
        cap = "picture of a " + pick(c, rng) + " " + pick(s, rng) + " placed " + pick(r, rng) + " " + pick(k, rng);
        break;
    }
    if (std::find(out.begin(), out.end(), cap) == out.end()) out.push_back(cap);
    if (attempt > 1000) throw ConfigError("cannot generate distinct captions");
  }
  return out;
}

template <std::size_t N>
void add_slot(Lexicon& lex, const std::array<Attribute, N>& slot) {
  for (std::size_t a = 0; a < N; ++a) {
    for (const auto& word : slot[a].words) {
      auto& subs = lex[word];
      for (std::size_t b = 0; b < N; ++b) {
        if (b == a) continue;
        for (const auto& alt : slot[b].words) subs.push_back(alt);
      }
    }
  }
}

}  // namespace

std::vector<SampleRecord> make_toy_records(const ToyWorldOptions& options) {
  if (options.num_samples < 1 || options.num_samples > 64) {
    throw ConfigError("toy world holds between 1 and 64 samples");
  }
  if (options.captions_per_sample < 1) throw ConfigError("need at least one caption");
  if (!options.shape.valid() || options.shape.height < 4 || options.shape.width < 4) {
    throw ConfigError("toy images must be at least 4x4");
  }
  Rng rng(options.seed);
  std::vector<int> combos(64);
  for (int i = 0; i < 64; ++i) combos[static_cast<std::size_t>(i)] = i;
  for (std::size_t i = combos.size() - 1; i > 0; --i) {
    std::swap(combos[i], combos[rng.index(i + 1)]);
  }
  combos.resize(static_cast<std::size_t>(options.num_samples));
  std::sort(combos.begin(), combos.end());

  std::vector<SampleRecord> records;
  for (int combo : combos) {
    const int color = combo / 16;
    const int form = (combo / 4) % 4;
    const int quadrant = combo % 4;
    SampleRecord r;
    char id[16];
    std::snprintf(id, sizeof(id), "toy%02d", combo);
    r.id = id;
    r.image = render(options.shape, color, form, quadrant, options.noise, rng);
    r.captions = captions_for(color, form, quadrant, options.captions_per_sample, rng);
    records.push_back(std::move(r));
  }
  return records;
}

Lexicon make_toy_lexicon() {
  Lexicon lex;
  add_slot(lex, kColors);
  add_slot(lex, kShapes);
  add_slot(lex, kRows);
  add_slot(lex, kCols);
  return lex;
}

Dataset make_toy_dataset(const ToyWorldOptions& options) {
  return build_dataset(make_toy_records(options), make_toy_lexicon());
}

}  // namespace sadca
