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

#ifndef SADCA_RNG_HPP_
#define SADCA_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace sadca {

/// Seeded random stream. Draws are computed from raw 64-bit engine output so
/// sequences do not depend on the standard library's distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1).
  double uniform01();
  double uniform(double lo, double hi);
  // Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

// FNV-1a, stable across platforms.
std::uint64_t stable_hash(std::string_view text);

// Seed for one sample's attack stream, derived from the run seed and sample id.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag);

}  // namespace sadca

#endif  // SADCA_RNG_HPP_
