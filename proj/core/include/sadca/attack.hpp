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

#ifndef SADCA_ATTACK_HPP_
#define SADCA_ATTACK_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sadca/dataset.hpp"
#include "sadca/encoder.hpp"
#include "sadca/image.hpp"
#include "sadca/projection.hpp"
#include "sadca/rng.hpp"
#include "sadca/sampling.hpp"

namespace sadca {

/// Scalar knobs of the attack. Defaults are the published settings.
struct AttackConfig {
  double eps_v = 8.0 / 255.0;  // L-inf image budget, pixel units
  int eps_t = 1;               // max substituted words per caption
  double alpha = 2.0 / 255.0;  // sign-step size
  double mu = 1.0;             // momentum factor
  int interaction_steps = 5;   // I
  int image_steps = 10;        // J
  int num_negatives = 20;      // K
  double lambda = 0.2;         // negative weight
  int num_views = 10;          // S
  SelectionStrategy strategy = SelectionStrategy::kRandom;
  std::uint64_t seed = 0;
  bool enable_ci = true;  // align the positive image
  bool enable_di = true;  // re-attack text every interaction, image vs adversarial text
  bool enable_sa = true;  // semantic augmentation views

  // Throws ConfigError naming the first offending field.
  void validate() const;
  friend bool operator==(const AttackConfig&, const AttackConfig&) = default;
};

inline constexpr std::size_t kMaxSubstituteCandidates = 10;

struct MomentumState {
  PixelArray g;
};

/// g <- mu * g + grad / |grad|_1. A zero gradient contributes nothing.
MomentumState momentum_update(const MomentumState& state, const PixelArray& grad, double mu);

/// Word -> substitute ids, at most kMaxSubstituteCandidates each.
using CandidateTable = std::map<TokenId, std::vector<TokenId>>;
CandidateTable candidate_table(const Dataset& dataset);

struct LossTrace {
  std::vector<double> image;  // one L_v per image step
  std::vector<double> text;   // one mean L_t per interaction
  friend bool operator==(const LossTrace&, const LossTrace&) = default;
};

struct AttackResult {
  std::string sample_id;
  ImageTensor adv_image;
  std::vector<TokenSeq> adv_captions;
  LossTrace loss_trace;
  std::vector<double> step_linf;  // |v' - v|_inf after every image update
  std::vector<int> substituted_words;
  bool budget_ok = true;
  bool text_attack_skipped = false;  // no lexicon available
};

struct InnerLoopResult {
  ImageTensor image;
  MomentumState momentum;
  std::vector<double> losses;
  std::vector<double> step_linf;
};

/// J momentum sign-descent steps on
///   L_v = mean_s L(view_s, T_p, T_n) + mean_s L(view_s, T'_sa, T_n).
/// Views and mixed captions are redrawn every step when enable_sa is set;
/// otherwise the single view is the current image and T'_sa is the
/// adversarial caption set itself. The second term is dropped when
/// enable_di is off.
InnerLoopResult image_attack_inner(const DualEncoder& encoder, const ImageTensor& origin,
                                   const ImageTensor& current,
                                   std::span<const Embedding> positive_texts,
                                   std::span<const TokenSeq> adversarial_captions,
                                   std::span<const Embedding> negative_texts,
                                   const AttackConfig& config, Rng& rng,
                                   MomentumState state, int first_step = 0);

struct TextStepResult {
  std::vector<TokenSeq> captions;
  std::vector<double> losses;  // L_t of each returned caption
  std::vector<int> substituted_words;
  bool skipped = false;
};

/// Value of L_t = L(t, v'_i, V_n) + L(t, v_p, V_n) for one caption.
double text_step_loss(const Embedding& caption, const Embedding& adversarial_image,
                      const Embedding& positive_image,
                      std::span<const Embedding> negative_images, double lambda);

/// Greedy substitution per caption: each round applies the single
/// (position, candidate) change with the lowest L_t if it strictly improves
/// on the current caption, until no change helps or eps_t positions differ
/// from `originals`.
TextStepResult text_attack_step(const DualEncoder& encoder,
                                std::span<const TokenSeq> captions,
                                std::span<const TokenSeq> originals,
                                const Embedding& adversarial_image,
                                const Embedding& positive_image,
                                std::span<const Embedding> negative_images,
                                const CandidateTable& candidates, int eps_t, double lambda);

/// Full dynamic contrastive attack on one sample. Deterministic in
/// (sample, dataset, config, encoder); the random stream is seeded from
/// config.seed and the sample id.
AttackResult sadca_attack(const DualEncoder& encoder, const PairedSample& sample,
                          const Dataset& dataset, const AttackConfig& config);

/// Image-only PGD on sum_m cos(F_I(v'), F_T(t_m)) for I * J steps. No
/// momentum, augmentation or negatives; captions untouched.
AttackResult pgd_baseline(const DualEncoder& encoder, const PairedSample& sample,
                          const AttackConfig& config);

int count_substitutions(const TokenSeq& adversarial, const TokenSeq& original);

}  // namespace sadca

#endif  // SADCA_ATTACK_HPP_
