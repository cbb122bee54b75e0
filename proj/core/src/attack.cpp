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

#include "sadca/attack.hpp"

#include <algorithm>
#include <cmath>

#include "sadca/augmentation.hpp"
#include "sadca/errors.hpp"
#include "sadca/gradient.hpp"
#include "sadca/losses.hpp"

namespace sadca {

void AttackConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& rule) {
    throw ConfigError("attack config: " + field + " must be " + rule);
  };
  if (!(eps_v > 0.0 && eps_v <= 1.0)) fail("eps_v", "in (0, 1]");
  if (eps_t < 0) fail("eps_t", ">= 0");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail("alpha", "> 0");
  if (!(mu >= 0.0) || !std::isfinite(mu)) fail("mu", ">= 0");
  if (interaction_steps < 1) fail("interaction_steps", ">= 1");
  if (image_steps < 1) fail("image_steps", ">= 1");
  if (num_negatives < 1) fail("num_negatives", ">= 1");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) fail("lambda", ">= 0");
  if (num_views < 1) fail("num_views", ">= 1");
}

MomentumState momentum_update(const MomentumState& state, const PixelArray& grad, double mu) {
  if (state.g.shape != grad.shape) throw ConfigError("momentum_update: shape mismatch");
  double l1 = 0.0;
  for (double x : grad.values) l1 += std::abs(x);
  MomentumState next{PixelArray(grad.shape)};
  for (std::size_t i = 0; i < grad.values.size(); ++i) {
    const double normalized = l1 > 0.0 ? grad.values[i] / l1 : 0.0;
    next.g.values[i] = mu * state.g.values[i] + normalized;
  }
  return next;
}

CandidateTable candidate_table(const Dataset& dataset) {
  CandidateTable table;
  if (dataset.lexicon.empty()) return table;
  for (TokenId t = 1; t < dataset.vocab.size(); ++t) {
    auto c = dataset.candidates(t, kMaxSubstituteCandidates);
    if (!c.empty()) table.emplace(t, std::move(c));
  }
  return table;
}

int count_substitutions(const TokenSeq& adversarial, const TokenSeq& original) {
  if (adversarial.tokens.size() != original.tokens.size()) {
    throw InputError("substitution count needs equal-length captions");
  }
  int n = 0;
  for (std::size_t i = 0; i < original.tokens.size(); ++i) {
    n += adversarial.tokens[i] != original.tokens[i];
  }
  return n;
}

namespace {

struct ImageObjective {
  Eigen::VectorXd positive_sum;  // sum of T_p
  Eigen::VectorXd dynamic_sum;   // sum of T'_sa
  Eigen::VectorXd negative_sum;  // sum of T_n
  std::span<const Embedding> positives;
  std::vector<Embedding> dynamic;
  std::span<const Embedding> negatives;
  double lambda = 0.0;
  bool use_dynamic = false;

  EmbeddingLossValue operator()(std::span<const Embedding> views) const {
    EmbeddingLossValue out;
    out.value = view_averaged_loss(views, [&](const Embedding& v) {
      return contrastive_image_loss(v, positives, negatives, lambda).total;
    });
    if (use_dynamic) {
      out.value += view_averaged_loss(views, [&](const Embedding& v) {
        return dynamic_image_loss(v, dynamic, negatives, lambda).total;
      });
    }
    // Both terms are linear in the view embedding.
    Eigen::VectorXd g = positive_sum - lambda * negative_sum;
    if (use_dynamic) g += dynamic_sum - lambda * negative_sum;
    g /= static_cast<double>(views.size());
    out.grads.assign(views.size(), g);
    return out;
  }
};

struct StepOutcome {
  double loss = 0.0;
  PixelArray grad;
};

// Loss and pixel gradient of one image step, through the given views
// (empty = the image itself).
StepOutcome evaluate_step(const DualEncoder& encoder, const ImageTensor& current,
                          const ImageObjective& objective, std::span<const LocalView> views,
                          int step) {
  const std::span<const ImageTensor> source(&current, 1);
  ImageLossGradient g;
  if (views.empty()) {
    g = image_loss_gradient(encoder, std::cref(objective), source, step);
  } else {
    std::vector<LossTerm> terms;
    for (const auto& v : views) terms.push_back({0, &v});
    g = image_loss_gradient(encoder, std::cref(objective), source, terms, step);
  }
  return {g.value, std::move(g.grads[0])};
}

std::vector<Embedding> encode_texts(const DualEncoder& encoder, std::span<const TokenSeq> texts) {
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(encoder.encode_text(t));
  return out;
}

bool within_budget(double linf, double eps) { return linf <= eps + 1e-9; }

}  // namespace

InnerLoopResult image_attack_inner(const DualEncoder& encoder, const ImageTensor& origin,
                                   const ImageTensor& current,
                                   std::span<const Embedding> positive_texts,
                                   std::span<const TokenSeq> adversarial_captions,
                                   std::span<const Embedding> negative_texts,
                                   const AttackConfig& config, Rng& rng, MomentumState state,
                                   int first_step) {
  if (config.image_steps < 1 || config.num_views < 1) {
    throw ConfigError("image_attack_inner needs J >= 1 and S >= 1");
  }
  if (!(config.alpha >= 0.0)) throw ConfigError("image_attack_inner needs alpha >= 0");
  if (positive_texts.empty()) throw InputError("image_attack_inner needs positive texts");
  if (config.enable_di && adversarial_captions.empty()) {
    throw InputError("image_attack_inner needs adversarial captions");
  }
  if (state.g.values.empty()) state.g = PixelArray(origin.shape());

  const Eigen::Index dim = encoder.embed_dim();
  ImageObjective objective;
  objective.positives = positive_texts;
  objective.negatives = negative_texts;
  objective.positive_sum = sum_embeddings(positive_texts, dim);
  objective.negative_sum = sum_embeddings(negative_texts, dim);
  objective.lambda = config.lambda;
  objective.use_dynamic = config.enable_di;

  InnerLoopResult out;
  out.image = current;
  for (int j = 0; j < config.image_steps; ++j) {
    const int step = first_step + j;
    std::vector<LocalView> views;
    if (config.enable_sa) views = sample_local_views(origin.shape(), config.num_views, rng);
    if (config.enable_di) {
      if (config.enable_sa && adversarial_captions.size() >= 2) {
        objective.dynamic =
            encode_texts(encoder, augment_text_mixed(adversarial_captions, config.num_views, rng));
      } else {
        objective.dynamic = encode_texts(encoder, adversarial_captions);
      }
      objective.dynamic_sum = sum_embeddings(objective.dynamic, dim);
    }

    StepOutcome o = evaluate_step(encoder, out.image, objective, views, step);
    state = momentum_update(state, o.grad, config.mu);
    if (!state.g.all_finite()) throw NumericalError("non-finite momentum", step);
    // L_v is minimized, so the step descends along sign(g).
    out.image = sign_step(out.image, state.g, config.alpha, -1.0, origin, config.eps_v);
    out.losses.push_back(o.loss);
    out.step_linf.push_back(linf_distance(out.image, origin));
  }
  out.momentum = std::move(state);
  return out;
}

double text_step_loss(const Embedding& caption, const Embedding& adversarial_image,
                      const Embedding& positive_image, std::span<const Embedding> negative_images,
                      double lambda) {
  return dynamic_text_loss(caption, adversarial_image, negative_images, lambda).total +
         contrastive_text_loss(caption, positive_image, negative_images, lambda).total;
}

TextStepResult text_attack_step(const DualEncoder& encoder, std::span<const TokenSeq> captions,
                                std::span<const TokenSeq> originals,
                                const Embedding& adversarial_image, const Embedding& positive_image,
                                std::span<const Embedding> negative_images,
                                const CandidateTable& candidates, int eps_t, double lambda) {
  if (captions.size() != originals.size()) {
    throw InputError("text_attack_step: one original per caption required");
  }
  auto loss_of = [&](const TokenSeq& t) {
    return text_step_loss(encoder.encode_text(t), adversarial_image, positive_image,
                          negative_images, lambda);
  };

  TextStepResult out;
  out.skipped = candidates.empty();
  for (std::size_t c = 0; c < captions.size(); ++c) {
    TokenSeq current = captions[c];
    const TokenSeq& original = originals[c];
    double current_loss = loss_of(current);

    while (!out.skipped && count_substitutions(current, original) < eps_t) {
      double best_loss = current_loss;
      std::size_t best_pos = 0;
      TokenId best_token = 0;
      bool improved = false;
      for (std::size_t p = 0; p < current.tokens.size(); ++p) {
        auto it = candidates.find(original.tokens[p]);
        if (it == candidates.end()) continue;
        for (TokenId cand : it->second) {
          if (cand == current.tokens[p]) continue;
          TokenSeq trial = current;
          trial.tokens[p] = cand;
          const double l = loss_of(trial);
          if (l < best_loss) {
            best_loss = l;
            best_pos = p;
            best_token = cand;
            improved = true;
          }
        }
      }
      if (!improved) break;
      current.tokens[best_pos] = best_token;
      current_loss = best_loss;
    }
    out.substituted_words.push_back(count_substitutions(current, original));
    out.losses.push_back(current_loss);
    out.captions.push_back(std::move(current));
  }
  return out;
}

namespace {

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

void finalize_budget(AttackResult& r, const ImageTensor& origin, const AttackConfig& config) {
  bool ok = r.adv_image.in_unit_range() &&
            within_budget(linf_distance(r.adv_image, origin), config.eps_v);
  for (double d : r.step_linf) ok = ok && within_budget(d, config.eps_v);
  for (int n : r.substituted_words) ok = ok && n <= config.eps_t;
  r.budget_ok = ok;
}

}  // namespace

AttackResult sadca_attack(const DualEncoder& encoder, const PairedSample& sample,
                          const Dataset& dataset, const AttackConfig& config) {
  config.validate();
  if (sample.captions.empty()) throw InputError("sample '" + sample.id + "' has no captions");
  Rng rng(derive_seed(config.seed, sample.id));
  const ImageTensor& origin = sample.image;

  const ImageTensor positive =
      config.enable_ci ? align_positive_image(encoder, origin, sample.captions, config.eps_v,
                                              config.image_steps, config.alpha)
                       : origin;
  const NegativeBank bank =
      build_negative_bank(dataset, sample, positive,
                          static_cast<std::size_t>(config.num_negatives), config.strategy,
                          encoder, rng);
  const std::vector<Embedding> positive_texts = encode_texts(encoder, sample.captions);
  const Embedding positive_emb = encoder.encode_image(positive);
  const CandidateTable table = candidate_table(dataset);

  AttackResult result;
  result.sample_id = sample.id;
  result.adv_captions = sample.captions;
  result.substituted_words.assign(sample.captions.size(), 0);
  ImageTensor current = origin;
  MomentumState momentum{PixelArray(origin.shape())};

  for (int i = 0; i < config.interaction_steps; ++i) {
    const Embedding adv_emb = encoder.encode_image(current);
    const bool attack_text = i == 0 || config.enable_di;
    TextStepResult text = text_attack_step(
        encoder, result.adv_captions, sample.captions, adv_emb, positive_emb,
        bank.image_embeddings, table, attack_text ? config.eps_t : 0, config.lambda);
    result.adv_captions = std::move(text.captions);
    result.substituted_words = std::move(text.substituted_words);
    result.text_attack_skipped = text.skipped;
    result.loss_trace.text.push_back(mean(text.losses));

    InnerLoopResult inner =
        image_attack_inner(encoder, origin, current, positive_texts, result.adv_captions,
                           bank.text_embeddings, config, rng, std::move(momentum),
                           i * config.image_steps);
    current = std::move(inner.image);
    momentum = std::move(inner.momentum);
    result.loss_trace.image.insert(result.loss_trace.image.end(), inner.losses.begin(),
                                   inner.losses.end());
    result.step_linf.insert(result.step_linf.end(), inner.step_linf.begin(),
                            inner.step_linf.end());
  }
  result.adv_image = std::move(current);
  finalize_budget(result, origin, config);
  return result;
}

AttackResult pgd_baseline(const DualEncoder& encoder, const PairedSample& sample,
                          const AttackConfig& config) {
  config.validate();
  if (sample.captions.empty()) throw InputError("sample '" + sample.id + "' has no captions");
  const ImageTensor& origin = sample.image;
  const std::vector<Embedding> positive_texts = encode_texts(encoder, sample.captions);

  ImageObjective objective;
  objective.positives = positive_texts;
  objective.positive_sum = sum_embeddings(positive_texts, encoder.embed_dim());
  objective.negative_sum = Eigen::VectorXd::Zero(encoder.embed_dim());
  objective.lambda = 0.0;

  AttackResult result;
  result.sample_id = sample.id;
  result.adv_captions = sample.captions;
  result.substituted_words.assign(sample.captions.size(), 0);
  ImageTensor current = origin;
  const int steps = config.interaction_steps * config.image_steps;
  for (int step = 0; step < steps; ++step) {
    StepOutcome o = evaluate_step(encoder, current, objective, {}, step);
    current = sign_step(current, o.grad, config.alpha, -1.0, origin, config.eps_v);
    result.loss_trace.image.push_back(o.loss);
    result.step_linf.push_back(linf_distance(current, origin));
  }
  result.adv_image = std::move(current);
  finalize_budget(result, origin, config);
  return result;
}

}  // namespace sadca
