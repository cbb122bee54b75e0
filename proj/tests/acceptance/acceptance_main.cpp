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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sadca/attack.hpp"
#include "sadca/augmentation.hpp"
#include "sadca/experiments.hpp"
#include "sadca/gradcheck.hpp"
#include "sadca/losses.hpp"
#include "sadca/sampling.hpp"
#include "sadca/serialization.hpp"
#include "sadca/toy_world.hpp"
#include "sadca/tools/cli.hpp"
#include "sadca/training.hpp"
#include "support/hand_trace.hpp"

namespace {

using namespace sadca;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// ---------------------------------------------------------------- 1

Verdict gradient_suite() {
  Verdict v;
  GradCheckOptions o;
  o.num_views = 3;
  const GradCheckReport r = run_gradient_suite(o);
  for (const auto& c : r.cases) {
    v.require(c.ok && c.sampled == 50 && c.passed >= 48,
              c.name + " " + std::to_string(c.passed) + "/" + std::to_string(c.sampled));
  }
  v.require(!r.cases.empty(), "no cases");
  v.require(r.seconds < 30.0, fmt("took %.1f s", r.seconds));
  v.detail += fmt("%.0f cases, %.3f s", static_cast<double>(r.cases.size()), r.seconds);
  return v;
}

// ---------------------------------------------------------------- 2

using Vec = std::vector<double>;

double odot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec ounit(Vec z) {
  const double n = std::sqrt(odot(z, z));
  for (double& x : z) x /= n;
  return z;
}

Embedding emb(const Vec& z) {
  Eigen::VectorXd e(static_cast<Eigen::Index>(z.size()));
  for (std::size_t i = 0; i < z.size(); ++i) e[static_cast<Eigen::Index>(i)] = z[i];
  return Embedding::normalized(e);
}

std::vector<Embedding> embs(const std::vector<Vec>& zs) {
  std::vector<Embedding> out;
  for (const auto& z : zs) out.push_back(emb(z));
  return out;
}

struct LossFixture {
  Vec anchor;
  std::vector<Vec> positives;  // one entry for the text-side losses
  std::vector<Vec> negatives;
};

// Hand-written unit-vector fixtures in 2, 3 and 4 dimensions.
std::vector<LossFixture> loss_fixtures() {
  return {
      {{1, 0}, {{1, 0}, {0, 1}}, {{-1, 0}, {0, -1}}},
      {{0.6, 0.8}, {{1, 0}, {0, 1}}, {{0.8, 0.6}, {-0.6, 0.8}}},
      {{0, 1}, {{0, 1}}, {{1, 0}}},
      {{3, 4}, {{3, 4}}, {}},
      {{1, 1}, {{1, -1}, {-1, 1}, {2, 1}}, {{1, 1}}},
      {{1, 2, 2}, {{2, 1, -2}, {0, 0, 1}}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}},
      {{0, 0, 1}, {{0, 0, 1}}, {{0, 0, -1}, {0, 0, -1}}},
      {{2, -1, 2}, {{1, 1, 1}, {-1, 2, 0}}, {{4, 0, 3}}},
      {{1, 0, 0, 0}, {{0.5, 0.5, 0.5, 0.5}}, {{0, 1, 0, 0}, {0.5, -0.5, 0.5, -0.5}}},
      {{1, 2, 3, 4}, {{4, 3, 2, 1}, {1, -1, 1, -1}}, {{-1, -2, -3, -4}, {0, 0, 0, 1}}},
  };
}

Verdict loss_oracle() {
  Verdict v;
  int checks = 0;
  auto near = [&](double a, double b, const std::string& what) {
    ++checks;
    v.require(std::abs(a - b) <= 1e-9, what + fmt(" %.12g vs %.12g", a, b));
  };
  const auto fixtures = loss_fixtures();
  for (std::size_t f = 0; f < fixtures.size(); ++f) {
    const auto& fx = fixtures[f];
    const std::string tag = "fixture " + std::to_string(f);
    const Vec a = ounit(fx.anchor);
    double pos_sum = 0.0;
    double neg_sum = 0.0;
    for (const auto& p : fx.positives) pos_sum += odot(a, ounit(p));
    for (const auto& n : fx.negatives) neg_sum += odot(a, ounit(n));
    const double text_pos = odot(a, ounit(fx.positives.front()));
    const auto E = emb(fx.anchor);
    const auto P = embs(fx.positives);
    const auto N = embs(fx.negatives);
    std::vector<double> totals;
    for (double lambda : {0.0, 0.2, 1.0}) {
      const double image_expect = pos_sum - lambda * neg_sum;
      const double text_expect = text_pos - lambda * neg_sum;
      const auto ci = contrastive_image_loss(E, P, N, lambda);
      const auto di = dynamic_image_loss(E, P, N, lambda);
      const auto ct = contrastive_text_loss(E, P.front(), N, lambda);
      const auto dt = dynamic_text_loss(E, P.front(), N, lambda);
      near(ci.total, image_expect, tag + " image");
      near(di.total, image_expect, tag + " dynamic image");
      near(ct.total, text_expect, tag + " text");
      near(dt.total, text_expect, tag + " dynamic text");
      near(ci.positive_term, pos_sum, tag + " positive term");
      near(ci.negative_term, neg_sum, tag + " negative term");
      totals.push_back(ci.total);
    }
    // total(lambda) is affine in lambda with slope -negative_term.
    near(totals[1], totals[0] - 0.2 * neg_sum, tag + " linear 0.2");
    near(totals[2], totals[0] - neg_sum, tag + " linear 1");
    near(totals[1] - totals[0], 0.2 * (totals[2] - totals[0]), tag + " collinear");
  }
  v.detail += std::to_string(fixtures.size()) + " fixtures, " + std::to_string(checks) + " checks";
  return v;
}

// ---------------------------------------------------------------- 3

Verdict budget_invariants() {
  Verdict v;
  ToyWorldOptions o;
  o.num_samples = 16;
  o.seed = 31;
  const Dataset data = make_toy_dataset(o);
  const ToyDualEncoder model = build_model(ModelSpec{"budget", 5, 32, 16, 200}, data);
  std::size_t steps = 0;
  std::size_t captions = 0;
  std::size_t bad = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const PairedSample& s = data.samples[seed % data.size()];
    AttackConfig c;
    c.seed = seed;
    c.num_negatives = 8;  // 15 candidates per anchor
    c.interaction_steps = 2 + static_cast<int>(seed % 3);
    c.image_steps = 5;
    c.num_views = 4;
    c.strategy = static_cast<SelectionStrategy>(seed % 4);
    const AttackResult r = sadca_attack(model, s, data, c);
    if (r.step_linf.size() != static_cast<std::size_t>(c.interaction_steps * c.image_steps)) ++bad;
    for (double d : r.step_linf) {
      ++steps;
      if (!(d <= c.eps_v)) ++bad;
    }
    const auto adv = r.adv_image.pixels();
    const auto orig = s.image.pixels();
    for (std::size_t i = 0; i < adv.size(); ++i) {
      if (!(adv[i] >= 0.0 && adv[i] <= 1.0 && std::abs(adv[i] - orig[i]) <= c.eps_v)) ++bad;
    }
    if (!r.budget_ok || r.adv_captions.size() != s.captions.size()) ++bad;
    for (std::size_t m = 0; m < s.captions.size() && m < r.adv_captions.size(); ++m) {
      ++captions;
      const auto& a = r.adv_captions[m].tokens;
      const auto& b = s.captions[m].tokens;
      if (a.size() != b.size()) {
        ++bad;
        continue;
      }
      int changed = 0;
      for (std::size_t t = 0; t < a.size(); ++t) changed += a[t] != b[t];
      if (changed > c.eps_t) ++bad;
    }
  }
  v.require(bad == 0, std::to_string(bad) + " violations");
  v.detail += std::to_string(steps) + " image steps, " + std::to_string(captions) + " captions";
  return v;
}

// ---------------------------------------------------------------- 4

Verdict hand_trace() {
  Verdict v;
  const testing::HandWorld w;
  const testing::HandTrace t = testing::trace_one_step();
  const AttackConfig c = w.config();
  const PairedSample& s = w.dataset.samples[0];
  const AttackResult r = sadca_attack(w.encoder, s, w.dataset, c);

  v.require(r.adv_captions.size() == 1 && r.adv_captions[0].tokens == t.adversarial_caption,
            "substitution choice");
  v.require(r.adv_image.pixels()[0] == t.adversarial_image[0] &&
                r.adv_image.pixels()[1] == t.adversarial_image[1],
            "adversarial pixels");
  v.require(r.loss_trace.image.size() == 1 && std::abs(r.loss_trace.image[0] - t.image_loss) < 1e-12,
            "image loss");
  v.require(r.loss_trace.text.size() == 1 && std::abs(r.loss_trace.text[0] - t.text_loss) < 1e-12,
            "text loss");

  const ImageTensor vp = align_positive_image(w.encoder, s.image, s.captions, c.eps_v, 1, c.alpha);
  v.require(vp.pixels()[0] == t.positive_image[0] && vp.pixels()[1] == t.positive_image[1],
            "positive image");

  // Replay the image step alone to read the momentum.
  const std::vector<Embedding> pos{w.encoder.encode_text(s.captions[0])};
  const std::vector<Embedding> neg{w.encoder.encode_text(w.dataset.samples[1].captions[0])};
  const std::vector<TokenSeq> adv{TokenSeq{t.adversarial_caption, ""}};
  Rng rng(0);
  const InnerLoopResult inner =
      image_attack_inner(w.encoder, s.image, s.image, pos, adv, neg, c, rng,
                         MomentumState{PixelArray(s.image.shape())});
  const auto& g = inner.momentum.g.values;
  v.require(std::abs(g[0] - t.momentum[0]) < 1e-12 && std::abs(g[1] - t.momentum[1]) < 1e-12,
            fmt("momentum (%.6f, %.6f) vs (%.6f, %.6f)", g[0], g[1], t.momentum[0], t.momentum[1]));
  v.require(std::abs(std::abs(g[0]) + std::abs(g[1]) - 1.0) < 1e-12, "momentum not unit L1");
  v.require(inner.image == r.adv_image, "inner image differs from the full attack");
  v.detail += fmt("momentum (%.4f, %.4f)", t.momentum[0], t.momentum[1]);
  return v;
}

// ---------------------------------------------------------------- 5, 6

struct SeedCells {
  std::vector<RetrievalReport> sadca;
  std::vector<RetrievalReport> pgd;
};

struct Efficacy {
  std::vector<SeedCells> seeds;
  double seconds = 0.0;
  double held_out_training_seconds = 0.0;  // targets that are not surrogates
};

double at1(const std::map<int, double>& m) {
  auto it = m.find(1);
  return it == m.end() ? 0.0 : it->second;
}

Efficacy run_efficacy() {
  const auto t0 = Clock::now();
  Efficacy e;
  const ModelRoster roster = default_roster();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ToyWorldOptions o;
    o.num_samples = 64;
    o.seed = seed;
    const Dataset data = make_toy_dataset(o);
    std::vector<NamedModel> surrogates;
    std::vector<NamedModel> targets;
    for (const auto& spec : roster.surrogates) {
      surrogates.push_back({spec.name, std::make_shared<ToyDualEncoder>(build_model(spec, data))});
    }
    for (const auto& spec : roster.targets) {
      auto same = std::find_if(surrogates.begin(), surrogates.end(),
                               [&](const NamedModel& m) { return m.name == spec.name; });
      if (same != surrogates.end()) {
        targets.push_back(*same);
        continue;
      }
      const auto t_fit = Clock::now();
      targets.push_back({spec.name, std::make_shared<ToyDualEncoder>(build_model(spec, data))});
      e.held_out_training_seconds += seconds_since(t_fit);
    }
    AttackConfig c;  // published settings
    c.seed = seed;
    SeedCells cells;
    cells.sadca = transfer_matrix(surrogates, targets, data, c, AttackMethod::kSadca);
    cells.pgd = transfer_matrix(surrogates, targets, data, c, AttackMethod::kPgd);
    e.seeds.push_back(std::move(cells));
  }
  e.seconds = seconds_since(t0);
  return e;
}

struct Means {
  double tr = 0.0;
  double combined = 0.0;
  int cells = 0;
};

Means mean_of(const Efficacy& e, bool sadca, const std::function<bool(const RetrievalReport&)>& keep) {
  Means m;
  for (const auto& s : e.seeds) {
    for (const auto& r : sadca ? s.sadca : s.pgd) {
      if (!keep(r)) continue;
      m.tr += at1(r.tr_asr);
      m.combined += 0.5 * (at1(r.tr_asr) + at1(r.ir_asr));
      ++m.cells;
    }
  }
  if (m.cells > 0) {
    m.tr /= m.cells;
    m.combined /= m.cells;
  }
  return m;
}

bool is_white(const RetrievalReport& r) { return r.white_box(); }

// Transfer cells whose target is neither surrogate.
bool is_held_out(const RetrievalReport& r) {
  return !r.white_box() && r.target != "toy-a" && r.target != "toy-b";
}

Verdict white_box(const Efficacy& e) {
  Verdict v;
  const Means s = mean_of(e, true, is_white);
  const Means p = mean_of(e, false, is_white);
  v.require(s.tr >= 90.0, fmt("SADCA TR@1 %.2f < 90", s.tr));
  v.require(s.combined >= p.combined,
            fmt("SADCA ASR@1 %.2f < PGD %.2f", s.combined, p.combined));
  // Fitting the two held-out targets only serves the transfer criterion.
  const double own = e.seconds - e.held_out_training_seconds;
  v.require(own < 600.0, fmt("took %.0f s", own));
  // Seed-averaged white-box cell against every transfer cell in its row.
  for (const char* sur : {"toy-a", "toy-b"}) {
    for (const char* tgt : {"toy-a", "toy-b", "toy-c", "toy-d"}) {
      if (std::string(sur) == tgt) continue;
      const auto cell = [&](const char* t) {
        return mean_of(e, true, [&](const RetrievalReport& r) {
          return r.surrogate == sur && r.target == t;
        });
      };
      const Means w = cell(sur);
      const Means x = cell(tgt);
      v.require(w.tr >= x.tr && w.combined >= x.combined,
                std::string(sur) + " white-box below " + tgt);
    }
  }
  v.detail += fmt("TR@1 sadca %.2f pgd %.2f; ASR@1 (TR+IR)/2 sadca %.2f pgd %.2f", s.tr, p.tr,
                  s.combined, p.combined);
  v.detail += fmt("; %.0f s (%.0f s with held-out targets)", own, e.seconds);
  return v;
}

Verdict transfer(const Efficacy& e) {
  Verdict v;
  const Means s = mean_of(e, true, is_held_out);
  const Means p = mean_of(e, false, is_held_out);
  const Means s_all = mean_of(e, true, [](const RetrievalReport& r) { return !r.white_box(); });
  const Means p_all = mean_of(e, false, [](const RetrievalReport& r) { return !r.white_box(); });
  v.require(s.cells > 0, "no transfer cells");
  v.require(s.combined >= p.combined,
            fmt("SADCA ASR@1 %.2f < PGD %.2f", s.combined, p.combined));
  v.detail += fmt("held-out ASR@1 sadca %.2f pgd %.2f, TR@1 sadca %.2f pgd %.2f", s.combined,
                  p.combined, s.tr, p.tr);
  v.detail += fmt("; all transfer cells TR@1 sadca %.2f pgd %.2f", s_all.tr, p_all.tr);
  return v;
}

// ---------------------------------------------------------------- 7

Verdict ablation_coherence() {
  Verdict v;
  ToyWorldOptions o;
  o.num_samples = 24;
  o.seed = 12;
  const Dataset data = make_toy_dataset(o);
  const std::vector<NamedModel> models{
      {"s", std::make_shared<ToyDualEncoder>(build_model(ModelSpec{"s", 3, 32, 16, 200}, data))}};
  AttackConfig c;
  c.mu = 0.0;
  c.lambda = 0.0;
  c.interaction_steps = 2;
  c.image_steps = 4;
  c.num_negatives = 10;
  c.num_views = 4;
  c.seed = 8;
  const Experiment e = ablate_modules(models[0], models, data, c);
  const auto full = attack_dataset(*models[0].encoder, data, c, AttackMethod::kSadca);
  const auto pgd = attack_dataset(*models[0].encoder, data, c, AttackMethod::kPgd);
  v.require(e.rows.size() == 8, "expected 8 rows");
  if (e.rows.size() != 8) return v;
  const auto& on = e.rows.front();
  const auto& off = e.rows.back();
  v.require(on.config.enable_ci && on.config.enable_di && on.config.enable_sa, "first row not full");
  v.require(!off.config.enable_ci && !off.config.enable_di && !off.config.enable_sa,
            "last row not all-off");
  // With DI off the text step still runs once, so the all-off row differs
  // from PGD only in its captions; the image side must match bit-for-bit.
  std::size_t same_off = 0;
  std::size_t same_on = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    same_off += off.results[i].adv_image == pgd[i].adv_image &&
                off.results[i].step_linf == pgd[i].step_linf &&
                off.results[i].loss_trace.image == pgd[i].loss_trace.image;
    same_on += on.results[i].adv_image == full[i].adv_image &&
               on.results[i].adv_captions == full[i].adv_captions &&
               on.results[i].loss_trace == full[i].loss_trace &&
               on.results[i].step_linf == full[i].step_linf;
  }
  v.require(same_off == data.size(), std::to_string(same_off) + " all-off rows match PGD");
  v.require(same_on == data.size(), std::to_string(same_on) + " full rows match attack");
  const RetrievalReport pgd_report = evaluate_attack(*models[0].encoder, data, pgd);
  v.require(off.reports.size() == 1 && off.reports[0].tr_asr == pgd_report.tr_asr,
            "all-off TR differs from PGD");
  v.detail += std::to_string(data.size()) + " samples bit-identical";
  return v;
}

// ---------------------------------------------------------------- 8

Verdict augmentation_invariants() {
  Verdict v;
  const ImageShape shape{20, 24, 3};
  Rng pix(5);
  std::vector<double> px(shape.size());
  for (double& x : px) x = pix.uniform(0.0, 1.0);
  const ImageTensor image(shape, px);
  const double plane = static_cast<double>(shape.plane());

  Rng a(77);
  Rng b(77);
  const auto views = sample_local_views(shape, 1000, a);
  const auto again = sample_local_views(shape, 1000, b);
  std::size_t bad_area = 0, bad_shape = 0, bad_range = 0, bad_repro = 0, bad_flip = 0;
  for (std::size_t i = 0; i < views.size(); ++i) {
    const CropSpec& crop = views[i].crop();
    // Each side is rounded to the nearest pixel, so the area can drift by
    // at most one pixel row and column.
    const double lo = (crop.height - 0.5) * (crop.width - 0.5) / plane;
    const double hi = (crop.height + 0.5) * (crop.width + 0.5) / plane;
    const bool ratio_ok = crop.ratio >= 0.4 && crop.ratio <= 0.8;
    const bool area_ok = hi >= 0.4 && lo <= 0.8 && lo <= crop.ratio && crop.ratio <= hi;
    const bool inside = crop.top >= 0 && crop.left >= 0 && crop.top + crop.height <= shape.height &&
                        crop.left + crop.width <= shape.width;
    bad_area += !(ratio_ok && area_ok && inside);
    const ImageTensor out = views[i].forward(image);
    bad_shape += !(out.shape() == shape);
    bad_range += std::any_of(out.pixels().begin(), out.pixels().end(),
                             [](double x) { return !(x >= 0.0 && x <= 1.0); });
    bad_repro += !(views[i] == again[i]) || !(out == again[i].forward(image));
    const ImageTensor once = apply_augmentation(out, AugmentationOp::flip());
    bad_flip += !(apply_augmentation(once, AugmentationOp::flip()) == out);
  }
  v.require(bad_area == 0, std::to_string(bad_area) + " area");
  v.require(bad_shape == 0, std::to_string(bad_shape) + " shape");
  v.require(bad_range == 0, std::to_string(bad_range) + " range");
  v.require(bad_repro == 0, std::to_string(bad_repro) + " reproducibility");
  v.require(bad_flip == 0, std::to_string(bad_flip) + " flip");
  v.detail += "1000 views";
  return v;
}

// ---------------------------------------------------------------- 9

Verdict negative_strategies() {
  Verdict v;
  Rng data_rng(29);
  int trials = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 20;
    std::vector<std::string> ids;
    std::vector<double> sim;
    for (std::size_t i = 0; i < n; ++i) {
      ids.push_back("n" + std::to_string(10 + (i * 13) % n));
      sim.push_back(std::round(data_rng.uniform(-1.0, 1.0) * 5.0) / 5.0);
    }
    // Reference ranking by exhaustive pairwise comparison.
    std::vector<std::size_t> order;
    std::vector<bool> used(n, false);
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t best = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        if (best == n || sim[i] > sim[best] || (sim[i] == sim[best] && ids[i] < ids[best])) best = i;
      }
      used[best] = true;
      order.push_back(best);
    }
    for (std::size_t k = 1; k <= n; ++k) {
      ++trials;
      Rng rng(3);
      const auto most = select_negatives(ids, sim, k, SelectionStrategy::kMostSimilar, rng);
      const auto least = select_negatives(ids, sim, k, SelectionStrategy::kLeastSimilar, rng);
      const auto mid = select_negatives(ids, sim, k, SelectionStrategy::kIntermediate, rng);
      const std::vector<std::size_t> top(order.begin(), order.begin() + static_cast<long>(k));
      const std::vector<std::size_t> bottom(order.end() - static_cast<long>(k), order.end());
      const std::size_t start = (n - k) / 2;
      const std::vector<std::size_t> centre(order.begin() + static_cast<long>(start),
                                            order.begin() + static_cast<long>(start + k));
      v.require(most == top, "most_similar k=" + std::to_string(k));
      v.require(std::set<std::size_t>(least.begin(), least.end()) ==
                    std::set<std::size_t>(bottom.begin(), bottom.end()),
                "least_similar k=" + std::to_string(k));
      v.require(mid == centre, "intermediate k=" + std::to_string(k));
    }
  }

  ToyWorldOptions o;
  o.num_samples = 20;
  o.seed = 14;
  const Dataset data = make_toy_dataset(o);
  const std::vector<NamedModel> models{
      {"s", std::make_shared<ToyDualEncoder>(build_model(ModelSpec{"s", 6, 32, 16, 200}, data))}};
  AttackConfig c;  // published settings, bank sized for a 19-candidate pool
  c.num_negatives = 8;
  const Experiment e = ablate_negatives(models[0], models, data, c);
  const std::vector<std::string> labels{"(1) most_similar", "(2) least_similar",
                                        "(3) intermediate", "(4) random"};
  v.require(e.rows.size() == 4, "report rows");
  for (std::size_t i = 0; i < e.rows.size() && i < labels.size(); ++i) {
    v.require(e.rows[i].label == labels[i], "label " + e.rows[i].label);
    v.require(e.rows[i].reports.size() == 1, "row without report");
  }
  const std::string table = format_experiment_table(e);
  std::cout << table;
  v.detail += std::to_string(trials) + " oracle cases";
  return v;
}

// ---------------------------------------------------------------- 10

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict determinism() {
  Verdict v;
  const fs::path root = fs::temp_directory_path() / "sadca_acceptance_eval";
  fs::remove_all(root);
  std::ostringstream sink;
  auto cli = [&](std::vector<std::string> args) {
    return tools::run_cli(args, sink, sink);
  };
  v.require(cli({"make-toy", "--out", (root / "data").string(), "--seed", "3", "--samples", "32"}) == 0,
            "make-toy failed");
  std::vector<std::string> runs;
  for (const char* name : {"a", "b"}) {
    const fs::path out = root / name;
    const int code = cli({"eval", "--manifest", (root / "data" / "manifest.jsonl").string(), "--out",
                          out.string(), "--seed", "5", "--interaction-steps", "2",
                          "--image-steps", "5", "--num-views", "5", "--num-negatives", "10"});
    v.require(code == 0, std::string("eval ") + name + " failed");
    runs.push_back(slurp(out / "results.json"));
  }
  v.require(!runs[0].empty() && runs[0] == runs[1], "results.json differs");
  v.detail += std::to_string(runs[0].size()) + " bytes identical";
  fs::remove_all(root);
  if (!v.pass) std::cout << sink.str();
  return v;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Verdict()>& run) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failures += !v.pass;
    std::string detail = v.detail;
    for (const auto& f : v.failures) detail += "; " + f;
    std::printf("%s criterion %d: %s (%s) [%.1f s]\n", v.pass ? "PASS" : "FAIL", id, name,
                detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  };

  report(1, "gradient suite", gradient_suite);
  report(2, "loss oracle", loss_oracle);
  report(3, "budget invariants", budget_invariants);
  report(4, "single-step hand trace", hand_trace);
  Efficacy efficacy;
  std::string efficacy_error;
  try {
    efficacy = run_efficacy();
  } catch (const std::exception& e) {
    efficacy_error = e.what();
  }
  auto guarded = [&](Verdict (*f)(const Efficacy&)) {
    return [&, f] {
      if (!efficacy_error.empty()) throw std::runtime_error(efficacy_error);
      return f(efficacy);
    };
  };
  report(5, "white-box efficacy", guarded(white_box));
  report(6, "transfer direction", guarded(transfer));
  report(7, "ablation coherence", ablation_coherence);
  report(8, "augmentation invariants", augmentation_invariants);
  report(9, "negative strategies", negative_strategies);
  report(10, "eval determinism", determinism);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
