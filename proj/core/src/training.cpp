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

#include "sadca/training.hpp"

#include <cmath>
#include <vector>

#include "sadca/augmentation.hpp"
#include "sadca/errors.hpp"

namespace sadca {

namespace {

template <typename M>
struct AdamSlot {
  M* param;
  M grad, m, v;

  explicit AdamSlot(M& p)
      : param(&p),
        grad(M::Zero(p.rows(), p.cols())),
        m(M::Zero(p.rows(), p.cols())),
        v(M::Zero(p.rows(), p.cols())) {}

  void step(double lr, int t) {
    constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
    m = b1 * m + (1.0 - b1) * grad;
    v = b2 * v + (1.0 - b2) * grad.cwiseProduct(grad);
    const double c1 = 1.0 - std::pow(b1, t);
    const double c2 = 1.0 - std::pow(b2, t);
    *param -= (lr * (m / c1).array() / ((v / c2).array().sqrt() + eps)).matrix();
  }
};

// Column-wise normalization backward.
Eigen::MatrixXd normalize_columns_backward(const Eigen::MatrixXd& unit,
                                           const Eigen::VectorXd& norms,
                                           const Eigen::MatrixXd& upstream) {
  Eigen::MatrixXd out(unit.rows(), unit.cols());
  for (Eigen::Index c = 0; c < unit.cols(); ++c) {
    out.col(c) = normalize_backward(unit.col(c), norms[c], upstream.col(c));
  }
  return out;
}

struct Branch {
  Eigen::MatrixXd hidden;  // tanh activations, hidden x n
  Eigen::MatrixXd unit;    // normalized outputs, d x n
  Eigen::VectorXd norms;
};

Branch forward(const Eigen::MatrixXd& w1, const Eigen::VectorXd& b1, const Eigen::MatrixXd& w2,
               const Eigen::VectorXd& b2, const Eigen::MatrixXd& input) {
  Branch br;
  br.hidden = ((w1 * input).colwise() + b1).array().tanh();
  Eigen::MatrixXd z = (w2 * br.hidden).colwise() + b2;
  br.norms = z.colwise().norm().transpose();
  br.unit = z.array().rowwise() / br.norms.transpose().array();
  return br;
}

double log_sum_exp(const Eigen::VectorXd& v) {
  const double m = v.maxCoeff();
  return m + std::log((v.array() - m).exp().sum());
}

}  // namespace

TrainingSummary fit_contrastive(EncoderParams& params, const Dataset& dataset,
                                const TrainingOptions& options) {
  if (dataset.samples.empty()) throw InputError("cannot fit on an empty dataset");
  if (dataset.vocab.size() > params.vocab_size) {
    throw ConfigError("dataset vocabulary larger than the encoder's");
  }
  const auto n = static_cast<Eigen::Index>(dataset.size());
  const auto dim = static_cast<Eigen::Index>(params.image_shape.size());

  Eigen::MatrixXd images(dim, n);
  std::vector<const TokenSeq*> captions;
  std::vector<Eigen::Index> owner;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = dataset.samples[static_cast<std::size_t>(i)];
    if (s.image.shape() != params.image_shape) throw ConfigError("dataset image shape mismatch");
    auto px = s.image.pixels();
    images.col(i) = Eigen::Map<const Eigen::VectorXd>(px.data(), dim);
    for (const auto& c : s.captions) {
      captions.push_back(&c);
      owner.push_back(i);
    }
  }
  const auto nc = static_cast<Eigen::Index>(captions.size());

  AdamSlot<Eigen::MatrixXd> iw1(params.image_w1), iw2(params.image_w2), table(params.token_table),
      tw1(params.text_w1), tw2(params.text_w2);
  AdamSlot<Eigen::VectorXd> ib1(params.image_b1), ib2(params.image_b2), tb1(params.text_b1),
      tb2(params.text_b2);

  if (options.view_fraction < 0.0 || options.view_fraction > 1.0) {
    throw ConfigError("view_fraction must lie in [0, 1]");
  }
  Rng rng(derive_seed(options.seed, "fit-views"));
  Eigen::MatrixXd batch = images;

  TrainingSummary summary;
  const double inv_t = 1.0 / options.temperature;
  for (int epoch = 0; epoch <= options.epochs; ++epoch) {
    Eigen::MatrixXd bags = Eigen::MatrixXd::Zero(params.hidden, nc);
    for (Eigen::Index c = 0; c < nc; ++c) {
      for (TokenId t : captions[static_cast<std::size_t>(c)]->tokens) {
        bags.col(c) += params.token_table.row(t).transpose();
      }
      bags.col(c) /= static_cast<double>(captions[static_cast<std::size_t>(c)]->tokens.size());
    }
    if (options.view_fraction > 0.0) {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (rng.uniform01() >= options.view_fraction) {
          batch.col(i) = images.col(i);
          continue;
        }
        const auto& src = dataset.samples[static_cast<std::size_t>(i)].image;
        const LocalView view = sample_local_views(src.shape(), 1, rng).front();
        const ImageTensor augmented = view.forward(src);
        batch.col(i) = Eigen::Map<const Eigen::VectorXd>(augmented.pixels().data(), dim);
      }
    }
    Branch img = forward(params.image_w1, params.image_b1, params.image_w2, params.image_b2, batch);
    Branch txt = forward(params.text_w1, params.text_b1, params.text_w2, params.text_b2, bags);
    Eigen::MatrixXd logits = img.unit.transpose() * txt.unit * inv_t;  // n x nc

    // Image -> text: every caption of the sample is a positive.
    double loss = 0.0;
    Eigen::MatrixXd dlogits = Eigen::MatrixXd::Zero(n, nc);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::VectorXd row = logits.row(i).transpose();
      const double all = log_sum_exp(row);
      Eigen::VectorXd pos_mask = Eigen::VectorXd::Zero(nc);
      for (Eigen::Index c = 0; c < nc; ++c) {
        if (owner[static_cast<std::size_t>(c)] == i) pos_mask[c] = 1.0;
      }
      Eigen::VectorXd masked = row;
      for (Eigen::Index c = 0; c < nc; ++c) {
        if (pos_mask[c] == 0.0) masked[c] = -std::numeric_limits<double>::infinity();
      }
      const double pos = log_sum_exp(masked);
      loss += 0.5 * (all - pos) / static_cast<double>(n);
      Eigen::VectorXd p_all = (row.array() - all).exp();
      Eigen::VectorXd p_pos = (masked.array() - pos).exp();
      dlogits.row(i) += 0.5 * (p_all - p_pos).transpose() / static_cast<double>(n);
    }
    // Text -> image: the owning sample is the single positive.
    for (Eigen::Index c = 0; c < nc; ++c) {
      Eigen::VectorXd col = logits.col(c);
      const double all = log_sum_exp(col);
      const Eigen::Index o = owner[static_cast<std::size_t>(c)];
      loss += 0.5 * (all - col[o]) / static_cast<double>(nc);
      Eigen::VectorXd p = (col.array() - all).exp();
      p[o] -= 1.0;
      dlogits.col(c) += 0.5 * p / static_cast<double>(nc);
    }

    if (!std::isfinite(loss)) throw NumericalError("non-finite training loss", epoch);
    if (epoch == 0) summary.initial_loss = loss;
    summary.final_loss = loss;
    if (epoch == options.epochs) break;

    Eigen::MatrixXd d_img_unit = txt.unit * dlogits.transpose() * inv_t;  // d x n
    Eigen::MatrixXd d_txt_unit = img.unit * dlogits * inv_t;              // d x nc

    Eigen::MatrixXd dz = normalize_columns_backward(img.unit, img.norms, d_img_unit);
    iw2.grad = dz * img.hidden.transpose();
    ib2.grad = dz.rowwise().sum();
    Eigen::MatrixXd da = (params.image_w2.transpose() * dz).array() * (1.0 - img.hidden.array().square());
    iw1.grad = da * batch.transpose();
    ib1.grad = da.rowwise().sum();

    Eigen::MatrixXd dzt = normalize_columns_backward(txt.unit, txt.norms, d_txt_unit);
    tw2.grad = dzt * txt.hidden.transpose();
    tb2.grad = dzt.rowwise().sum();
    Eigen::MatrixXd dat = (params.text_w2.transpose() * dzt).array() * (1.0 - txt.hidden.array().square());
    tw1.grad = dat * bags.transpose();
    tb1.grad = dat.rowwise().sum();
    Eigen::MatrixXd dbags = params.text_w1.transpose() * dat;
    table.grad.setZero();
    for (Eigen::Index c = 0; c < nc; ++c) {
      const auto& toks = captions[static_cast<std::size_t>(c)]->tokens;
      const double w = 1.0 / static_cast<double>(toks.size());
      for (TokenId t : toks) table.grad.row(t) += w * dbags.col(c).transpose();
    }

    const int t = epoch + 1;
    iw1.step(options.learning_rate, t);
    ib1.step(options.learning_rate, t);
    iw2.step(options.learning_rate, t);
    ib2.step(options.learning_rate, t);
    table.step(options.learning_rate, t);
    tw1.step(options.learning_rate, t);
    tb1.step(options.learning_rate, t);
    tw2.step(options.learning_rate, t);
    tb2.step(options.learning_rate, t);
  }
  return summary;
}

ToyDualEncoder build_model(const ModelSpec& spec, const Dataset& dataset) {
  if (dataset.samples.empty()) throw InputError("cannot build a model for an empty dataset");
  EncoderParams params = init_toy_encoders(spec.seed, dataset.samples.front().image.shape(),
                                           dataset.vocab.size(), spec.hidden, spec.embed_dim);
  if (spec.epochs > 0) {
    TrainingOptions opts;
    opts.epochs = spec.epochs;
    opts.view_fraction = spec.view_fraction;
    opts.seed = spec.seed;
    fit_contrastive(params, dataset, opts);
  }
  return ToyDualEncoder(std::move(params), spec.name);
}

}  // namespace sadca
