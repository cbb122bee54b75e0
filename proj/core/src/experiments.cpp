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

#include "sadca/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "sadca/errors.hpp"

namespace sadca {

std::string_view to_string(AttackMethod method) {
  return method == AttackMethod::kSadca ? "sadca" : "pgd";
}

std::vector<AttackResult> attack_dataset(const DualEncoder& encoder, const Dataset& dataset,
                                         const AttackConfig& config, AttackMethod method,
                                         int workers) {
  std::vector<AttackResult> results(dataset.size());
  auto run_one = [&](std::size_t i) {
    const auto& s = dataset.samples[i];
    results[i] = method == AttackMethod::kSadca ? sadca_attack(encoder, s, dataset, config)
                                                : pgd_baseline(encoder, s, config);
  };

  const std::size_t n_threads =
      std::min<std::size_t>(dataset.size(), static_cast<std::size_t>(std::max(1, workers)));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < dataset.size(); ++i) run_one(i);
    return results;
  }

  // Each slot is written by exactly one worker, so output order is fixed.
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < dataset.size(); i = next++) {
          try {
            run_one(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

namespace {

std::vector<RetrievalReport> score(const std::string& surrogate, AttackMethod method,
                                   std::span<const NamedModel> targets, const Dataset& dataset,
                                   std::span<const AttackResult> results,
                                   const RunOptions& options) {
  std::vector<RetrievalReport> out;
  for (const auto& target : targets) {
    RetrievalReport r = evaluate_attack(*target.encoder, dataset, results, options.denominator);
    r.surrogate = surrogate;
    r.target = target.name;
    r.method = std::string(to_string(method));
    out.push_back(std::move(r));
  }
  return out;
}

ExperimentRow run_row(std::string label, const NamedModel& surrogate,
                      std::span<const NamedModel> targets, const Dataset& dataset,
                      const AttackConfig& config, AttackMethod method, const RunOptions& options) {
  ExperimentRow row;
  row.label = std::move(label);
  row.config = config;
  row.method = method;
  row.results = attack_dataset(*surrogate.encoder, dataset, config, method, options.workers);
  row.reports = score(surrogate.name, method, targets, dataset, row.results, options);
  return row;
}

}  // namespace

std::vector<RetrievalReport> transfer_matrix(std::span<const NamedModel> surrogates,
                                             std::span<const NamedModel> targets,
                                             const Dataset& dataset, const AttackConfig& config,
                                             AttackMethod method, const RunOptions& options) {
  if (surrogates.empty() || targets.empty()) {
    throw InputError("transfer matrix needs at least one surrogate and one target");
  }
  std::vector<RetrievalReport> out;
  for (const auto& s : surrogates) {
    const auto results = attack_dataset(*s.encoder, dataset, config, method, options.workers);
    for (auto& r : score(s.name, method, targets, dataset, results, options)) {
      out.push_back(std::move(r));
    }
  }
  return out;
}

Experiment ablate_negatives(const NamedModel& surrogate, std::span<const NamedModel> targets,
                            const Dataset& dataset, const AttackConfig& base,
                            const RunOptions& options) {
  Experiment e{"ablate-negatives", {}};
  const SelectionStrategy order[] = {SelectionStrategy::kMostSimilar,
                                     SelectionStrategy::kLeastSimilar,
                                     SelectionStrategy::kIntermediate, SelectionStrategy::kRandom};
  int number = 1;
  for (SelectionStrategy s : order) {
    AttackConfig c = base;
    c.strategy = s;
    e.rows.push_back(run_row("(" + std::to_string(number++) + ") " + std::string(to_string(s)),
                             surrogate, targets, dataset, c, AttackMethod::kSadca, options));
  }
  return e;
}

Experiment ablate_modules(const NamedModel& surrogate, std::span<const NamedModel> targets,
                          const Dataset& dataset, const AttackConfig& base,
                          const RunOptions& options) {
  Experiment e{"ablate-modules", {}};
  for (int mask = 7; mask >= 0; --mask) {
    AttackConfig c = base;
    c.enable_ci = (mask & 4) != 0;
    c.enable_di = (mask & 2) != 0;
    c.enable_sa = (mask & 1) != 0;
    std::string label;
    if (c.enable_ci) label += "CI";
    if (c.enable_di) label += label.empty() ? "DI" : "+DI";
    if (c.enable_sa) label += label.empty() ? "SA" : "+SA";
    if (label.empty()) label = "none";
    e.rows.push_back(run_row(label, surrogate, targets, dataset, c, AttackMethod::kSadca, options));
  }
  return e;
}

std::string canonical_sweep_param(std::string_view name) {
  if (name == "I" || name == "interaction_steps") return "interaction_steps";
  if (name == "S" || name == "num_views") return "num_views";
  if (name == "K" || name == "num_negatives") return "num_negatives";
  if (name == "lambda" || name == "λ") return "lambda";
  throw ConfigError("sweep parameter must be one of I, S, K, lambda (got '" + std::string(name) +
                    "')");
}

AttackConfig with_param(AttackConfig config, std::string_view param, double value) {
  const std::string p = canonical_sweep_param(param);
  if (p == "lambda") {
    config.lambda = value;
    return config;
  }
  if (value != std::floor(value)) {
    throw ConfigError(p + " takes integer values (got " + std::to_string(value) + ")");
  }
  const int v = static_cast<int>(value);
  if (p == "interaction_steps") config.interaction_steps = v;
  else if (p == "num_views") config.num_views = v;
  else config.num_negatives = v;
  return config;
}

Experiment sweep(const NamedModel& surrogate, std::span<const NamedModel> targets,
                 const Dataset& dataset, const AttackConfig& base, std::string_view param,
                 std::span<const double> values, const RunOptions& options) {
  const std::string p = canonical_sweep_param(param);
  Experiment e{"sweep-" + p, {}};
  for (double v : values) {
    AttackConfig c = with_param(base, p, v);
    c.validate();
    char label[64];
    std::snprintf(label, sizeof(label), "%s=%g", p.c_str(), v);
    e.rows.push_back(run_row(label, surrogate, targets, dataset, c, AttackMethod::kSadca, options));
  }
  return e;
}

namespace {

std::string cell(const std::map<int, double>& m, int k) {
  auto it = m.find(k);
  if (it == m.end()) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", it->second);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string format_report_table(std::span<const RetrievalReport> reports,
                                std::string_view label_header,
                                std::span<const std::string> labels) {
  std::vector<std::string> header;
  if (!label_header.empty()) header.emplace_back(label_header);
  for (const char* h : {"surrogate", "target", "method", "box", "TR@1", "TR@5", "TR@10", "IR@1",
                        "IR@5", "IR@10"}) {
    header.emplace_back(h);
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    std::vector<std::string> row;
    if (!label_header.empty()) row.push_back(i < labels.size() ? labels[i] : "");
    row.insert(row.end(), {r.surrogate, r.target, r.method, r.white_box() ? "white" : "transfer"});
    for (int k : kRanks) row.push_back(cell(r.tr_asr, k));
    for (int k : kRanks) row.push_back(cell(r.ir_asr, k));
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += c + 1 == row.size() ? row[c] : pad(row[c], width[c] + 2);
    }
    out += line + "\n";
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  return out;
}

std::string format_experiment_table(const Experiment& experiment) {
  std::vector<RetrievalReport> reports;
  std::vector<std::string> labels;
  for (const auto& row : experiment.rows) {
    for (const auto& r : row.reports) {
      reports.push_back(r);
      labels.push_back(row.label);
    }
  }
  return format_report_table(reports, "row", labels);
}

}  // namespace sadca
