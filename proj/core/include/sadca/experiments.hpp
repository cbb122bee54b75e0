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

#ifndef SADCA_EXPERIMENTS_HPP_
#define SADCA_EXPERIMENTS_HPP_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sadca/attack.hpp"
#include "sadca/retrieval.hpp"

namespace sadca {

enum class AttackMethod { kSadca, kPgd };

std::string_view to_string(AttackMethod method);

struct NamedModel {
  std::string name;
  std::shared_ptr<const DualEncoder> encoder;
};

struct RunOptions {
  int workers = 1;
  AsrDenominator denominator = AsrDenominator::kCorrectBefore;
};

/// Attacks every sample. Results come back in dataset order whatever the
/// worker count.
std::vector<AttackResult> attack_dataset(const DualEncoder& encoder, const Dataset& dataset,
                                         const AttackConfig& config, AttackMethod method,
                                         int workers = 1);

/// One report per (surrogate, target) pair, surrogate-major. Cells where the
/// names match are white-box.
std::vector<RetrievalReport> transfer_matrix(std::span<const NamedModel> surrogates,
                                             std::span<const NamedModel> targets,
                                             const Dataset& dataset, const AttackConfig& config,
                                             AttackMethod method, const RunOptions& options = {});

struct ExperimentRow {
  std::string label;
  AttackConfig config;
  AttackMethod method = AttackMethod::kSadca;
  std::vector<AttackResult> results;
  std::vector<RetrievalReport> reports;
};

struct Experiment {
  std::string name;
  std::vector<ExperimentRow> rows;
};

/// Strategies (1)-(4): most similar, least similar, intermediate, random.
Experiment ablate_negatives(const NamedModel& surrogate, std::span<const NamedModel> targets,
                            const Dataset& dataset, const AttackConfig& base,
                            const RunOptions& options = {});

/// Every on/off combination of (CI, DI, SA), full-on first, all-off last.
Experiment ablate_modules(const NamedModel& surrogate, std::span<const NamedModel> targets,
                          const Dataset& dataset, const AttackConfig& base,
                          const RunOptions& options = {});

/// Canonical parameter name for I, S, K or lambda ("I", "interaction_steps",
/// ...). Throws ConfigError for anything else.
std::string canonical_sweep_param(std::string_view name);
AttackConfig with_param(AttackConfig config, std::string_view param, double value);

Experiment sweep(const NamedModel& surrogate, std::span<const NamedModel> targets,
                 const Dataset& dataset, const AttackConfig& base, std::string_view param,
                 std::span<const double> values, const RunOptions& options = {});

/// Aligned-column text table, one line per report.
std::string format_report_table(std::span<const RetrievalReport> reports,
                                std::string_view label_header = {},
                                std::span<const std::string> labels = {});
std::string format_experiment_table(const Experiment& experiment);

}  // namespace sadca

#endif  // SADCA_EXPERIMENTS_HPP_
