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

#ifndef SADCA_SERIALIZATION_HPP_
#define SADCA_SERIALIZATION_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sadca/attack.hpp"
#include "sadca/experiments.hpp"
#include "sadca/retrieval.hpp"
#include "sadca/training.hpp"

namespace sadca {

/// Config files use the AttackConfig field names. Fields absent from the
/// JSON keep their value from `base`; unknown fields are a ParseError.
AttackConfig parse_config(std::string_view json, const AttackConfig& base = {});
AttackConfig load_config(const std::filesystem::path& path, const AttackConfig& base = {});
std::string config_to_json(const AttackConfig& config);

struct SampleSummary {
  std::string id;
  LossTrace losses;
  bool budget_ok = true;
  std::vector<int> substituted_words;
  friend bool operator==(const SampleSummary&, const SampleSummary&) = default;
};

SampleSummary summarize(const AttackResult& result);

/// results.json: {config, per_sample: [...], reports: [...]}.
struct ResultsDocument {
  AttackConfig config;
  std::vector<SampleSummary> per_sample;
  std::vector<RetrievalReport> reports;
  friend bool operator==(const ResultsDocument&, const ResultsDocument&) = default;
};

std::string serialize_results(const ResultsDocument& doc);
ResultsDocument parse_results(std::string_view json);

std::string serialize_experiment(const Experiment& experiment);

/// Model roster file: {"surrogates": [ModelSpec...], "targets": [...]}.
struct ModelRoster {
  std::vector<ModelSpec> surrogates;
  std::vector<ModelSpec> targets;
};

ModelRoster parse_roster(std::string_view json);
ModelRoster default_roster();

void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace sadca

#endif  // SADCA_SERIALIZATION_HPP_
