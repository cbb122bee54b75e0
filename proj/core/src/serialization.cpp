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

#include "sadca/serialization.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "sadca/errors.hpp"

namespace sadca {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json config_json(const AttackConfig& c) {
  ordered_json j;
  j["eps_v"] = c.eps_v;
  j["eps_t"] = c.eps_t;
  j["alpha"] = c.alpha;
  j["mu"] = c.mu;
  j["interaction_steps"] = c.interaction_steps;
  j["image_steps"] = c.image_steps;
  j["num_negatives"] = c.num_negatives;
  j["lambda"] = c.lambda;
  j["num_views"] = c.num_views;
  j["strategy"] = std::string(to_string(c.strategy));
  j["seed"] = c.seed;
  j["enable_ci"] = c.enable_ci;
  j["enable_di"] = c.enable_di;
  j["enable_sa"] = c.enable_sa;
  return j;
}

template <typename T>
T field(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ParseError("config field '" + key + "' has the wrong type", 0);
  }
}

AttackConfig config_from(const json& j, AttackConfig c) {
  if (!j.is_object()) throw ParseError("config must be a JSON object", 0);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    if (k == "eps_v") c.eps_v = field<double>(v, k);
    else if (k == "eps_t") c.eps_t = field<int>(v, k);
    else if (k == "alpha") c.alpha = field<double>(v, k);
    else if (k == "mu") c.mu = field<double>(v, k);
    else if (k == "interaction_steps") c.interaction_steps = field<int>(v, k);
    else if (k == "image_steps") c.image_steps = field<int>(v, k);
    else if (k == "num_negatives") c.num_negatives = field<int>(v, k);
    else if (k == "lambda") c.lambda = field<double>(v, k);
    else if (k == "num_views") c.num_views = field<int>(v, k);
    else if (k == "seed") c.seed = field<std::uint64_t>(v, k);
    else if (k == "enable_ci") c.enable_ci = field<bool>(v, k);
    else if (k == "enable_di") c.enable_di = field<bool>(v, k);
    else if (k == "enable_sa") c.enable_sa = field<bool>(v, k);
    else if (k == "strategy") {
      auto s = parse_selection_strategy(field<std::string>(v, k));
      if (!s) throw ParseError("unknown strategy '" + v.get<std::string>() + "'", 0);
      c.strategy = *s;
    } else {
      throw ParseError("unknown config field '" + k + "'", 0);
    }
  }
  return c;
}

ordered_json rank_map(const std::map<int, double>& m) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

ordered_json rank_map(const std::map<int, std::size_t>& m) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

template <typename T>
std::map<int, T> rank_map_from(const json& j) {
  std::map<int, T> m;
  for (auto it = j.begin(); it != j.end(); ++it) m[std::stoi(it.key())] = it.value().get<T>();
  return m;
}

ordered_json report_json(const RetrievalReport& r) {
  ordered_json j;
  j["surrogate"] = r.surrogate;
  j["target"] = r.target;
  j["method"] = r.method;
  j["white_box"] = r.white_box();
  j["tr_asr"] = rank_map(r.tr_asr);
  j["ir_asr"] = rank_map(r.ir_asr);
  j["tr_evaluated"] = rank_map(r.tr_evaluated);
  j["ir_evaluated"] = rank_map(r.ir_evaluated);
  return j;
}

RetrievalReport report_from(const json& j) {
  RetrievalReport r;
  r.surrogate = j.at("surrogate").get<std::string>();
  r.target = j.at("target").get<std::string>();
  r.method = j.at("method").get<std::string>();
  r.tr_asr = rank_map_from<double>(j.at("tr_asr"));
  r.ir_asr = rank_map_from<double>(j.at("ir_asr"));
  r.tr_evaluated = rank_map_from<std::size_t>(j.at("tr_evaluated"));
  r.ir_evaluated = rank_map_from<std::size_t>(j.at("ir_evaluated"));
  return r;
}

ordered_json sample_json(const SampleSummary& s) {
  ordered_json j;
  j["id"] = s.id;
  j["losses"] = {{"image", s.losses.image}, {"text", s.losses.text}};
  j["budget_ok"] = s.budget_ok;
  j["substituted_words"] = s.substituted_words;
  return j;
}

SampleSummary sample_from(const json& j) {
  SampleSummary s;
  s.id = j.at("id").get<std::string>();
  s.losses.image = j.at("losses").at("image").get<std::vector<double>>();
  s.losses.text = j.at("losses").at("text").get<std::vector<double>>();
  s.budget_ok = j.at("budget_ok").get<bool>();
  s.substituted_words = j.at("substituted_words").get<std::vector<int>>();
  return s;
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what(), 0);
  }
}

ModelSpec model_from(const json& j) {
  ModelSpec m;
  m.name = j.at("name").get<std::string>();
  if (j.contains("seed")) m.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("hidden")) m.hidden = j["hidden"].get<int>();
  if (j.contains("embed_dim")) m.embed_dim = j["embed_dim"].get<int>();
  if (j.contains("epochs")) m.epochs = j["epochs"].get<int>();
  if (j.contains("view_fraction")) m.view_fraction = j["view_fraction"].get<double>();
  return m;
}

}  // namespace

AttackConfig parse_config(std::string_view text, const AttackConfig& base) {
  return config_from(parse_json(text, "config"), base);
}

AttackConfig load_config(const std::filesystem::path& path, const AttackConfig& base) {
  return parse_config(read_text_file(path), base);
}

std::string config_to_json(const AttackConfig& config) { return config_json(config).dump(2); }

SampleSummary summarize(const AttackResult& r) {
  return {r.sample_id, r.loss_trace, r.budget_ok, r.substituted_words};
}

std::string serialize_results(const ResultsDocument& doc) {
  ordered_json j;
  j["config"] = config_json(doc.config);
  j["per_sample"] = ordered_json::array();
  for (const auto& s : doc.per_sample) j["per_sample"].push_back(sample_json(s));
  j["reports"] = ordered_json::array();
  for (const auto& r : doc.reports) j["reports"].push_back(report_json(r));
  return j.dump(2) + "\n";
}

ResultsDocument parse_results(std::string_view text) {
  const json j = parse_json(text, "results");
  ResultsDocument doc;
  try {
    doc.config = config_from(j.at("config"), AttackConfig{});
    for (const auto& s : j.at("per_sample")) doc.per_sample.push_back(sample_from(s));
    for (const auto& r : j.at("reports")) doc.reports.push_back(report_from(r));
  } catch (const json::exception& e) {
    throw ParseError(std::string("results: ") + e.what(), 0);
  }
  return doc;
}

std::string serialize_experiment(const Experiment& experiment) {
  ordered_json j;
  j["experiment"] = experiment.name;
  j["rows"] = ordered_json::array();
  for (const auto& row : experiment.rows) {
    ordered_json r;
    r["label"] = row.label;
    r["method"] = std::string(to_string(row.method));
    r["config"] = config_json(row.config);
    r["per_sample"] = ordered_json::array();
    for (const auto& res : row.results) r["per_sample"].push_back(sample_json(summarize(res)));
    r["reports"] = ordered_json::array();
    for (const auto& rep : row.reports) r["reports"].push_back(report_json(rep));
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

ModelRoster parse_roster(std::string_view text) {
  const json j = parse_json(text, "models");
  ModelRoster roster;
  try {
    for (const auto& m : j.at("surrogates")) roster.surrogates.push_back(model_from(m));
    for (const auto& m : j.at("targets")) roster.targets.push_back(model_from(m));
  } catch (const json::exception& e) {
    throw ParseError(std::string("models: ") + e.what(), 0);
  }
  if (roster.surrogates.empty() || roster.targets.empty()) {
    throw ParseError("models: need at least one surrogate and one target", 0);
  }
  return roster;
}

ModelRoster default_roster() {
  ModelRoster r;
  const ModelSpec a{"toy-a", 11, 64, 32, 1500};
  const ModelSpec b{"toy-b", 23, 96, 24, 1500};
  const ModelSpec c{"toy-c", 37, 48, 32, 1500};
  const ModelSpec d{"toy-d", 53, 80, 16, 1500};
  r.surrogates = {a, b};
  r.targets = {a, b, c, d};
  return r;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write", path.string());
  out << text;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read", path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace sadca
