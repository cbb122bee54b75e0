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

#include "sadca/tools/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sadca/dataset.hpp"
#include "sadca/errors.hpp"
#include "sadca/experiments.hpp"
#include "sadca/gradcheck.hpp"
#include "sadca/png_io.hpp"
#include "sadca/serialization.hpp"
#include "sadca/toy_world.hpp"
#include "sadca/training.hpp"

namespace sadca::tools {

namespace fs = std::filesystem;

namespace {

struct DataArgs {
  std::string manifest;
  std::string lexicon;
};

struct ConfigArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> eps_v, alpha, mu, lambda;
  std::optional<int> eps_t, interaction_steps, image_steps, num_negatives, num_views;
  std::optional<std::string> strategy;
  std::optional<bool> enable_ci, enable_di, enable_sa;
};

struct ModelArgs {
  std::string models;
  std::string surrogate;
};

void add_data_options(CLI::App& cmd, DataArgs& a) {
  cmd.add_option("--manifest", a.manifest, "manifest.jsonl of image/caption pairs")
      ->required();
  cmd.add_option("--lexicon", a.lexicon,
                 "substitution lexicon (default: lexicon.json next to the manifest)");
}

void add_config_options(CLI::App& cmd, ConfigArgs& a) {
  cmd.add_option("--config", a.config_path, "attack config JSON");
  cmd.add_option("--seed", a.seed, "run seed");
  cmd.add_option("--eps-v", a.eps_v, "L-inf image budget");
  cmd.add_option("--eps-t", a.eps_t, "substituted words per caption");
  cmd.add_option("--alpha", a.alpha, "sign-step size");
  cmd.add_option("--mu", a.mu, "momentum factor");
  cmd.add_option("--interaction-steps", a.interaction_steps, "outer interaction steps");
  cmd.add_option("--image-steps", a.image_steps, "image steps per interaction");
  cmd.add_option("--num-negatives", a.num_negatives, "negative bank size");
  cmd.add_option("--lambda", a.lambda, "negative weight");
  cmd.add_option("--num-views", a.num_views, "augmented views per step");
  cmd.add_option("--strategy", a.strategy,
                 "negative selection: most_similar, least_similar, intermediate, random");
  cmd.add_option("--enable-ci", a.enable_ci, "positive image alignment");
  cmd.add_option("--enable-di", a.enable_di, "dynamic text interaction");
  cmd.add_option("--enable-sa", a.enable_sa, "semantic augmentation");
}

void add_model_options(CLI::App& cmd, ModelArgs& a) {
  cmd.add_option("--models", a.models, "model roster JSON (default: built-in toy roster)");
}

AttackConfig resolve_config(const ConfigArgs& a) {
  AttackConfig c;
  if (!a.config_path.empty()) c = load_config(a.config_path);
  if (a.seed) c.seed = *a.seed;
  if (a.eps_v) c.eps_v = *a.eps_v;
  if (a.eps_t) c.eps_t = *a.eps_t;
  if (a.alpha) c.alpha = *a.alpha;
  if (a.mu) c.mu = *a.mu;
  if (a.interaction_steps) c.interaction_steps = *a.interaction_steps;
  if (a.image_steps) c.image_steps = *a.image_steps;
  if (a.num_negatives) c.num_negatives = *a.num_negatives;
  if (a.lambda) c.lambda = *a.lambda;
  if (a.num_views) c.num_views = *a.num_views;
  if (a.strategy) {
    const auto parsed = parse_selection_strategy(*a.strategy);
    if (!parsed) throw ConfigError("unknown strategy: " + *a.strategy);
    c.strategy = *parsed;
  }
  if (a.enable_ci) c.enable_ci = *a.enable_ci;
  if (a.enable_di) c.enable_di = *a.enable_di;
  if (a.enable_sa) c.enable_sa = *a.enable_sa;
  c.validate();
  return c;
}

Dataset load_data(const DataArgs& a) {
  fs::path lexicon = a.lexicon;
  if (lexicon.empty()) {
    const fs::path sibling = fs::path(a.manifest).parent_path() / "lexicon.json";
    if (fs::exists(sibling)) lexicon = sibling;
  }
  return load_manifest(a.manifest, lexicon);
}

std::vector<NamedModel> build_models(const std::vector<ModelSpec>& specs, const Dataset& data) {
  std::vector<NamedModel> out;
  for (const auto& s : specs) {
    out.push_back({s.name, std::make_shared<ToyDualEncoder>(build_model(s, data))});
  }
  return out;
}

struct Models {
  std::vector<NamedModel> surrogates;
  std::vector<NamedModel> targets;
};

// A target named like a surrogate reuses its fitted encoder.
Models load_models(const ModelArgs& a, const Dataset& data) {
  const ModelRoster roster = a.models.empty() ? default_roster() : parse_roster(read_text_file(a.models));
  Models m;
  m.surrogates = build_models(roster.surrogates, data);
  for (const auto& spec : roster.targets) {
    auto same = std::find_if(m.surrogates.begin(), m.surrogates.end(),
                             [&](const NamedModel& s) { return s.name == spec.name; });
    if (same != m.surrogates.end()) {
      m.targets.push_back(*same);
    } else {
      m.targets.push_back(build_models({spec}, data).front());
    }
  }
  return m;
}

const NamedModel& pick_surrogate(const Models& m, const std::string& name) {
  if (name.empty()) return m.surrogates.front();
  for (const auto& s : m.surrogates) {
    if (s.name == name) return s;
  }
  throw InputError("unknown surrogate: " + name);
}

RunOptions run_options(bool literal_denominator) {
  RunOptions o;
  if (const char* env = std::getenv("SADCA_NUM_WORKERS")) {
    try {
      o.workers = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      throw ConfigError(std::string("SADCA_NUM_WORKERS is not an integer: ") + env);
    }
  }
  if (literal_denominator) o.denominator = AsrDenominator::kAll;
  return o;
}

std::string safe_file_stem(const std::string& id) {
  std::string s = id;
  for (char& ch : s) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') ch = '_';
  }
  return s;
}

void save_artifacts(const fs::path& out, const Dataset& data,
                    const std::vector<AttackResult>& results, bool save_raw) {
  fs::create_directories(out / "images");
  fs::create_directories(out / "captions");
  for (const auto& r : results) {
    const std::string stem = safe_file_stem(r.sample_id);
    write_png(out / "images" / (stem + ".png"), r.adv_image);
    if (save_raw) {
      const auto& shape = r.adv_image.shape();
      nlohmann::json raw = {{"height", shape.height},
                            {"width", shape.width},
                            {"channels", shape.channels},
                            {"pixels", std::vector<double>(r.adv_image.pixels().begin(),
                                                           r.adv_image.pixels().end())}};
      write_text_file(out / "raw" / (stem + ".json"), raw.dump());
    }
    std::string text;
    for (const auto& c : r.adv_captions) text += data.vocab.detokenize(c) + "\n";
    write_text_file(out / "captions" / (stem + ".txt"), text);
  }
}

std::vector<RetrievalReport> score_all(const std::string& surrogate, AttackMethod method,
                                       const std::vector<NamedModel>& targets,
                                       const Dataset& data,
                                       const std::vector<AttackResult>& results,
                                       const RunOptions& opts) {
  std::vector<RetrievalReport> reports;
  for (const auto& t : targets) {
    RetrievalReport r = evaluate_attack(*t.encoder, data, results, opts.denominator);
    r.surrogate = surrogate;
    r.target = t.name;
    r.method = std::string(to_string(method));
    reports.push_back(std::move(r));
  }
  return reports;
}

AttackMethod parse_method(const std::string& name) {
  if (name == "sadca") return AttackMethod::kSadca;
  if (name == "pgd") return AttackMethod::kPgd;
  throw ConfigError("unknown method: " + name);
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ConfigError("bad sweep value: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("--values is empty");
  return out;
}

void write_experiment(const fs::path& out, const Experiment& e, std::ostream& os) {
  const std::string table = format_experiment_table(e);
  os << table;
  if (out.empty()) return;
  fs::create_directories(out);
  write_text_file(out / "results.json", serialize_experiment(e));
  write_text_file(out / "report.txt", table);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multimodal adversarial attacks against dual-encoder retrieval models", "sadca"};
  app.require_subcommand(1, 1);

  DataArgs data_args;
  ConfigArgs config_args;
  ModelArgs model_args;
  std::string out_dir;
  std::string method = "sadca";
  bool literal_denominator = false;
  bool save_raw = false;

  auto* attack = app.add_subcommand("attack", "attack every sample with one surrogate");
  add_data_options(*attack, data_args);
  add_config_options(*attack, config_args);
  add_model_options(*attack, model_args);
  attack->add_option("--surrogate", model_args.surrogate, "surrogate name from the roster");
  attack->add_option("--method", method, "sadca or pgd");
  attack->add_option("--out", out_dir, "output directory")->required();
  attack->add_flag("--save-raw", save_raw, "also write unquantized pixels as JSON");

  auto* eval = app.add_subcommand("eval", "surrogate x target transfer matrix");
  add_data_options(*eval, data_args);
  add_config_options(*eval, config_args);
  add_model_options(*eval, model_args);
  eval->add_option("--method", method, "sadca or pgd");
  eval->add_option("--out", out_dir, "output directory");

  std::uint64_t grad_seed = 7;
  auto* gradcheck = app.add_subcommand("gradcheck", "finite-difference gradient suite");
  gradcheck->add_option("--seed", grad_seed, "coordinate sampling seed");

  auto* ablate_neg = app.add_subcommand("ablate-negatives", "compare negative selection strategies");
  auto* ablate_mod = app.add_subcommand("ablate-modules", "toggle CI/DI/SA");
  std::string sweep_param;
  std::string sweep_values;
  auto* sweep_cmd = app.add_subcommand("sweep", "grid over one hyperparameter");
  sweep_cmd->add_option("--param", sweep_param, "interaction_steps|num_views|num_negatives|lambda (or I/S/K)")
      ->required();
  sweep_cmd->add_option("--values", sweep_values, "comma-separated values")->required();
  for (CLI::App* cmd : {ablate_neg, ablate_mod, sweep_cmd}) {
    add_data_options(*cmd, data_args);
    add_config_options(*cmd, config_args);
    add_model_options(*cmd, model_args);
    cmd->add_option("--surrogate", model_args.surrogate, "surrogate name from the roster");
    cmd->add_option("--out", out_dir, "output directory");
  }
  for (CLI::App* cmd : {attack, eval, ablate_neg, ablate_mod, sweep_cmd}) {
    cmd->add_flag("--asr-denominator-all", literal_denominator,
                  "score ASR over every sample, not only the ones retrieved correctly");
  }

  ToyWorldOptions toy;
  auto* make_toy = app.add_subcommand("make-toy", "write the synthetic toy dataset");
  make_toy->add_option("--out", out_dir, "output directory")->required();
  make_toy->add_option("--seed", toy.seed, "render seed");
  make_toy->add_option("--samples", toy.num_samples, "number of samples (max 64)");

  // --asr-denominator all is the documented spelling; map it to the flag.
  std::vector<std::string> argv;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--asr-denominator" && i + 1 < args.size()) {
      if (args[i + 1] == "all") {
        argv.push_back("--asr-denominator-all");
        ++i;
        continue;
      }
      if (args[i + 1] == "correct") {
        ++i;
        continue;
      }
    }
    argv.push_back(args[i]);
  }
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* failed = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << failed->help();
    return kExitUsage;
  }

  try {
    if (make_toy->parsed()) {
      write_manifest(out_dir, make_toy_records(toy), make_toy_lexicon());
      out << "wrote " << toy.num_samples << " samples to " << out_dir << "\n";
      return kExitOk;
    }
    if (gradcheck->parsed()) {
      GradCheckOptions opts;
      opts.seed = grad_seed;
      const GradCheckReport report = run_gradient_suite(opts);
      for (const auto& c : report.cases) {
        out << (c.ok ? "ok    " : "FAIL  ") << c.name << "  " << c.passed << "/" << c.sampled
            << "  max_rel_err=" << c.max_relative_error << "\n";
      }
      out << "seconds=" << report.seconds << "\n";
      return report.ok() ? kExitOk : kExitFailure;
    }

    const AttackConfig config = resolve_config(config_args);
    const Dataset data = load_data(data_args);
    const Models models = load_models(model_args, data);
    const RunOptions opts = run_options(literal_denominator);

    if (attack->parsed()) {
      const NamedModel& s = pick_surrogate(models, model_args.surrogate);
      const AttackMethod m = parse_method(method);
      const auto results = attack_dataset(*s.encoder, data, config, m, opts.workers);
      ResultsDocument doc;
      doc.config = config;
      for (const auto& r : results) doc.per_sample.push_back(summarize(r));
      doc.reports = score_all(s.name, m, models.targets, data, results, opts);
      save_artifacts(out_dir, data, results, save_raw);
      write_text_file(fs::path(out_dir) / "results.json", serialize_results(doc));
      out << format_report_table(doc.reports);
      return kExitOk;
    }
    if (eval->parsed()) {
      const AttackMethod m = parse_method(method);
      ResultsDocument doc;
      doc.config = config;
      for (const auto& s : models.surrogates) {
        const auto results = attack_dataset(*s.encoder, data, config, m, opts.workers);
        for (const auto& r : results) {
          SampleSummary summary = summarize(r);
          if (models.surrogates.size() > 1) summary.id = s.name + "/" + summary.id;
          doc.per_sample.push_back(std::move(summary));
        }
        for (auto& r : score_all(s.name, m, models.targets, data, results, opts)) {
          doc.reports.push_back(std::move(r));
        }
      }
      const std::string table = format_report_table(doc.reports);
      out << table;
      if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_text_file(fs::path(out_dir) / "results.json", serialize_results(doc));
        write_text_file(fs::path(out_dir) / "report.txt", table);
      }
      return kExitOk;
    }
    const NamedModel& s = pick_surrogate(models, model_args.surrogate);
    if (ablate_neg->parsed()) {
      write_experiment(out_dir, ablate_negatives(s, models.targets, data, config, opts), out);
    } else if (ablate_mod->parsed()) {
      write_experiment(out_dir, ablate_modules(s, models.targets, data, config, opts), out);
    } else {
      const auto values = parse_values(sweep_values);
      write_experiment(out_dir,
                       sweep(s, models.targets, data, config, sweep_param, values, opts), out);
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace sadca::tools
