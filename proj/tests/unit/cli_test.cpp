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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "sadca/tools/cli.hpp"

namespace sadca::tools {
namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Invocation r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::size_t count_files(const fs::path& dir, const std::string& ext) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.path().extension() == ext;
  return n;
}

// One toy dataset, a tiny roster and a fast config shared by every case.
class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    root_ = new fs::path(fs::temp_directory_path() / "sadca_cli_test");
    fs::remove_all(*root_);
    fs::create_directories(*root_);
    const Invocation r = run({"make-toy", "--out", (*root_ / "data").string(), "--seed", "4",
                       "--samples", "10"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    spit(*root_ / "models.json", R"({
  "surrogates": [{"name": "s", "seed": 5, "hidden": 16, "embed_dim": 8, "epochs": 40}],
  "targets": [{"name": "s", "seed": 5, "hidden": 16, "embed_dim": 8, "epochs": 40},
              {"name": "t", "seed": 9, "hidden": 12, "embed_dim": 8, "epochs": 40}]
})");
    spit(*root_ / "config.json",
         R"({"interaction_steps": 1, "image_steps": 2, "num_negatives": 3, "num_views": 2})");
  }
  static void TearDownTestSuite() {
    fs::remove_all(*root_);
    delete root_;
  }
  static std::vector<std::string> common() {
    return {"--manifest", (*root_ / "data" / "manifest.jsonl").string(),
            "--models",   (*root_ / "models.json").string(),
            "--config",   (*root_ / "config.json").string()};
  }
  static std::vector<std::string> with(std::vector<std::string> head,
                                       const std::vector<std::string>& tail) {
    auto c = common();
    head.insert(head.end(), c.begin(), c.end());
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
  }
  static fs::path* root_;
};
fs::path* Cli::root_ = nullptr;

TEST_F(Cli, MakeToyWritesManifestAndLexicon) {
  EXPECT_TRUE(fs::exists(*root_ / "data" / "manifest.jsonl"));
  EXPECT_TRUE(fs::exists(*root_ / "data" / "lexicon.json"));
  EXPECT_EQ(count_files(*root_ / "data" / "images", ".png"), 10u);
}

TEST_F(Cli, AttackWritesArtifacts) {
  const fs::path out = *root_ / "attack";
  const Invocation r = run(with({"attack"}, {"--out", out.string(), "--save-raw"}));
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(out / "results.json"));
  EXPECT_EQ(count_files(out / "images", ".png"), 10u);
  EXPECT_EQ(count_files(out / "captions", ".txt"), 10u);
  EXPECT_EQ(count_files(out / "raw", ".json"), 10u);
  EXPECT_NE(r.out.find("TR@1"), std::string::npos);
}

TEST_F(Cli, EvalIsDeterministic) {
  const fs::path a = *root_ / "eval_a";
  const fs::path b = *root_ / "eval_b";
  ASSERT_EQ(run(with({"eval"}, {"--out", a.string()})).code, kExitOk);
  ASSERT_EQ(run(with({"eval"}, {"--out", b.string()})).code, kExitOk);
  EXPECT_EQ(slurp(a / "results.json"), slurp(b / "results.json"));
  EXPECT_TRUE(fs::exists(a / "report.txt"));
}

TEST_F(Cli, AsrDenominatorChoice) {
  EXPECT_EQ(run(with({"eval"}, {"--asr-denominator", "all"})).code, kExitOk);
  EXPECT_EQ(run(with({"eval"}, {"--asr-denominator", "correct"})).code, kExitOk);
}

TEST_F(Cli, SweepPrintsOneRowPerValue) {
  const fs::path out = *root_ / "sweep";
  const Invocation r = run(with({"sweep"}, {"--param", "lambda", "--values", "0,0.2,0.5", "--out",
                                     out.string()}));
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* label : {"lambda=0 ", "lambda=0.2", "lambda=0.5"}) {
    EXPECT_NE(r.out.find(label), std::string::npos) << label;
  }
  EXPECT_TRUE(fs::exists(out / "results.json"));
}

TEST_F(Cli, BadSweepValueFails) {
  EXPECT_EQ(run(with({"sweep"}, {"--param", "I", "--values", "1,x"})).code, kExitFailure);
  EXPECT_EQ(run(with({"sweep"}, {"--param", "I", "--values", "1.5"})).code, kExitFailure);
}

TEST(CliStandalone, GradcheckPasses) {
  const Invocation r = run({"gradcheck", "--seed", "7"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
}

TEST(CliStandalone, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"gradcheck", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(run({"attack", "--manifest", "x.jsonl"}).code, kExitUsage);  // --out missing
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(CliStandalone, MissingManifestIsRuntimeFailure) {
  const Invocation r = run({"attack", "--manifest", "/nonexistent/m.jsonl", "--out", "/tmp/x"});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST(CliStandalone, InvalidConfigValueFails) {
  const Invocation r = run({"attack", "--manifest", "/nonexistent/m.jsonl", "--out", "/tmp/x",
                     "--eps-v", "-1"});
  EXPECT_EQ(r.code, kExitFailure);
}

}  // namespace
}  // namespace sadca::tools
