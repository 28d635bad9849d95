// Copyright 2026 The Descend Authors
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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <map>

#include <json.hpp>

#include "descend/cli.hpp"
#include "test_support.hpp"

namespace descend {
namespace {

namespace fs = std::filesystem;
using testing_support::slurp;
using testing_support::spit;
using testing_support::TempDir;

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "descend");
  return cli::run(args);
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = slurp(e.path());
  }
  return files;
}

class CliPipeline : public ::testing::Test {
 protected:
  void SetUp() override {
    fixtures_ = (dir_ / "fixtures").string();
    run_ = (dir_ / "run").string();
    ASSERT_EQ(run({"gen-fixture", "--out", fixtures_, "--seed", "4", "--count", "6"}), cli::kOk);
    MockHoldings();
  }

  void MockHoldings() { spit(fs::path(fixtures_) / "holdings.txt", "# nothing archived\n"); }

  void RunAll() {
    ASSERT_EQ(run({"crawl", "--fixtures", fixtures_, "--out", run_, "--emit-metadata", "--markup-bytes", "500"}),
              cli::kOk);
    ASSERT_EQ(run({"analyze", "--out", run_}), cli::kOk);
    ASSERT_EQ(run({"coverage", "--out", run_, "--holdings", fixtures_ + "/holdings.txt"}), cli::kOk);
    ASSERT_EQ(run({"estimate", "--out", run_}), cli::kOk);
    ASSERT_EQ(run({"report", "--out", run_}), cli::kOk);
  }

  TempDir dir_{"cli"};
  std::string fixtures_;
  std::string run_;
};

TEST_F(CliPipeline, FullRunWritesArtifactsAndManifests) {
  RunAll();
  for (const char* f : {"crawl/index.json", "crawl/0000.json", "metadata/0000.ndjson", "analysis.json",
                        "coverage.json", "coverage.csv", "estimate.json", "report/summary.json",
                        "report/level_contributions.csv", "manifest-crawl.json", "manifest-analyze.json",
                        "manifest-coverage.json", "manifest-estimate.json", "manifest-report.json"}) {
    EXPECT_TRUE(fs::exists(fs::path(run_) / f)) << f;
  }
  const auto manifest = nlohmann::json::parse(slurp(fs::path(run_) / "manifest-analyze.json"));
  EXPECT_EQ(manifest.at("stage"), "analyze");
  EXPECT_EQ(manifest.at("inputs").size(), 7u);  // one digest per crawl file plus the index
}

TEST_F(CliPipeline, RerunIsByteIdentical) {
  RunAll();
  const auto first = snapshot(run_);
  RunAll();
  EXPECT_EQ(snapshot(run_), first);
}

TEST_F(CliPipeline, MissingArtifactNamesTheFile) {
  testing::internal::CaptureStderr();
  EXPECT_EQ(run({"report", "--out", run_}), cli::kStageFailure);
  const auto err = testing::internal::GetCapturedStderr();
  EXPECT_NE(err.find("analysis.json"), std::string::npos) << err;
}

TEST_F(CliPipeline, EmptySeedListIsNotAnError) {
  spit(dir_ / "empty-seeds.txt", "# none\n\n");
  testing::internal::CaptureStderr();
  EXPECT_EQ(run({"crawl", "--fixtures", fixtures_, "--seeds", (dir_ / "empty-seeds.txt").string(), "--out", run_}),
            cli::kOk);
  EXPECT_NE(testing::internal::GetCapturedStderr().find("empty"), std::string::npos);
  EXPECT_EQ(run({"analyze", "--out", run_}), cli::kOk);
  EXPECT_EQ(run({"report", "--out", run_}), cli::kOk);
}

TEST_F(CliPipeline, UnknownSeedFailsTheStage) {
  spit(dir_ / "seeds.txt", "http://not-in-fixtures.example/\n");
  testing::internal::CaptureStderr();
  EXPECT_EQ(run({"crawl", "--fixtures", fixtures_, "--seeds", (dir_ / "seeds.txt").string(), "--out", run_}),
            cli::kStageFailure);
  testing::internal::GetCapturedStderr();
}

TEST_F(CliPipeline, EndpointFromEnvironment) {
  ASSERT_EQ(run({"crawl", "--fixtures", fixtures_, "--out", run_}), cli::kOk);
  ASSERT_EQ(run({"analyze", "--out", run_}), cli::kOk);
  ::setenv("DESCEND_TIMEMAP_ENDPOINT", "http://127.0.0.1:1/timemap/{uri}", 1);
  testing::internal::CaptureStdout();
  testing::internal::CaptureStderr();
  const int code = run({"coverage", "--out", run_, "--attempts", "1", "--politeness-ms", "0"});
  testing::internal::GetCapturedStdout();
  const auto err = testing::internal::GetCapturedStderr();
  // Environment plus --holdings names two backends.
  testing::internal::CaptureStderr();
  const int both = run({"coverage", "--out", run_, "--holdings", fixtures_ + "/holdings.txt"});
  testing::internal::GetCapturedStderr();
  ::unsetenv("DESCEND_TIMEMAP_ENDPOINT");
  EXPECT_EQ(code, cli::kOk);
  EXPECT_NE(err.find("lookups failed"), std::string::npos) << err;
  const auto manifest = nlohmann::json::parse(slurp(fs::path(run_) / "manifest-coverage.json"));
  EXPECT_EQ(manifest.at("config").at("endpoint"), "http://127.0.0.1:1/timemap/{uri}");
  EXPECT_EQ(both, cli::kConfigError);
}

TEST(Cli, ConfigErrors) {
  testing::internal::CaptureStderr();
  testing::internal::CaptureStdout();
  EXPECT_EQ(run({"crawl"}), cli::kConfigError);
  EXPECT_EQ(run({"crawl", "--fixtures", "/nonexistent/fixtures"}), cli::kConfigError);
  EXPECT_EQ(run({"estimate", "--policy", "fastest", "--sizes", "1", "--baseline-size", "1"}), cli::kConfigError);
  EXPECT_EQ(run({"estimate", "--sizes", "1,2", "--times", "1", "--baseline-size", "1", "--baseline-time", "1"}),
            cli::kConfigError);
  EXPECT_EQ(run({"coverage"}), cli::kConfigError);
  EXPECT_EQ(run({"gen-fixture", "--out", "/tmp/x", "--preset", "nope"}), cli::kConfigError);
  EXPECT_EQ(run({"frobnicate"}), cli::kConfigError);
  EXPECT_EQ(run({"crawl", "--fixtures", ".", "--workers", "0"}), cli::kConfigError);
  testing::internal::GetCapturedStdout();
  testing::internal::GetCapturedStderr();
}

TEST(Cli, VersionAndHelpExitZero) {
  testing::internal::CaptureStdout();
  EXPECT_EQ(run({"--version"}), cli::kOk);
  EXPECT_EQ(run({"--help"}), cli::kOk);
  EXPECT_FALSE(testing::internal::GetCapturedStdout().empty());
}

TEST(Cli, DirectEstimatePrintsRatios) {
  testing::internal::CaptureStdout();
  ASSERT_EQ(run({"estimate", "--sizes", "11942,56957,66320", "--times", "8452,27990,40258", "--baseline-size",
                 "4250", "--baseline-time", "1035"}),
            cli::kOk);
  const auto out = testing::internal::GetCapturedStdout();
  for (const char* s : {"8.17x", "27.04x", "38.90x", "2.81x", "13.40x", "15.60x", "1.04", "2.30", "0.76",
                        "policy max-roi crawls levels {0,1}"}) {
    EXPECT_NE(out.find(s), std::string::npos) << s << "\n" << out;
  }
}

TEST(Cli, TomlConfigWithFlagOverride) {
  TempDir dir("cli-config");
  spit(dir / "descend.toml",
       "[estimate]\n"
       "policy = \"max-coverage\"\n"
       "baseline-size = 4250\n"
       "baseline-time = 1035\n");
  testing::internal::CaptureStdout();
  ASSERT_EQ(run({"--config", (dir / "descend.toml").string(), "estimate", "--sizes", "11942,56957,66320", "--times",
                 "8452,27990,40258"}),
            cli::kOk);
  auto out = testing::internal::GetCapturedStdout();
  EXPECT_NE(out.find("policy max-coverage crawls levels {0,1,2}"), std::string::npos) << out;

  testing::internal::CaptureStdout();
  ASSERT_EQ(run({"--config", (dir / "descend.toml").string(), "estimate", "--policy", "max-roi", "--sizes",
                 "11942,56957,66320", "--times", "8452,27990,40258"}),
            cli::kOk);
  out = testing::internal::GetCapturedStdout();
  EXPECT_NE(out.find("policy max-roi crawls levels {0,1}"), std::string::npos) << out;
}

TEST(Cli, ReferencePresetGeneratesCorpusAndHoldings) {
  TempDir dir("cli-reference");
  testing::internal::CaptureStdout();
  ASSERT_EQ(run({"gen-fixture", "--out", dir.path().string(), "--preset", "reference"}), cli::kOk);
  testing::internal::GetCapturedStdout();
  EXPECT_TRUE(fs::exists(dir / "0439.json"));
  EXPECT_FALSE(fs::exists(dir / "0440.json"));
  EXPECT_TRUE(fs::exists(dir / "holdings.txt"));
  EXPECT_TRUE(fs::exists(dir / "manifest-gen-fixture.json"));
}

}  // namespace
}  // namespace descend
