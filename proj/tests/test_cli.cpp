// Copyright 2026 The hqcnn Authors
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


// End-to-end runs of the hqcnn binary.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hqcnn/persistence.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = HQCNN_CLI_PATH;
const std::string kData = std::string(HQCNN_DATA_DIR) + "/h2_sto3g_jw.json";

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + kCli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) { return hqcnn::read_file(p.string()); }

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("hqcnn_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string line(const std::string& text, std::size_t k) {
  std::istringstream in(text);
  std::string l;
  for (std::size_t i = 0; i <= k && std::getline(in, l); ++i) {
  }
  return l;
}

// Small, fast model shared by the tests below.
const fs::path& tiny_model() {
  static const fs::path path = [] {
    const auto dir = scratch("model");
    const auto r = run("train --dataset " + kData +
                       " --depth 2 --weights 1,0.5 --restarts 1 --max-iterations 50 --out-dir " +
                       dir.string());
    if (r.code != 0) throw std::runtime_error("training the shared model failed");
    return dir / "model.json";
  }();
  return path;
}

}  // namespace

TEST(Cli, VersionAndHelp) {
  EXPECT_EQ(run("--version").code, 0);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
  EXPECT_EQ(run("train --not-a-flag").code, 2);
  EXPECT_EQ(run("fci --dataset " + kData + " --reference whatever").code, 2);
  EXPECT_EQ(run("infer --dataset " + kData).code, 2);
}

TEST(Cli, MissingDatasetExitsTwo) {
  EXPECT_EQ(run("validate-dataset", "env -u HQCNN_DATASET").code, 2);
  EXPECT_EQ(run("fci", "env -u HQCNN_DATASET").code, 2);
  EXPECT_EQ(run("validate-dataset --dataset /no/such/file.json").code, 2);
}

TEST(Cli, DatasetFromEnvironment) {
  const auto r = run("validate-dataset", "env HQCNN_DATASET=" + kData);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("45 entries"), std::string::npos);
}

TEST(Cli, MalformedDatasetIsRuntimeError) {
  const auto dir = scratch("bad");
  std::ofstream(dir / "bad.json") << "{\"schema_version\": 1, \"entries\": [";
  EXPECT_EQ(run("validate-dataset --dataset " + (dir / "bad.json").string()).code, 1);
}

TEST(Cli, OffGridBondLengthIsRuntimeError) {
  EXPECT_EQ(run("fci --dataset " + kData + " --grid 0.77").code, 1);
}

TEST(Cli, FciCsvLayout) {
  const auto r = run("fci --dataset " + kData + " --grid 0.3,0.75");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("# hqcnn ", 0), 0u);
  EXPECT_NE(line(r.out, 0).find(" config="), std::string::npos);
  EXPECT_EQ(line(r.out, 2), "b,E0,E1,full_E0,full_E1,sector_differs");
  EXPECT_EQ(line(r.out, 3).rfind("0.3,", 0), 0u);
  EXPECT_EQ(line(r.out, 3).back(), '1');
  EXPECT_EQ(line(r.out, 4).back(), '0');
}

TEST(Cli, ConfigHashTracksSettings) {
  const auto a = run("fci --dataset " + kData + " --grid 0.75");
  const auto b = run("fci --dataset " + kData + " --grid 0.75 --reference full");
  EXPECT_NE(line(a.out, 0), line(b.out, 0));
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
  const auto dir = scratch("config");
  std::ofstream(dir / "run.json") << "{\"grid\": \"0.5:0.6:0.05\", \"reference\": \"full\"}";
  const auto cfg = "--config " + (dir / "run.json").string();
  const auto from_file = run("fci --dataset " + kData + " " + cfg);
  ASSERT_EQ(from_file.code, 0);
  EXPECT_NE(from_file.out.find("reference=full"), std::string::npos);
  EXPECT_NE(from_file.out.find("\n0.55,"), std::string::npos);

  const auto overridden = run("fci --dataset " + kData + " " + cfg + " --grid 1.0");
  ASSERT_EQ(overridden.code, 0);
  EXPECT_EQ(overridden.out.find("\n0.55,"), std::string::npos);
  EXPECT_NE(overridden.out.find("\n1,"), std::string::npos);

  std::ofstream(dir / "typo.json") << "{\"gird\": \"1.0\"}";
  EXPECT_EQ(run("fci --dataset " + kData + " --config " + (dir / "typo.json").string()).code, 2);
}

TEST(Cli, TrainWritesModelAndTrace) {
  const auto& model = tiny_model();
  ASSERT_TRUE(fs::exists(model));
  const auto m = hqcnn::load_model(model.string());
  EXPECT_EQ(m.config.depth, 2u);
  EXPECT_EQ(m.dataset_fingerprint, hqcnn::load_dataset(kData).fingerprint);
  const auto trace = slurp(model.parent_path() / "trace.csv");
  EXPECT_EQ(trace.rfind("# hqcnn ", 0), 0u);
  EXPECT_NE(trace.find("\niteration,cost\n0,"), std::string::npos);
}

TEST(Cli, TrainingIsByteReproducible) {
  const auto a = scratch("repro_a"), b = scratch("repro_b");
  const std::string args = "train --dataset " + kData +
                           " --depth 2 --weights 1,0.5 --restarts 2 --max-iterations 30 --seed 7";
  ASSERT_EQ(run(args + " --jobs 1 --out-dir " + a.string()).code, 0);
  ASSERT_EQ(run(args + " --jobs 2 --out-dir " + b.string()).code, 0);
  EXPECT_EQ(slurp(a / "model.json"), slurp(b / "model.json"));
  EXPECT_EQ(slurp(a / "trace.csv"), slurp(b / "trace.csv"));
}

TEST(Cli, InferColumnsFollowTrainedBranches) {
  const auto two = run("infer --dataset " + kData + " --model " + tiny_model().string() +
                       " --grid 0.75");
  ASSERT_EQ(two.code, 0);
  EXPECT_NE(two.out.find("\nb,E0,E1,FCI0,FCI1,dE0,dE1\n"), std::string::npos);

  const auto dir = scratch("ground");
  ASSERT_EQ(run("train --dataset " + kData +
                " --depth 2 --weights 1,0 --restarts 1 --max-iterations 20 --out-dir " +
                dir.string())
                .code,
            0);
  const auto one =
      run("infer --dataset " + kData + " --model " + (dir / "model.json").string() +
          " --grid 0.75");
  ASSERT_EQ(one.code, 0);
  EXPECT_NE(one.out.find("\nb,E0,FCI0,dE0\n"), std::string::npos);
}

TEST(Cli, InferFlagsSectorDisagreement) {
  const auto r = run("infer --dataset " + kData + " --model " + tiny_model().string() +
                     " --grid 0.3");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("# b=0.3: full-spectrum E1="), std::string::npos);
}

TEST(Cli, NoiseSweepIsReproducible) {
  const auto dir = scratch("sweep");
  const std::string args = "noise-sweep --dataset " + kData + " --model " +
                           tiny_model().string() +
                           " --shots 100,1000 --repetitions 3 --grid 0.5:0.7:0.1 --seed 3";
  const auto a = run(args + " --jobs 1 --samples " + (dir / "a.csv").string());
  const auto b = run(args + " --jobs 3 --samples " + (dir / "b.csv").string());
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
  EXPECT_NE(a.out.find("\nshots,total_shots_per_point,samples,mean_dE0,std_dE0,mean_dE1,std_dE1\n"),
            std::string::npos);
  const auto samples = slurp(dir / "a.csv");
  EXPECT_NE(samples.find("\nshots,b,repetition,E0,E1,dE0,dE1\n100,0.5,0,"), std::string::npos);
}

TEST(Cli, SingleRepetitionLeavesSpreadEmpty) {
  const auto r = run("noise-sweep --dataset " + kData + " --model " + tiny_model().string() +
                     " --shots 100 --repetitions 1 --grid 0.75");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\n100,"), std::string::npos);
  const auto row = r.out.substr(r.out.find("\n100,") + 1);
  EXPECT_NE(row.find(",,"), std::string::npos);
}
