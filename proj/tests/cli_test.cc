// tests/cli_test.cc

// Copyright 2026  The vowelkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.
//

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.h"
#include "synth.h"
#include "vowelkit/audio_io.h"
#include "vowelkit/experiment.h"
#include "vowelkit/multiclass.h"

namespace vowelkit {
namespace {

namespace fs = std::filesystem;
using cli::ExitCode;

struct CliRun {
  int code = -1;
  std::string out, err;
};

CliRun Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string Slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new vowelkit::testing::TempDir("cli");
    vowelkit::testing::SynthCorpusOptions opt;
    opt.train_per_class = 8;
    opt.test_per_class = 4;
    opt.short_tokens = 1;
    vowelkit::testing::WriteSynthCorpus(dir_->path() / "corpus", opt);
    std::ofstream(dir_->path() / "small.cfg")
        << "[corpus]\nroot = corpus\n\n[grid]\nkernels = rbf polynomial\nfeatures = mfcc36\nC = 10\n"
           "sigma = 0.5\nK = 3\nmethods = middle\n\n[run]\nseed = 5\n";
  }
  static void TearDownTestSuite() { delete dir_; }

  static std::string Path(const std::string &name) { return (dir_->path() / name).string(); }
  static vowelkit::testing::TempDir *dir_;
};

vowelkit::testing::TempDir *CliTest::dir_ = nullptr;

TEST(CliUsage, HelpAndErrors) {
  CliRun r = Cli({"--help"});
  EXPECT_EQ(r.code, ExitCode::kOk);
  EXPECT_NE(r.out.find("grid"), std::string::npos);
  r = Cli({"train", "--help"});
  EXPECT_EQ(r.code, ExitCode::kOk);
  EXPECT_NE(r.out.find("--kernel"), std::string::npos);
  r = Cli({});
  EXPECT_EQ(r.code, ExitCode::kUsageError);
  r = Cli({"train", "--bogus-flag", "--out", "x"});
  EXPECT_EQ(r.code, ExitCode::kUsageError);
  EXPECT_NE(r.err.find("--bogus-flag"), std::string::npos);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_EQ(Cli({"frobnicate"}).code, ExitCode::kUsageError);
  EXPECT_EQ(Cli({"train", "--sigma", "abc", "--out", "x"}).code, ExitCode::kUsageError);
  EXPECT_EQ(Cli({"report", "--in", "/nonexistent.csv"}).code, ExitCode::kUsageError);
}

TEST(CliUsage, DataErrorsMapToTwo) {
  vowelkit::testing::TempDir dir("clierr");
  CliRun r = Cli({"train", "--corpus", (dir.path() / "missing").string(), "--out", (dir.path() / "m").string()});
  EXPECT_EQ(r.code, ExitCode::kDataError);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
  std::ofstream(dir.path() / "bad.cfg") << "[svm]\nunknown = 1\n";
  r = Cli({"grid", "--config", (dir.path() / "bad.cfg").string(), "--out", dir.path().string()});
  EXPECT_EQ(r.code, ExitCode::kDataError);
  std::ofstream(dir.path() / "bad.svmodel") << "{\"format\":";
  r = Cli({"predict", "--model", (dir.path() / "bad.svmodel").string(), (dir.path() / "bad.cfg").string()});
  EXPECT_EQ(r.code, ExitCode::kDataError);
  r = Cli({"train", "--corpus", dir.path().string(), "--kernel", "laplace", "--out", "m"});
  EXPECT_EQ(r.code, ExitCode::kDataError);
}

TEST_F(CliTest, TrainPredictEvaluate) {
  const std::string model = Path("m.svmodel");
  CliRun r = Cli({"train", "--config", Path("small.cfg"), "--kernel", "rbf", "--sigma", "0.027", "--C", "10",
               "--frames", "middle:3", "--feature", "mfcc36", "--out", model, "--psd-check", "--workers", "2"});
  ASSERT_EQ(r.code, ExitCode::kOk) << r.err;
  EXPECT_NE(r.out.find("resolved configuration"), std::string::npos);
  EXPECT_NE(r.out.find("seed = 5"), std::string::npos);
  EXPECT_NE(r.out.find("sigma = 0.027"), std::string::npos);
  EXPECT_NE(r.out.find("kernels = rbf\n"), std::string::npos);
  EXPECT_NE(r.out.find("is_psd=true"), std::string::npos);
  const OvOModel m = LoadModel(model);
  EXPECT_EQ(m.binaries.size(), 10u);
  EXPECT_EQ(m.binaries[0].kernel, KernelSpec::Rbf(0.027));

  // The echoed configuration reproduces the run.
  const std::string echo = r.out.substr(r.out.find('\n') + 1, r.out.find("# end configuration") - r.out.find('\n') - 1);
  std::ofstream(Path("echo.cfg")) << echo;
  r = Cli({"train", "--config", Path("echo.cfg"), "--out", Path("m2.svmodel"), "--workers", "1"});
  ASSERT_EQ(r.code, ExitCode::kOk) << r.err;
  EXPECT_EQ(Slurp(Path("m2.svmodel")), Slurp(model));

  const auto files = ScanCorpus(dir_->path() / "corpus");
  const auto &test_file = files.back();
  r = Cli({"predict", "--model", model, test_file.audio.string()});
  ASSERT_EQ(r.code, ExitCode::kOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    std::istringstream f(line);
    std::string id, truth, predicted;
    long begin = -1, end = -1;
    ASSERT_TRUE(f >> id >> begin >> end >> truth >> predicted) << line;
    EXPECT_LT(begin, end);
    EXPECT_EQ(id, fs::path(test_file.audio).replace_extension().generic_string());
    ++n;
  }
  EXPECT_EQ(n, LoadPhn(test_file.phn, DefaultVowels()).size());
  EXPECT_NE(r.err.find("resolved configuration"), std::string::npos);

  // Audio without a transcription is labelled as one token with an unknown truth.
  RawSignal s = LoadAudio(test_file.audio);
  s.samples.resize(3000);
  WriteWav(Path("lone.wav"), s);
  r = Cli({"predict", "--model", model, Path("lone.wav")});
  ASSERT_EQ(r.code, ExitCode::kOk) << r.err;
  EXPECT_NE(r.out.find(" 0 3000 ? "), std::string::npos) << r.out;

  r = Cli({"evaluate", "--config", Path("small.cfg"), "--model", model, "--out", Path("metrics.json")});
  ASSERT_EQ(r.code, ExitCode::kOk) << r.err;
  EXPECT_NE(r.out.find("phoneme_accuracy = "), std::string::npos);
  EXPECT_NE(r.out.find("n_tokens = 20"), std::string::npos);
  const auto metrics = nlohmann::json::parse(Slurp(Path("metrics.json")));
  EXPECT_EQ(metrics.at("n_tokens").get<int>(), 20);
}

TEST_F(CliTest, ExtractThenTrainFromFeatures) {
  CliRun r = Cli({"extract", "--config", Path("small.cfg"), "--feature", "plp12", "--frames", "fcm:3", "--out",
               Path("feats.json")});
  ASSERT_EQ(r.code, ExitCode::kOk) << r.err;
  EXPECT_NE(r.out.find("skipped = 2"), std::string::npos) << r.out;
  r = Cli({"train", "--features", Path("feats.json"), "--kernel", "sigmoid", "--sigma", "0.1", "--C", "100",
           "--out", Path("plp.svmodel")});
  ASSERT_EQ(r.code, ExitCode::kOk) << r.err;
  EXPECT_NE(r.out.find("features = plp12"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("methods = fcm"), std::string::npos);
  const OvOModel m = LoadModel(Path("plp.svmodel"));
  EXPECT_EQ(m.provenance.frontend.feature_kind, FeatureKind::kPlp);
  EXPECT_EQ(m.provenance.selection.Name(), "fcm:3");
  EXPECT_EQ(m.scaler.dimension(), 12u);
}

TEST_F(CliTest, GridAndReport) {
  const std::string out = Path("results");
  CliRun r = Cli({"grid", "--config", Path("small.cfg"), "--out", out, "--save-best"});
  ASSERT_EQ(r.code, ExitCode::kOk) << r.err;
  for (const char *f : {"report.csv", "report.md", "report.json", "resolved.cfg", "best.svmodel"})
    EXPECT_TRUE(fs::exists(fs::path(out) / f)) << f;
  const auto cells = ParseCsv(Slurp(fs::path(out) / "report.csv"));
  EXPECT_EQ(cells.size(), 2u);
  EXPECT_EQ(LoadExperimentConfig(fs::path(out) / "resolved.cfg").seed, 5u);

  r = Cli({"report", "--in", (fs::path(out) / "report.json").string(), "--format", "csv"});
  ASSERT_EQ(r.code, ExitCode::kOk) << r.err;
  EXPECT_EQ(r.out, Slurp(fs::path(out) / "report.csv"));
  r = Cli({"report", "--in", (fs::path(out) / "report.csv").string(), "--format", "markdown", "--out",
           Path("again.md")});
  ASSERT_EQ(r.code, ExitCode::kOk) << r.err;
  EXPECT_NE(Slurp(Path("again.md")).find("| rbf |"), std::string::npos);
  std::ofstream(Path("junk.csv")) << "a,b\n1,2\n";
  EXPECT_EQ(Cli({"report", "--in", Path("junk.csv")}).code, ExitCode::kDataError);
}

TEST_F(CliTest, WorkersFromEnvironment) {
  ::setenv("VOWELKIT_WORKERS", "3", 1);
  CliRun r = Cli({"extract", "--config", Path("small.cfg"), "--out", Path("f3.json")});
  EXPECT_NE(r.out.find("workers = 3"), std::string::npos);
  r = Cli({"extract", "--config", Path("small.cfg"), "--workers", "1", "--out", Path("f1.json")});
  EXPECT_NE(r.out.find("workers = 1"), std::string::npos);
  ::setenv("VOWELKIT_WORKERS", "many", 1);
  EXPECT_EQ(Cli({"extract", "--config", Path("small.cfg"), "--out", Path("f.json")}).code, ExitCode::kDataError);
  ::unsetenv("VOWELKIT_WORKERS");
  EXPECT_EQ(Slurp(Path("f1.json")), Slurp(Path("f3.json")));
}

}  // namespace
}  // namespace vowelkit
