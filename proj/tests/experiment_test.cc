// tests/experiment_test.cc

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

#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "synth.h"
#include "vowelkit/audio_io.h"
#include "vowelkit/error.h"
#include "vowelkit/experiment.h"

namespace vowelkit {
namespace {

namespace fs = std::filesystem;

// CSV with the two timing columns blanked.
std::string WithoutTiming(const std::string &csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() > 9) f[8] = f[9] = "";
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << f[i];
    out << "\n";
  }
  return out.str();
}

class GridTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new vowelkit::testing::TempDir("grid");
    vowelkit::testing::SynthCorpusOptions opt;
    opt.train_per_class = 8;
    opt.test_per_class = 4;
    vowelkit::testing::WriteSynthCorpus(dir_->path(), opt);
    corpus_ = new Corpus(LoadCorpus(dir_->path(), DefaultVowels()));
  }
  static void TearDownTestSuite() {
    delete corpus_;
    delete dir_;
  }

  static ExperimentConfig OneCell() {
    ExperimentConfig cfg;
    cfg.corpus_root = dir_->path();
    cfg.grid.kernels = {KernelKind::kRbf};
    cfg.grid.features = {"mfcc36"};
    cfg.grid.c_values = {10};
    cfg.grid.sigmas = {0.027};
    cfg.grid.ks = {3};
    cfg.grid.methods = {SelectionKind::kMiddle};
    return cfg;
  }

  static vowelkit::testing::TempDir *dir_;
  static Corpus *corpus_;
};

vowelkit::testing::TempDir *GridTest::dir_ = nullptr;
Corpus *GridTest::corpus_ = nullptr;

TEST(Config, DefaultsAndCellCount) {
  ExperimentConfig cfg;
  EXPECT_EQ(cfg.grid.c_values, (std::vector<double>{10, 100, 1000, 10000}));
  EXPECT_EQ(cfg.grid.CellCount(), 3u * 2 * 4 * 2);
  cfg.grid.sigmas = {2};
  EXPECT_EQ(cfg.grid.CellCount(), 24u);
  EXPECT_EQ(cfg.phonemes.size(), 20u);
  EXPECT_EQ(cfg.seed, 1u);
}

TEST(Config, ParseAndEchoRoundTrip) {
  const std::string text =
      "[corpus]\nroot = /data/timit\nphonemes = iy, aa ae\n\n"
      "[frontend]\nhop = 100\n\n[fcm]\ntol = 1e-6\n\n"
      "[svm]\nkkt_tol = 0.01\npoly_degree = 2\n\n"
      "[grid]\nkernels = rbf sigmoid\nfeatures = plp12\nC = 10, 1000\nsigma = 0.027\nK = 3 5 7\nmethods = fcm middle\n\n"
      "[run]\nseed = 42\nworkers = 2\n";
  const ExperimentConfig cfg = ParseExperimentConfig(text);
  EXPECT_EQ(cfg.corpus_root, fs::path("/data/timit"));
  EXPECT_EQ(cfg.phonemes, (std::vector<std::string>{"iy", "aa", "ae"}));
  EXPECT_EQ(cfg.frontend.hop, 100u);
  EXPECT_EQ(cfg.fcm.tol, 1e-6);
  EXPECT_EQ(cfg.svm.kkt_tol, 0.01);
  EXPECT_EQ(cfg.poly_degree, 2);
  EXPECT_EQ(cfg.grid.kernels, (std::vector<KernelKind>{KernelKind::kRbf, KernelKind::kSigmoid}));
  EXPECT_EQ(cfg.grid.c_values, (std::vector<double>{10, 1000}));
  EXPECT_EQ(cfg.grid.ks, (std::vector<std::size_t>{3, 5, 7}));
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.workers, 2u);
  EXPECT_EQ(cfg.grid.CellCount(), 2u * 1 * 2 * 1 * 3 * 2);
  EXPECT_EQ(ParseExperimentConfig(cfg.ToIni()).ToIni(), cfg.ToIni());
  EXPECT_EQ(cfg.MakeProvenance("plp12", SelectionKind::kFcm, 5).selection.fcm.seed, 42u);
}

TEST(Config, Rejections) {
  EXPECT_THROW(ParseExperimentConfig("[svm]\ngamma = 3\n"), FormatError);
  EXPECT_THROW(ParseExperimentConfig("[solver]\nc = 3\n"), FormatError);
  EXPECT_THROW(ParseExperimentConfig("[grid]\nC = ten\n"), FormatError);
  EXPECT_THROW(ParseExperimentConfig("[grid]\nkernels = laplace\n"), FormatError);
  EXPECT_THROW(ParseExperimentConfig("[run]\nseed = -1\n"), FormatError);
  EXPECT_THROW(ParseExperimentConfig("stray = 1\n"), FormatError);
  EXPECT_THROW(ParseExperimentConfig("[grid\n"), FormatError);
  ExperimentConfig cfg;
  cfg.grid.c_values.clear();
  EXPECT_THROW(cfg.Validate(), InvalidInput);
  cfg = ExperimentConfig{};
  cfg.grid.sigmas = {0.0};
  EXPECT_THROW(cfg.Validate(), InvalidInput);
  cfg = ExperimentConfig{};
  cfg.grid.features = {"mfcc20"};
  EXPECT_THROW(cfg.Validate(), InvalidInput);
  EXPECT_THROW(LoadExperimentConfig("/nonexistent/x.cfg"), IoError);
}

TEST(Config, RelativeRootFollowsConfigFile) {
  vowelkit::testing::TempDir dir("cfg");
  std::ofstream(dir.path() / "a.cfg") << "[corpus]\nroot = data/timit\n";
  EXPECT_EQ(LoadExperimentConfig(dir.path() / "a.cfg").corpus_root, dir.path() / "data/timit");
}

TEST(Config, BundledConfigsParse) {
  const fs::path configs = fs::path(VOWELKIT_SOURCE_DIR) / "configs";
  const ExperimentConfig baseline = LoadExperimentConfig(configs / "baseline.cfg");
  EXPECT_EQ(baseline.grid.CellCount(), 24u);
  EXPECT_EQ(baseline.grid.sigmas, std::vector<double>{2});
  const ExperimentConfig frames = LoadExperimentConfig(configs / "frames.cfg");
  EXPECT_EQ(frames.grid.CellCount(), 18u);
  EXPECT_EQ(frames.grid.c_values, std::vector<double>{10});
  EXPECT_EQ(frames.grid.sigmas, std::vector<double>{0.027});
  const ExperimentConfig sweep = LoadExperimentConfig(configs / "sigma_sweep.cfg");
  EXPECT_EQ(sweep.grid.sigmas.size(), 4u);
  for (const auto *c : {&baseline, &frames, &sweep}) {
    EXPECT_NO_THROW(c->Validate());
    EXPECT_EQ(c->phonemes, DefaultVowels());
  }
}

TEST_F(GridTest, SingleCell) {
  const GridOutcome out = GridSearch(OneCell(), *corpus_, GridOptions{});
  ASSERT_EQ(out.report.cells.size(), 1u);
  const CellRecord &c = out.report.cells[0];
  ASSERT_TRUE(c.ok()) << c.error;
  EXPECT_EQ(c.n_train, 40u);
  EXPECT_EQ(c.n_test, 20u);
  EXPECT_EQ(c.converged_pairs, 10u);
  EXPECT_GE(c.phoneme_acc, 0.0);
  EXPECT_LE(c.phoneme_acc, 100.0);
  EXPECT_EQ(out.report.seed, 1u);
  std::size_t total = 0;
  for (const auto &row : c.confusion)
    for (auto v : row) total += v;
  EXPECT_EQ(total, c.n_test);
  const std::string csv = RenderCsv(out.report);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  EXPECT_EQ(csv.substr(0, csv.find('\r')),
            "kernel,feature,C,sigma,K,method,frame_acc,phoneme_acc,train_s,test_s,n_train,n_test,skipped,"
            "converged_pairs");
  EXPECT_FALSE(out.best_model.has_value());
}

TEST_F(GridTest, TwentyFourCellsDeterministicAndCacheInvariant) {
  ExperimentConfig cfg = OneCell();
  cfg.grid.kernels = {KernelKind::kPolynomial, KernelKind::kRbf, KernelKind::kSigmoid};
  cfg.grid.features = {"mfcc36", "plp36"};
  cfg.grid.c_values = {10, 100, 1000, 10000};
  cfg.grid.sigmas = {2};
  GridOptions keep;
  keep.keep_best_model = true;
  const GridOutcome a = GridSearch(cfg, *corpus_, keep);
  ASSERT_EQ(a.report.cells.size(), 24u);
  for (const auto &c : a.report.cells) EXPECT_TRUE(c.ok()) << c.error;
  EXPECT_EQ(a.report.cells[0].kernel, KernelKind::kPolynomial);
  EXPECT_EQ(a.report.cells[1].c, 100.0);
  EXPECT_EQ(a.report.cells[4].feature, "plp36");
  ASSERT_TRUE(a.best_model.has_value());

  const GridOutcome b = GridSearch(cfg, *corpus_, GridOptions{});
  EXPECT_EQ(WithoutTiming(RenderCsv(a.report)), WithoutTiming(RenderCsv(b.report)));
  GridOptions no_cache;
  no_cache.cache_features = false;
  const GridOutcome c = GridSearch(cfg, *corpus_, no_cache);
  EXPECT_EQ(WithoutTiming(RenderCsv(a.report)), WithoutTiming(RenderCsv(c.report)));
  for (std::size_t i = 0; i < 24; ++i) EXPECT_EQ(a.report.cells[i].confusion, c.report.cells[i].confusion);
}

TEST_F(GridTest, FcmSelectionIsSeeded) {
  ExperimentConfig cfg = OneCell();
  cfg.grid.methods = {SelectionKind::kFcm};
  cfg.grid.ks = {3, 5};
  cfg.seed = 9;
  const GridOutcome a = GridSearch(cfg, *corpus_, GridOptions{});
  const GridOutcome b = GridSearch(cfg, *corpus_, GridOptions{});
  EXPECT_EQ(WithoutTiming(RenderCsv(a.report)), WithoutTiming(RenderCsv(b.report)));
}

TEST(Grid, FailingCellsAreIsolated) {
  // Silent tokens: MFCC hits the log floor and works, PLP has a degenerate
  // LP spectrum on every token, so its cells fail.
  vowelkit::testing::TempDir dir("silent");
  for (const char *split : {"train", "test"}) {
    fs::create_directories(dir.path() / split);
    RawSignal s;
    s.samples.assign(8000, 0.0);
    WriteWav(dir.path() / split / "u.wav", s);
    std::ofstream(dir.path() / split / "u.phn") << "0 2000 iy\n2000 4000 aa\n4000 6000 iy\n6000 8000 aa\n";
  }
  ExperimentConfig cfg;
  cfg.grid.kernels = {KernelKind::kRbf};
  cfg.grid.features = {"mfcc36", "plp36"};
  cfg.grid.c_values = {10};
  cfg.grid.sigmas = {2};
  const Corpus corpus = LoadCorpus(dir.path(), cfg.phonemes);
  const GridOutcome out = GridSearch(cfg, corpus, GridOptions{});
  ASSERT_EQ(out.report.cells.size(), 2u);
  EXPECT_TRUE(out.report.cells[0].ok()) << out.report.cells[0].error;
  EXPECT_FALSE(out.report.cells[1].ok());
  const std::string csv = RenderCsv(out.report);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  const std::string md = RenderMarkdown(out.report);
  EXPECT_NE(md.find("## Failed cells"), std::string::npos);
  EXPECT_NE(md.find("plp36"), std::string::npos);
}

RunReport SyntheticReport() {
  RunReport r;
  r.seed = 3;
  r.config_echo = "[run]\nseed = 3\n";
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (auto kernel : {KernelKind::kPolynomial, KernelKind::kRbf, KernelKind::kSigmoid})
    for (std::size_t k : {3u, 5u, 7u})
      for (auto method : {SelectionKind::kFcm, SelectionKind::kMiddle}) {
        CellRecord c;
        c.kernel = kernel;
        c.feature = "mfcc36";
        c.c = 10;
        c.sigma = 0.027;
        c.k = k;
        c.method = method;
        c.frame_acc = u(rng);
        c.phoneme_acc = u(rng) / 3.0;
        c.train_s = u(rng) * 1e-3;
        c.test_s = 1.0 / 3.0;
        c.n_train = 100;
        c.n_test = 40;
        c.converged_pairs = 190;
        c.label_names = {"aa", "iy"};
        c.confusion = {{1, 2}, {3, 4}};
        r.cells.push_back(c);
      }
  return r;
}

TEST(Report, MarkdownPivotShapes) {
  const std::string md = RenderMarkdown(SyntheticReport());
  const auto pos = md.find("by kernel, K and frame selection");
  ASSERT_NE(pos, std::string::npos);
  std::istringstream in(md.substr(pos));
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(in, line))
    if (line.rfind("| ", 0) == 0) {
      rows.push_back(line);
      if (rows.size() == 4) break;
    }
  ASSERT_EQ(rows.size(), 4u);  // header + 3 kernels
  EXPECT_EQ(std::count(rows[0].begin(), rows[0].end(), '|'), 8);  // kernel + 6 columns
  EXPECT_NE(rows[0].find("K=7 middle"), std::string::npos);
  EXPECT_EQ(rows[1].rfind("| polynomial |", 0), 0u);
  EXPECT_EQ(rows[3].rfind("| sigmoid |", 0), 0u);
  EXPECT_NE(md.find("by kernel, C and feature"), std::string::npos);
}

TEST(Report, CsvAndJsonRoundTrip) {
  const RunReport r = SyntheticReport();
  const auto cells = ParseCsv(RenderCsv(r));
  ASSERT_EQ(cells.size(), r.cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    EXPECT_EQ(cells[i].frame_acc, r.cells[i].frame_acc);
    EXPECT_EQ(cells[i].phoneme_acc, r.cells[i].phoneme_acc);
    EXPECT_EQ(cells[i].train_s, r.cells[i].train_s);
    EXPECT_EQ(cells[i].test_s, r.cells[i].test_s);
    EXPECT_EQ(cells[i].c, r.cells[i].c);
    EXPECT_EQ(cells[i].sigma, r.cells[i].sigma);
    EXPECT_EQ(cells[i].k, r.cells[i].k);
    EXPECT_EQ(cells[i].kernel, r.cells[i].kernel);
    EXPECT_EQ(cells[i].method, r.cells[i].method);
    EXPECT_EQ(cells[i].converged_pairs, r.cells[i].converged_pairs);
  }
  RunReport again;
  again.cells = cells;
  EXPECT_EQ(RenderCsv(again), RenderCsv(r));
  EXPECT_EQ(RenderJson(ParseJsonReport(RenderJson(r))), RenderJson(r));
  EXPECT_THROW(ParseCsv("kernel,feature\r\n"), FormatError);
  EXPECT_THROW(ParseCsv(RenderCsv(r) + "rbf,mfcc36,10\r\n"), FormatError);
  EXPECT_THROW(ParseJsonReport("{}"), FormatError);
}

TEST(Report, EmitErrors) {
  vowelkit::testing::TempDir dir("emit");
  const RunReport r = SyntheticReport();
  EmitReport(r, ReportFormat::kCsv, dir.path() / "r.csv");
  EXPECT_TRUE(fs::exists(dir.path() / "r.csv"));
  EXPECT_THROW(EmitReport(r, ReportFormat::kMarkdown, dir.path() / "missing" / "r.md"), IoError);
  EXPECT_THROW(EmitReport(RunReport{}, ReportFormat::kCsv, dir.path() / "e.csv"), InvalidInput);
  EXPECT_EQ(ParseReportFormat("md"), ReportFormat::kMarkdown);
  EXPECT_THROW(ParseReportFormat("xlsx"), InvalidInput);
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(1e4), "10000");
}

}  // namespace
}  // namespace vowelkit
