// core/include/vowelkit/experiment.h

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

#ifndef VOWELKIT_EXPERIMENT_H_
#define VOWELKIT_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vowelkit/dataset.h"

namespace vowelkit {

struct GridSpec {
  std::vector<KernelKind> kernels{KernelKind::kPolynomial, KernelKind::kRbf, KernelKind::kSigmoid};
  std::vector<std::string> features{"mfcc36", "plp36"};
  std::vector<double> c_values{10, 100, 1000, 10000};
  std::vector<double> sigmas{0.027, 2};
  std::vector<std::size_t> ks{3};
  std::vector<SelectionKind> methods{SelectionKind::kMiddle};

  std::size_t CellCount() const;
};

struct ExperimentConfig {
  std::filesystem::path corpus_root;
  std::vector<std::string> phonemes = DefaultVowels();
  std::optional<int> raw_sample_rate;
  FrontendConfig frontend;
  FcmOptions fcm;
  // C and the kernel are set per grid cell; the polynomial degree/shift and
  // the sigmoid shift come from here.
  SvmParams svm;
  int poly_degree = 3;
  double poly_r = 0.0;
  double sigmoid_r = 0.0;
  GridSpec grid;
  std::uint64_t seed = 1;
  // 0 lets the caller pick; the library then runs single-threaded.
  std::size_t workers = 0;

  void Validate() const;
  KernelSpec Kernel(KernelKind kind, double sigma) const;
  Provenance MakeProvenance(const std::string &feature, SelectionKind method, std::size_t k) const;
  // Fully resolved configuration in the same key = value format it is read
  // from; reading it back reproduces this config.
  std::string ToIni() const;
};

// Sections [corpus] [frontend] [fcm] [svm] [grid] [run]; unknown keys are
// rejected. List values are comma- or space-separated.
ExperimentConfig ParseExperimentConfig(const std::string &text);
ExperimentConfig LoadExperimentConfig(const std::filesystem::path &path);

struct CellRecord {
  KernelKind kernel = KernelKind::kRbf;
  std::string feature;
  double c = 0.0;
  double sigma = 0.0;
  std::size_t k = 0;
  SelectionKind method = SelectionKind::kMiddle;
  double frame_acc = 0.0;
  double phoneme_acc = 0.0;
  double train_s = 0.0;
  double test_s = 0.0;
  std::size_t n_train = 0;  // training tokens
  std::size_t n_test = 0;   // test tokens
  std::size_t skipped = 0;
  std::size_t converged_pairs = 0;
  std::vector<std::string> label_names;
  std::vector<std::vector<std::size_t>> confusion;
  std::string error;  // non-empty when the cell failed

  bool ok() const { return error.empty(); }
};

struct RunReport {
  std::vector<CellRecord> cells;
  std::string config_echo;
  std::uint64_t seed = 0;
};

struct GridOptions {
  bool cache_features = true;
  bool keep_best_model = false;
};

struct GridOutcome {
  RunReport report;
  std::optional<OvOModel> best_model;  // highest phoneme accuracy, first on ties
};

// Runs every cell of the Cartesian grid in coordinate order (kernel,
// feature, C, sigma, K, method). A failing cell records its error and the
// sweep continues.
GridOutcome GridSearch(const ExperimentConfig &config, const Corpus &corpus,
                       const GridOptions &options = {});

// Trains one configuration end to end.
OvOModel TrainModel(const PreparedData &data, const Provenance &provenance, const SvmParams &params,
                    std::size_t workers);

enum class ReportFormat { kCsv, kMarkdown, kJson };
ReportFormat ParseReportFormat(const std::string &name);

std::string FormatDouble(double v);

// Successful cells, one row each.
std::string RenderCsv(const RunReport &report);
std::vector<CellRecord> ParseCsv(const std::string &text);
std::string RenderMarkdown(const RunReport &report);
std::string RenderJson(const RunReport &report);
RunReport ParseJsonReport(const std::string &text);

void EmitReport(const RunReport &report, ReportFormat format, const std::filesystem::path &path);

}  // namespace vowelkit

#endif  // VOWELKIT_EXPERIMENT_H_
