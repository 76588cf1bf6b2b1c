// tools/cli.cc

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

#include "cli.h"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "vowelkit/audio_io.h"
#include "vowelkit/corpus.h"
#include "vowelkit/dataset.h"
#include "vowelkit/experiment.h"
#include "vowelkit/kernels.h"
#include "vowelkit/multiclass.h"
#include "vowelkit/parallel.h"

namespace vowelkit::cli {

namespace fs = std::filesystem;

namespace {

// Options shared by every subcommand that touches a corpus or a config.
struct CommonOptions {
  std::string config_path;
  std::string corpus;
  std::optional<std::size_t> workers;
  std::optional<std::uint64_t> seed;
  std::optional<int> sample_rate;

  void Register(CLI::App *app, bool with_corpus) {
    app->add_option("--config", config_path, "Experiment config file (key = value sections)")
        ->check(CLI::ExistingFile);
    if (with_corpus) app->add_option("--corpus", corpus, "Corpus root holding train/ and test/");
    app->add_option("--workers", workers, "Worker threads (default: VOWELKIT_WORKERS or all cores)");
    app->add_option("--seed", seed, "Random seed for FCM initialisation");
    app->add_option("--sample-rate", sample_rate, "Sample rate of headerless PCM16 input");
  }

  ExperimentConfig Resolve() const {
    ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : LoadExperimentConfig(config_path);
    if (!corpus.empty()) cfg.corpus_root = corpus;
    if (seed) cfg.seed = *seed;
    if (sample_rate) cfg.raw_sample_rate = *sample_rate;
    if (workers) {
      cfg.workers = *workers;
    } else if (const char *env = std::getenv("VOWELKIT_WORKERS"); env && *env) {
      try {
        cfg.workers = std::stoul(env);
      } catch (const std::exception &) {
        throw InvalidInput(std::string("VOWELKIT_WORKERS='") + env + "' is not a number");
      }
    }
    if (cfg.workers == 0) cfg.workers = DefaultWorkerCount();
    return cfg;
  }
};

// Single-cell choices for extract/train; unset values fall back to the first
// entry of the config grid.
struct CellOptions {
  std::string feature, frames, kernel;
  std::optional<double> sigma, c;

  void RegisterFeatures(CLI::App *app) {
    app->add_option("--feature", feature, "Feature set, e.g. mfcc36, mfcc12, plp36");
    app->add_option("--frames", frames, "Frame selection, e.g. middle:3 or fcm:5");
  }
  void RegisterSvm(CLI::App *app) {
    app->add_option("--kernel", kernel, "Kernel: rbf, polynomial, sigmoid or linear");
    app->add_option("--sigma", sigma, "Kernel scale sigma");
    app->add_option("--C", c, "Regularisation penalty C");
  }

  // Narrows cfg.grid to the single chosen cell.
  void Apply(ExperimentConfig &cfg) const {
    if (!feature.empty()) cfg.grid.features = {feature};
    if (!frames.empty()) {
      const auto sel = ParseSelection(frames, cfg.fcm);
      cfg.grid.methods = {sel.kind};
      cfg.grid.ks = {sel.k};
    }
    if (!kernel.empty()) cfg.grid.kernels = {ParseKernelKind(kernel)};
    if (sigma) cfg.grid.sigmas = {*sigma};
    if (c) cfg.grid.c_values = {*c};
    cfg.grid.features.resize(1);
    cfg.grid.methods.resize(1);
    cfg.grid.ks.resize(1);
    cfg.grid.kernels.resize(1);
    cfg.grid.sigmas.resize(1);
    cfg.grid.c_values.resize(1);
    cfg.Validate();
  }
};

void EchoConfig(std::ostream &os, const std::string &command, const std::string &body) {
  os << "# vowelkit " << command << ": resolved configuration\n" << body << "# end configuration\n";
}

Corpus RequireCorpus(const ExperimentConfig &cfg) {
  if (cfg.corpus_root.empty()) throw InvalidInput("no corpus given (use --corpus or [corpus] root)");
  Corpus corpus = LoadCorpus(cfg.corpus_root, cfg.phonemes, cfg.raw_sample_rate);
  if (corpus.token_count() == 0)
    throw InvalidInput("no whitelisted phoneme tokens under '" + cfg.corpus_root.string() + "'");
  return corpus;
}

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void PrintEval(std::ostream &out, const EvalResult &eval, const std::vector<std::string> &labels) {
  out << "frame_accuracy = " << FormatDouble(eval.frame_accuracy) << "\n"
      << "phoneme_accuracy = " << FormatDouble(eval.phoneme_accuracy) << "\n"
      << "n_frames = " << eval.n_frames << "\n"
      << "n_tokens = " << eval.n_tokens << "\n"
      << "confusion (rows: true, columns: predicted)\n";
  out << std::setw(6) << "";
  for (const auto &l : labels) out << std::setw(6) << l;
  out << "\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << std::setw(6) << labels[i];
    for (std::size_t v : eval.confusion[i]) out << std::setw(6) << v;
    out << "\n";
  }
}

int RunExtract(const CommonOptions &common, const CellOptions &cell, const std::string &out_path,
               std::ostream &out) {
  ExperimentConfig cfg = common.Resolve();
  cell.Apply(cfg);
  EchoConfig(out, "extract", cfg.ToIni());
  const Corpus corpus = RequireCorpus(cfg);
  const auto provenance = cfg.MakeProvenance(cfg.grid.features[0], cfg.grid.methods[0], cfg.grid.ks[0]);
  const FeatureSet set = ExtractFeatureSet(corpus, provenance, cfg.workers);
  SaveFeatureSet(set, out_path);
  out << "train_tokens = " << set.train.size() << "\n"
      << "test_tokens = " << set.test.size() << "\n"
      << "skipped = " << set.skipped() << "\n"
      << "classes = " << set.label_names.size() << "\n"
      << "wrote " << out_path << "\n";
  return kOk;
}

int RunTrain(const CommonOptions &common, const CellOptions &cell, const std::string &features_path,
             const std::string &out_path, bool psd_check, std::ostream &out) {
  ExperimentConfig cfg = common.Resolve();
  cell.Apply(cfg);
  FeatureSet set;
  if (!features_path.empty()) {
    set = LoadFeatureSet(features_path);
    cfg.grid.features = {FeatureName(set.provenance.frontend)};
    cfg.grid.methods = {set.provenance.selection.kind};
    cfg.grid.ks = {set.provenance.selection.k};
    cfg.fcm = set.provenance.selection.fcm;
    cfg.seed = set.provenance.selection.fcm.seed;
  }
  std::ostringstream echo;
  echo << cfg.ToIni();
  if (!features_path.empty()) echo << "# features loaded from " << features_path << "\n";
  EchoConfig(out, "train", echo.str());
  if (features_path.empty()) {
    const Corpus corpus = RequireCorpus(cfg);
    set = ExtractFeatureSet(corpus, cfg.MakeProvenance(cfg.grid.features[0], cfg.grid.methods[0], cfg.grid.ks[0]),
                            cfg.workers);
  }
  const PreparedData data = BuildDataset(set);
  SvmParams params = cfg.svm;
  params.c = cfg.grid.c_values[0];
  params.kernel = cfg.Kernel(cfg.grid.kernels[0], cfg.grid.sigmas[0]);

  if (psd_check) {
    const std::size_t n = std::min<std::size_t>(data.train.x.rows(), 300);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i * data.train.x.rows() / n;
    const Matrix sample = data.train.x.SelectRows(idx);
    const PsdReport psd = PsdCheck(GramMatrix(params.kernel, sample, sample), 1e-8);
    out << "psd_check rows=" << n << " min_eigenvalue=" << FormatDouble(psd.min_eigenvalue)
        << " is_psd=" << (psd.is_psd ? "true" : "false") << "\n";
  }

  const auto t0 = std::chrono::steady_clock::now();
  const OvOModel model = TrainModel(data, set.provenance, params, cfg.workers);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  SaveModel(model, out_path);
  out << "classes = " << model.num_classes() << "\n"
      << "binary_models = " << model.binaries.size() << "\n"
      << "converged_pairs = " << model.converged_pairs() << "\n"
      << "train_frames = " << data.train.x.rows() << "\n"
      << "train_seconds = " << FormatDouble(seconds) << "\n"
      << "wrote " << out_path << "\n";
  return kOk;
}

int RunPredict(const CommonOptions &common, const std::string &model_path,
               const std::vector<std::string> &audio, std::ostream &out, std::ostream &err) {
  const ExperimentConfig cfg = common.Resolve();
  const OvOModel model = LoadModel(model_path);
  std::ostringstream echo;
  echo << "model = " << model_path << "\n"
       << "provenance = " << model.provenance.Describe() << "\n"
       << "kernel = " << model.binaries.front().kernel.Describe() << "\n"
       << "phonemes = ";
  for (const auto &p : cfg.phonemes) echo << p << " ";
  echo << "\n";
  if (cfg.raw_sample_rate) echo << "raw_sample_rate = " << *cfg.raw_sample_rate << "\n";
  EchoConfig(err, "predict", echo.str());

  for (const auto &file : audio) {
    const fs::path path(file);
    const RawSignal signal = LoadAudio(path, cfg.raw_sample_rate);
    fs::path phn = path;
    phn.replace_extension(".phn");
    if (!fs::exists(phn)) phn.replace_extension(".PHN");
    std::vector<PhonemeToken> tokens;
    if (fs::exists(phn)) {
      tokens = LoadPhn(phn, cfg.phonemes, signal.samples.size());
    } else {
      tokens.push_back(PhonemeToken{"?", 0, static_cast<std::int64_t>(signal.samples.size()), {}, Split::kTest});
    }
    fs::path id = path;
    id.replace_extension();
    for (const auto &t : tokens) {
      const auto frames = TokenFeatures(signal, t, model.provenance);
      std::string predicted = "-";
      if (frames) predicted = model.label_names[PredictPhoneme(model, ApplyScaler(model.scaler, *frames))];
      out << id.generic_string() << ' ' << t.begin << ' ' << t.end << ' ' << t.label << ' ' << predicted << "\n";
    }
  }
  return kOk;
}

int RunEvaluate(const CommonOptions &common, const std::string &model_path, const std::string &split,
                const std::string &out_path, std::ostream &out) {
  const ExperimentConfig cfg = common.Resolve();
  const OvOModel model = LoadModel(model_path);
  std::ostringstream echo;
  echo << cfg.ToIni() << "# model = " << model_path << "\n# split = " << split << "\n";
  EchoConfig(out, "evaluate", echo.str());
  const Corpus corpus = RequireCorpus(cfg);
  const FeatureSet set = ExtractFeatureSet(corpus, model.provenance, cfg.workers, model.label_names);
  const auto &tokens = split == "train" ? set.train : set.test;
  const EvalResult eval =
      Evaluate(model, ScaleTokens(model.scaler, tokens), set.provenance.Fingerprint(), cfg.workers);
  out << "skipped = " << (split == "train" ? set.skipped_train : set.skipped_test) << "\n";
  PrintEval(out, eval, model.label_names);
  if (!out_path.empty()) {
    nlohmann::json j{{"frame_accuracy", eval.frame_accuracy},
                     {"phoneme_accuracy", eval.phoneme_accuracy},
                     {"n_frames", eval.n_frames},
                     {"n_tokens", eval.n_tokens},
                     {"label_names", model.label_names},
                     {"confusion", eval.confusion}};
    std::ofstream f(out_path);
    if (!f) throw IoError("cannot open '" + out_path + "' for writing");
    f << j.dump(1) << "\n";
  }
  return kOk;
}

int RunGrid(const CommonOptions &common, const std::string &out_dir, bool save_best, bool no_cache,
            std::ostream &out, std::ostream &err) {
  const ExperimentConfig cfg = common.Resolve();
  cfg.Validate();
  EchoConfig(out, "grid", cfg.ToIni());
  const Corpus corpus = RequireCorpus(cfg);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create '" + out_dir + "': " + ec.message());

  GridOptions options;
  options.cache_features = !no_cache;
  options.keep_best_model = save_best;
  const GridOutcome outcome = GridSearch(cfg, corpus, options);
  const fs::path dir(out_dir);
  EmitReport(outcome.report, ReportFormat::kCsv, dir / "report.csv");
  EmitReport(outcome.report, ReportFormat::kMarkdown, dir / "report.md");
  EmitReport(outcome.report, ReportFormat::kJson, dir / "report.json");
  {
    std::ofstream f(dir / "resolved.cfg");
    if (!f) throw IoError("cannot write resolved.cfg");
    f << cfg.ToIni();
  }
  std::size_t failed = 0;
  for (const auto &c : outcome.report.cells) {
    if (c.ok()) continue;
    ++failed;
    err << "cell " << ToString(c.kernel) << " " << c.feature << " C=" << FormatDouble(c.c)
        << " sigma=" << FormatDouble(c.sigma) << " " << ToString(c.method) << ":" << c.k
        << " failed: " << c.error << "\n";
  }
  if (save_best && outcome.best_model) {
    SaveModel(*outcome.best_model, dir / "best.svmodel");
    out << "wrote " << (dir / "best.svmodel").string() << "\n";
  }
  out << "cells = " << outcome.report.cells.size() << " (failed " << failed << ")\n"
      << "wrote " << (dir / "report.csv").string() << ", report.md, report.json\n";
  return failed == outcome.report.cells.size() ? kDataError : kOk;
}

int RunReportCommand(const std::string &in_path, const std::string &format, const std::string &out_path,
              std::ostream &out) {
  const ReportFormat fmt = ParseReportFormat(format);
  std::string ext = fs::path(in_path).extension().string();
  for (auto &ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  const std::string text = ReadFile(in_path);
  vowelkit::RunReport report;
  if (ext == ".json") {
    report = ParseJsonReport(text);
  } else {
    report.cells = ParseCsv(text);
  }
  if (report.cells.empty()) throw InvalidInput("report '" + in_path + "' has no cells");
  EchoConfig(out_path.empty() ? std::cerr : out, "report",
             "in = " + in_path + "\nformat = " + format + "\nout = " + out_path + "\n");
  if (out_path.empty()) {
    switch (fmt) {
      case ReportFormat::kCsv: out << RenderCsv(report); break;
      case ReportFormat::kMarkdown: out << RenderMarkdown(report); break;
      case ReportFormat::kJson: out << RenderJson(report); break;
    }
  } else {
    EmitReport(report, fmt, out_path);
    out << "wrote " << out_path << "\n";
  }
  return kOk;
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"vowelkit: kernel-SVM vowel recognition toolkit", "vowelkit"};
  app.require_subcommand(1, 1);

  CommonOptions common;
  CellOptions cell;
  std::string out_path, features_path, model_path, split = "test", in_path, format = "markdown";
  std::vector<std::string> audio;
  bool psd_check = false, save_best = false, no_cache = false;

  auto *extract = app.add_subcommand("extract", "Run the front end on a corpus and write a feature file");
  common.Register(extract, true);
  cell.RegisterFeatures(extract);
  extract->add_option("--out", out_path, "Output feature file (.json)")->required();

  auto *train = app.add_subcommand("train", "Train a one-vs-one SVM and write a .svmodel file");
  common.Register(train, true);
  cell.RegisterFeatures(train);
  cell.RegisterSvm(train);
  train->add_option("--features", features_path, "Feature file from `extract` instead of a corpus")
      ->check(CLI::ExistingFile);
  train->add_option("--out", out_path, "Output model file (.svmodel)")->required();
  train->add_flag("--psd-check", psd_check, "Report the smallest Gram eigenvalue on a training sample");

  auto *predict = app.add_subcommand("predict", "Label the vowel tokens of audio files");
  common.Register(predict, false);
  predict->add_option("--model", model_path, "Model file")->required()->check(CLI::ExistingFile);
  predict->add_option("audio", audio, "Audio files (sibling .phn files give token spans)")->required();

  auto *evaluate = app.add_subcommand("evaluate", "Score a model on a corpus split");
  common.Register(evaluate, true);
  evaluate->add_option("--model", model_path, "Model file")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--split", split, "Corpus split to score")->check(CLI::IsMember({"train", "test"}));
  evaluate->add_option("--out", out_path, "Optional JSON metrics file");

  auto *grid = app.add_subcommand("grid", "Sweep the configured grid and write reports");
  common.Register(grid, true);
  grid->add_option("--out", out_path, "Output directory")->required();
  grid->add_flag("--save-best", save_best, "Also write the best cell's model as best.svmodel");
  grid->add_flag("--no-cache", no_cache, "Recompute features for every cell");

  auto *report = app.add_subcommand("report", "Re-render a stored report (.csv or .json)");
  report->add_option("--in", in_path, "Report file")->required()->check(CLI::ExistingFile);
  report->add_option("--format", format, "csv, markdown or json")
      ->check(CLI::IsMember({"csv", "markdown", "md", "json"}));
  report->add_option("--out", out_path, "Output file (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "vowelkit: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kUsageError;
  }

  try {
    if (*extract) return RunExtract(common, cell, out_path, out);
    if (*train) return RunTrain(common, cell, features_path, out_path, psd_check, out);
    if (*predict) return RunPredict(common, model_path, audio, out, err);
    if (*evaluate) return RunEvaluate(common, model_path, split, out_path, out);
    if (*grid) return RunGrid(common, out_path, save_best, no_cache, out, err);
    if (*report) return RunReportCommand(in_path, format, out_path, out);
  } catch (const InvalidInput &e) {
    err << "vowelkit: invalid input: " << e.what() << "\n";
    return kDataError;
  } catch (const TooShort &e) {
    err << "vowelkit: " << e.what() << "\n";
    return kDataError;
  } catch (const DegenerateSpectrum &e) {
    err << "vowelkit: " << e.what() << "\n";
    return kDataError;
  } catch (const FormatError &e) {
    err << "vowelkit: format error: " << e.what() << "\n";
    return kDataError;
  } catch (const IoError &e) {
    err << "vowelkit: I/O error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception &e) {
    err << "vowelkit: internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kUsageError;
}

int RunCli(int argc, char **argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return RunCli(args, std::cout, std::cerr);
}

}  // namespace vowelkit::cli
