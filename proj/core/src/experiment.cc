// core/src/experiment.cc

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

#include "vowelkit/experiment.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <tuple>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace vowelkit {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

std::vector<std::string> SplitList(const std::string &value) {
  std::vector<std::string> out;
  std::string item;
  for (char ch : value + ",") {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else {
      item.push_back(ch);
    }
  }
  return out;
}

double ParseDouble(const std::string &s, const std::string &what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidInput("'" + s + "' is not a number (" + what + ")");
  return v;
}

template <typename Int>
Int ParseInt(const std::string &s, const std::string &what) {
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidInput("'" + s + "' is not an integer (" + what + ")");
  return v;
}

template <typename T, typename F>
std::string JoinList(const std::vector<T> &items, F &&fmt) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += fmt(items[i]);
  }
  return out;
}

double Seconds(std::chrono::steady_clock::duration d) {
  return std::chrono::duration<double>(d).count();
}

std::string CsvField(const std::string &s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::vector<std::string> ParseCsvLine(const std::string &line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  if (quoted) throw FormatError("unterminated quote on CSV line " + std::to_string(line_no));
  fields.push_back(cur);
  return fields;
}

const std::vector<std::string> kCsvColumns = {
    "kernel", "feature", "C",       "sigma",  "K",       "method",  "frame_acc",
    "phoneme_acc", "train_s", "test_s", "n_train", "n_test", "skipped", "converged_pairs"};

std::string Fixed2(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::size_t GridSpec::CellCount() const {
  return kernels.size() * features.size() * c_values.size() * sigmas.size() * ks.size() *
         methods.size();
}

void ExperimentConfig::Validate() const {
  if (grid.CellCount() == 0) throw InvalidInput("every grid list must be non-empty");
  frontend.Validate();
  for (const auto &f : grid.features) ApplyFeatureName(frontend, f).Validate();
  for (double c : grid.c_values)
    if (!(c > 0.0)) throw InvalidInput("grid C values must be positive");
  for (auto kind : grid.kernels)
    for (double s : grid.sigmas) Kernel(kind, s).Validate();
  for (std::size_t k : grid.ks)
    if (k == 0) throw InvalidInput("grid K values must be >= 1");
  if (!(fcm.fuzzifier > 1.0) || !(fcm.tol > 0.0)) throw InvalidInput("bad FCM options");
}

KernelSpec ExperimentConfig::Kernel(KernelKind kind, double sigma) const {
  switch (kind) {
    case KernelKind::kLinear: return KernelSpec::Linear();
    case KernelKind::kPolynomial: return KernelSpec::Polynomial(sigma, poly_r, poly_degree);
    case KernelKind::kRbf: return KernelSpec::Rbf(sigma);
    case KernelKind::kSigmoid: return KernelSpec::Sigmoid(sigma, sigmoid_r);
  }
  return KernelSpec::Rbf(sigma);
}

Provenance ExperimentConfig::MakeProvenance(const std::string &feature, SelectionKind method,
                                            std::size_t k) const {
  Provenance p;
  p.frontend = ApplyFeatureName(frontend, feature);
  p.selection.kind = method;
  p.selection.k = k;
  p.selection.fcm = fcm;
  p.selection.fcm.seed = seed;
  return p;
}

std::string ExperimentConfig::ToIni() const {
  std::ostringstream os;
  os << "[corpus]\n";
  os << "root = " << corpus_root.generic_string() << "\n";
  os << "phonemes = " << JoinList(phonemes, [](const auto &s) { return s; }) << "\n";
  if (raw_sample_rate) os << "raw_sample_rate = " << *raw_sample_rate << "\n";
  os << "\n[frontend]\n";
  os << "pre_emphasis = " << FormatDouble(frontend.pre_emphasis) << "\n";
  os << "frame_len = " << frontend.frame_len << "\n";
  os << "hop = " << frontend.hop << "\n";
  os << "num_ceps = " << frontend.num_ceps << "\n";
  os << "num_mel_filters = " << frontend.num_mel_filters << "\n";
  os << "lp_order = " << frontend.lp_order << "\n";
  os << "\n[fcm]\n";
  os << "fuzzifier = " << FormatDouble(fcm.fuzzifier) << "\n";
  os << "tol = " << FormatDouble(fcm.tol) << "\n";
  os << "max_iter = " << fcm.max_iter << "\n";
  os << "\n[svm]\n";
  os << "kkt_tol = " << FormatDouble(svm.kkt_tol) << "\n";
  os << "alpha_eps = " << FormatDouble(svm.alpha_eps) << "\n";
  os << "max_passes = " << svm.max_passes << "\n";
  os << "max_iter = " << svm.max_iter << "\n";
  os << "poly_degree = " << poly_degree << "\n";
  os << "poly_r = " << FormatDouble(poly_r) << "\n";
  os << "sigmoid_r = " << FormatDouble(sigmoid_r) << "\n";
  os << "\n[grid]\n";
  os << "kernels = " << JoinList(grid.kernels, [](auto k) { return ToString(k); }) << "\n";
  os << "features = " << JoinList(grid.features, [](const auto &s) { return s; }) << "\n";
  os << "C = " << JoinList(grid.c_values, FormatDouble) << "\n";
  os << "sigma = " << JoinList(grid.sigmas, FormatDouble) << "\n";
  os << "K = " << JoinList(grid.ks, [](auto k) { return std::to_string(k); }) << "\n";
  os << "methods = " << JoinList(grid.methods, [](auto m) { return ToString(m); }) << "\n";
  os << "\n[run]\n";
  os << "seed = " << seed << "\n";
  os << "workers = " << workers << "\n";
  return os.str();
}

ExperimentConfig ParseExperimentConfig(const std::string &text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error &e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  ExperimentConfig cfg;
  for (const auto &[section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw FormatError("config: key '" + section + "' outside a section");
    for (const auto &[key, node] : body) {
      const std::string v = node.data();
      const std::string what = section + "." + key;
      try {
        if (section == "corpus") {
          if (key == "root") cfg.corpus_root = v;
          else if (key == "phonemes") cfg.phonemes = SplitList(v);
          else if (key == "raw_sample_rate") cfg.raw_sample_rate = ParseInt<int>(v, what);
          else throw FormatError("config: unknown key " + what);
        } else if (section == "frontend") {
          if (key == "pre_emphasis") cfg.frontend.pre_emphasis = ParseDouble(v, what);
          else if (key == "frame_len") cfg.frontend.frame_len = ParseInt<std::size_t>(v, what);
          else if (key == "hop") cfg.frontend.hop = ParseInt<std::size_t>(v, what);
          else if (key == "num_ceps") cfg.frontend.num_ceps = ParseInt<std::size_t>(v, what);
          else if (key == "num_mel_filters") cfg.frontend.num_mel_filters = ParseInt<std::size_t>(v, what);
          else if (key == "lp_order") cfg.frontend.lp_order = ParseInt<std::size_t>(v, what);
          else throw FormatError("config: unknown key " + what);
        } else if (section == "fcm") {
          if (key == "fuzzifier") cfg.fcm.fuzzifier = ParseDouble(v, what);
          else if (key == "tol") cfg.fcm.tol = ParseDouble(v, what);
          else if (key == "max_iter") cfg.fcm.max_iter = ParseInt<std::size_t>(v, what);
          else throw FormatError("config: unknown key " + what);
        } else if (section == "svm") {
          if (key == "kkt_tol") cfg.svm.kkt_tol = ParseDouble(v, what);
          else if (key == "alpha_eps") cfg.svm.alpha_eps = ParseDouble(v, what);
          else if (key == "max_passes") cfg.svm.max_passes = ParseInt<std::size_t>(v, what);
          else if (key == "max_iter") cfg.svm.max_iter = ParseInt<std::size_t>(v, what);
          else if (key == "poly_degree") cfg.poly_degree = ParseInt<int>(v, what);
          else if (key == "poly_r") cfg.poly_r = ParseDouble(v, what);
          else if (key == "sigmoid_r") cfg.sigmoid_r = ParseDouble(v, what);
          else throw FormatError("config: unknown key " + what);
        } else if (section == "grid") {
          const auto items = SplitList(v);
          if (key == "kernels") {
            cfg.grid.kernels.clear();
            for (const auto &s : items) cfg.grid.kernels.push_back(ParseKernelKind(s));
          } else if (key == "features") {
            cfg.grid.features = items;
          } else if (key == "C") {
            cfg.grid.c_values.clear();
            for (const auto &s : items) cfg.grid.c_values.push_back(ParseDouble(s, what));
          } else if (key == "sigma") {
            cfg.grid.sigmas.clear();
            for (const auto &s : items) cfg.grid.sigmas.push_back(ParseDouble(s, what));
          } else if (key == "K") {
            cfg.grid.ks.clear();
            for (const auto &s : items) cfg.grid.ks.push_back(ParseInt<std::size_t>(s, what));
          } else if (key == "methods") {
            cfg.grid.methods.clear();
            for (const auto &s : items) cfg.grid.methods.push_back(ParseSelectionKind(s));
          } else {
            throw FormatError("config: unknown key " + what);
          }
        } else if (section == "run") {
          if (key == "seed") cfg.seed = ParseInt<std::uint64_t>(v, what);
          else if (key == "workers") cfg.workers = ParseInt<std::size_t>(v, what);
          else throw FormatError("config: unknown key " + what);
        } else {
          throw FormatError("config: unknown section [" + section + "]");
        }
      } catch (const InvalidInput &e) {
        throw FormatError(std::string("config: ") + e.what());
      }
    }
  }
  return cfg;
}

ExperimentConfig LoadExperimentConfig(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  ExperimentConfig cfg = ParseExperimentConfig(buf.str());
  // A relative corpus root is resolved against the config file's directory.
  if (!cfg.corpus_root.empty() && cfg.corpus_root.is_relative())
    cfg.corpus_root = path.parent_path() / cfg.corpus_root;
  return cfg;
}

OvOModel TrainModel(const PreparedData &data, const Provenance &provenance, const SvmParams &params,
                    std::size_t workers) {
  OvOModel model = TrainOvO(data.train, params, workers);
  model.scaler = data.scaler;
  model.provenance = provenance;
  return model;
}

GridOutcome GridSearch(const ExperimentConfig &config, const Corpus &corpus, const GridOptions &options) {
  config.Validate();
  GridOutcome outcome;
  outcome.report.config_echo = config.ToIni();
  outcome.report.seed = config.seed;

  using FeatureKey = std::tuple<std::string, SelectionKind, std::size_t>;
  struct Prepared {
    FeatureSet features;
    PreparedData data;
  };
  std::map<FeatureKey, std::shared_ptr<const Prepared>> cache;
  auto prepare = [&](const FeatureKey &key) -> std::shared_ptr<const Prepared> {
    if (options.cache_features)
      if (auto it = cache.find(key); it != cache.end()) return it->second;
    const auto &[feature, method, k] = key;
    auto prepared = std::make_shared<Prepared>();
    prepared->features = ExtractFeatureSet(corpus, config.MakeProvenance(feature, method, k), config.workers);
    prepared->data = BuildDataset(prepared->features);
    if (options.cache_features) cache.emplace(key, prepared);
    return prepared;
  };

  double best_acc = -1.0;
  for (auto kernel : config.grid.kernels)
    for (const auto &feature : config.grid.features)
      for (double c : config.grid.c_values)
        for (double sigma : config.grid.sigmas)
          for (std::size_t k : config.grid.ks)
            for (auto method : config.grid.methods) {
              CellRecord cell;
              cell.kernel = kernel;
              cell.feature = feature;
              cell.c = c;
              cell.sigma = sigma;
              cell.k = k;
              cell.method = method;
              try {
                const auto prepared = prepare({feature, method, k});
                SvmParams params = config.svm;
                params.c = c;
                params.kernel = config.Kernel(kernel, sigma);
                const auto t0 = std::chrono::steady_clock::now();
                OvOModel model =
                    TrainModel(prepared->data, prepared->features.provenance, params, config.workers);
                const auto t1 = std::chrono::steady_clock::now();
                const EvalResult eval =
                    Evaluate(model, prepared->data.test, prepared->data.fingerprint, config.workers);
                const auto t2 = std::chrono::steady_clock::now();
                cell.frame_acc = eval.frame_accuracy;
                cell.phoneme_acc = eval.phoneme_accuracy;
                cell.train_s = Seconds(t1 - t0);
                cell.test_s = Seconds(t2 - t1);
                cell.n_train = prepared->features.train.size();
                cell.n_test = eval.n_tokens;
                cell.skipped = prepared->features.skipped();
                cell.converged_pairs = model.converged_pairs();
                cell.label_names = model.label_names;
                cell.confusion = eval.confusion;
                if (options.keep_best_model && eval.phoneme_accuracy > best_acc) {
                  best_acc = eval.phoneme_accuracy;
                  outcome.best_model = std::move(model);
                }
              } catch (const std::exception &e) {
                cell.error = e.what();
                if (cell.error.empty()) cell.error = "unknown failure";
              }
              outcome.report.cells.push_back(std::move(cell));
            }
  return outcome;
}

ReportFormat ParseReportFormat(const std::string &name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  if (name == "json") return ReportFormat::kJson;
  throw InvalidInput("unknown report format '" + name + "'");
}

std::string RenderCsv(const RunReport &report) {
  std::ostringstream os;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) os << (i ? "," : "") << kCsvColumns[i];
  os << "\r\n";
  for (const auto &c : report.cells) {
    if (!c.ok()) continue;
    os << CsvField(ToString(c.kernel)) << ',' << CsvField(c.feature) << ',' << FormatDouble(c.c) << ','
       << FormatDouble(c.sigma) << ',' << c.k << ',' << ToString(c.method) << ','
       << FormatDouble(c.frame_acc) << ',' << FormatDouble(c.phoneme_acc) << ','
       << FormatDouble(c.train_s) << ',' << FormatDouble(c.test_s) << ',' << c.n_train << ','
       << c.n_test << ',' << c.skipped << ',' << c.converged_pairs << "\r\n";
  }
  return os.str();
}

std::vector<CellRecord> ParseCsv(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<CellRecord> cells;
  if (!std::getline(in, line)) throw FormatError("empty CSV report");
  ++line_no;
  if (ParseCsvLine(line, line_no) != kCsvColumns) throw FormatError("unexpected CSV header");
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = ParseCsvLine(line, line_no);
    if (f.size() != kCsvColumns.size())
      throw FormatError("CSV line " + std::to_string(line_no) + " has " + std::to_string(f.size()) +
                        " fields");
    try {
      CellRecord c;
      c.kernel = ParseKernelKind(f[0]);
      c.feature = f[1];
      c.c = ParseDouble(f[2], "C");
      c.sigma = ParseDouble(f[3], "sigma");
      c.k = ParseInt<std::size_t>(f[4], "K");
      c.method = ParseSelectionKind(f[5]);
      c.frame_acc = ParseDouble(f[6], "frame_acc");
      c.phoneme_acc = ParseDouble(f[7], "phoneme_acc");
      c.train_s = ParseDouble(f[8], "train_s");
      c.test_s = ParseDouble(f[9], "test_s");
      c.n_train = ParseInt<std::size_t>(f[10], "n_train");
      c.n_test = ParseInt<std::size_t>(f[11], "n_test");
      c.skipped = ParseInt<std::size_t>(f[12], "skipped");
      c.converged_pairs = ParseInt<std::size_t>(f[13], "converged_pairs");
      cells.push_back(std::move(c));
    } catch (const InvalidInput &e) {
      throw FormatError("CSV line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cells;
}

std::string RenderMarkdown(const RunReport &report) {
  std::ostringstream os;
  os << "# Recognition accuracy\n\n";
  std::vector<const CellRecord *> ok;
  for (const auto &c : report.cells)
    if (c.ok()) ok.push_back(&c);

  // Distinct values of each coordinate, in first-seen order.
  auto distinct = [&](auto key) {
    std::vector<decltype(key(*ok.front()))> out;
    for (const auto *c : ok)
      if (std::find(out.begin(), out.end(), key(*c)) == out.end()) out.push_back(key(*c));
    return out;
  };

  if (!ok.empty()) {
    const auto kernels = distinct([](const CellRecord &c) { return c.kernel; });
    const auto cs = distinct([](const CellRecord &c) { return c.c; });
    const auto features = distinct([](const CellRecord &c) { return c.feature; });
    const auto ks = distinct([](const CellRecord &c) { return c.k; });
    const auto methods = distinct([](const CellRecord &c) { return c.method; });

    auto best = [&](auto pred) {
      double acc = -1.0;
      for (const auto *c : ok)
        if (pred(*c)) acc = std::max(acc, c->phoneme_acc);
      return acc < 0 ? std::string("-") : Fixed2(acc);
    };

    os << "## Phoneme accuracy (%) by kernel, C and feature\n\n";
    os << "Best over the remaining grid dimensions.\n\n| Kernel |";
    for (double c : cs)
      for (const auto &f : features) os << " C=" << FormatDouble(c) << " " << f << " |";
    os << "\n|---|";
    for (std::size_t i = 0; i < cs.size() * features.size(); ++i) os << "---|";
    os << "\n";
    for (auto kernel : kernels) {
      os << "| " << ToString(kernel) << " |";
      for (double c : cs)
        for (const auto &f : features)
          os << " " << best([&](const CellRecord &r) { return r.kernel == kernel && r.c == c && r.feature == f; })
             << " |";
      os << "\n";
    }

    os << "\n## Phoneme accuracy (%) by kernel, K and frame selection\n\n";
    os << "Best over the remaining grid dimensions.\n\n| Kernel |";
    for (auto k : ks)
      for (auto m : methods) os << " K=" << k << " " << ToString(m) << " |";
    os << "\n|---|";
    for (std::size_t i = 0; i < ks.size() * methods.size(); ++i) os << "---|";
    os << "\n";
    for (auto kernel : kernels) {
      os << "| " << ToString(kernel) << " |";
      for (auto k : ks)
        for (auto m : methods)
          os << " " << best([&](const CellRecord &r) { return r.kernel == kernel && r.k == k && r.method == m; })
             << " |";
      os << "\n";
    }

    os << "\n## All cells\n\n";
    os << "| Kernel | Feature | C | sigma | K | Method | Frame acc | Phoneme acc | Train s | Test s | "
          "Train tokens | Test tokens | Skipped | Converged pairs |\n";
    os << "|---|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
    for (const auto *c : ok)
      os << "| " << ToString(c->kernel) << " | " << c->feature << " | " << FormatDouble(c->c) << " | "
         << FormatDouble(c->sigma) << " | " << c->k << " | " << ToString(c->method) << " | "
         << Fixed2(c->frame_acc) << " | " << Fixed2(c->phoneme_acc) << " | " << Fixed2(c->train_s)
         << " | " << Fixed2(c->test_s) << " | " << c->n_train << " | " << c->n_test << " | "
         << c->skipped << " | " << c->converged_pairs << " |\n";
  } else {
    os << "No successful cells.\n";
  }

  bool any_failed = false;
  for (const auto &c : report.cells) {
    if (c.ok()) continue;
    if (!any_failed) os << "\n## Failed cells\n\n";
    any_failed = true;
    os << "- " << ToString(c.kernel) << " " << c.feature << " C=" << FormatDouble(c.c)
       << " sigma=" << FormatDouble(c.sigma) << " " << ToString(c.method) << ":" << c.k << ": " << c.error
       << "\n";
  }
  if (!report.config_echo.empty()) os << "\n## Configuration\n\n```ini\n" << report.config_echo << "```\n";
  return os.str();
}

std::string RenderJson(const RunReport &report) {
  nlohmann::json j;
  j["seed"] = report.seed;
  j["config"] = report.config_echo;
  nlohmann::json cells = nlohmann::json::array();
  for (const auto &c : report.cells) {
    cells.push_back({{"kernel", ToString(c.kernel)},
                     {"feature", c.feature},
                     {"C", c.c},
                     {"sigma", c.sigma},
                     {"K", c.k},
                     {"method", ToString(c.method)},
                     {"frame_acc", c.frame_acc},
                     {"phoneme_acc", c.phoneme_acc},
                     {"train_s", c.train_s},
                     {"test_s", c.test_s},
                     {"n_train", c.n_train},
                     {"n_test", c.n_test},
                     {"skipped", c.skipped},
                     {"converged_pairs", c.converged_pairs},
                     {"label_names", c.label_names},
                     {"confusion", c.confusion},
                     {"error", c.error}});
  }
  j["cells"] = std::move(cells);
  return j.dump(1) + "\n";
}

RunReport ParseJsonReport(const std::string &text) {
  try {
    const auto j = nlohmann::json::parse(text);
    RunReport report;
    report.seed = j.at("seed").get<std::uint64_t>();
    report.config_echo = j.at("config").get<std::string>();
    for (const auto &e : j.at("cells")) {
      CellRecord c;
      c.kernel = ParseKernelKind(e.at("kernel").get<std::string>());
      c.feature = e.at("feature").get<std::string>();
      c.c = e.at("C").get<double>();
      c.sigma = e.at("sigma").get<double>();
      c.k = e.at("K").get<std::size_t>();
      c.method = ParseSelectionKind(e.at("method").get<std::string>());
      c.frame_acc = e.at("frame_acc").get<double>();
      c.phoneme_acc = e.at("phoneme_acc").get<double>();
      c.train_s = e.at("train_s").get<double>();
      c.test_s = e.at("test_s").get<double>();
      c.n_train = e.at("n_train").get<std::size_t>();
      c.n_test = e.at("n_test").get<std::size_t>();
      c.skipped = e.at("skipped").get<std::size_t>();
      c.converged_pairs = e.at("converged_pairs").get<std::size_t>();
      c.label_names = e.at("label_names").get<std::vector<std::string>>();
      c.confusion = e.at("confusion").get<std::vector<std::vector<std::size_t>>>();
      c.error = e.at("error").get<std::string>();
      report.cells.push_back(std::move(c));
    }
    return report;
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(std::string("malformed JSON report: ") + e.what());
  } catch (const InvalidInput &e) {
    throw FormatError(std::string("malformed JSON report: ") + e.what());
  }
}

void EmitReport(const RunReport &report, ReportFormat format, const fs::path &path) {
  if (report.cells.empty()) throw InvalidInput("cannot emit an empty report");
  std::string text;
  switch (format) {
    case ReportFormat::kCsv: text = RenderCsv(report); break;
    case ReportFormat::kMarkdown: text = RenderMarkdown(report); break;
    case ReportFormat::kJson: text = RenderJson(report); break;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace vowelkit
