// core/src/multiclass.cc

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

#include "vowelkit/multiclass.h"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace vowelkit {

void LabeledDataset::Validate() const {
  const std::size_t k = label_names.size();
  if (k < 2) throw InvalidInput("multiclass training needs at least 2 classes");
  if (!std::is_sorted(label_names.begin(), label_names.end()) ||
      std::adjacent_find(label_names.begin(), label_names.end()) != label_names.end())
    throw InvalidInput("label names must be sorted and unique");
  if (labels.size() != x.rows()) throw InvalidInput("label count does not match row count");
  std::vector<bool> seen(k, false);
  for (std::size_t label : labels) {
    if (label >= k) throw InvalidInput("class id out of range");
    seen[label] = true;
  }
  for (std::size_t c = 0; c < k; ++c)
    if (!seen[c]) throw InvalidInput("class '" + label_names[c] + "' has no samples");
}

std::string Provenance::Describe() const {
  return frontend.Describe() + " | " + selection.Describe();
}

std::uint64_t Provenance::Fingerprint() const {
  std::uint64_t h = 14695981039346656037ull;  // FNV-1a
  for (unsigned char ch : Describe()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::size_t OvOModel::converged_pairs() const {
  return static_cast<std::size_t>(
      std::count_if(binaries.begin(), binaries.end(), [](const auto &b) { return b.converged; }));
}

std::vector<std::pair<std::size_t, std::size_t>> PairIndex(std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(k * (k > 0 ? k - 1 : 0) / 2);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  return pairs;
}

OvOModel TrainOvO(const LabeledDataset &data, const SvmParams &params, std::size_t workers) {
  data.Validate();
  params.Validate();
  OvOModel model;
  model.label_names = data.label_names;
  model.pairs = PairIndex(data.num_classes());
  model.binaries.resize(model.pairs.size());

  std::vector<std::vector<std::size_t>> members(data.num_classes());
  for (std::size_t r = 0; r < data.labels.size(); ++r) members[data.labels[r]].push_back(r);

  ParallelFor(model.pairs.size(), workers, [&](std::size_t p) {
    const auto [ci, cj] = model.pairs[p];
    BinaryProblem problem;
    for (std::size_t r = 0; r < data.labels.size(); ++r) {
      const std::size_t label = data.labels[r];
      if (label != ci && label != cj) continue;
      problem.x.AppendRow(data.x.row(r));
      problem.y.push_back(label == ci ? 1 : -1);
    }
    model.binaries[p] = SmoTrain(problem, params);
  });
  return model;
}

VoteTally TallyVotes(std::size_t k, std::span<const std::pair<std::size_t, std::size_t>> pairs,
                     std::span<const double> decisions) {
  if (pairs.size() != decisions.size()) throw InvalidInput("one decision per pair expected");
  VoteTally tally{std::vector<std::size_t>(k, 0), std::vector<double>(k, 0.0)};
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const std::size_t winner = decisions[p] >= 0.0 ? pairs[p].first : pairs[p].second;
    if (winner >= k) throw InvalidInput("pair refers to a class out of range");
    ++tally.votes[winner];
    tally.confidence[winner] += std::abs(decisions[p]);
  }
  return tally;
}

std::size_t ResolveVotes(const VoteTally &tally) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < tally.votes.size(); ++c) {
    if (tally.votes[c] > tally.votes[best] ||
        (tally.votes[c] == tally.votes[best] && tally.confidence[c] > tally.confidence[best]))
      best = c;
  }
  return best;
}

std::size_t PredictOvO(const OvOModel &model, std::span<const double> x) {
  if (model.scaler.dimension() != 0 && x.size() != model.scaler.dimension())
    throw InvalidInput("input dimension " + std::to_string(x.size()) +
                       " does not match the model's " + std::to_string(model.scaler.dimension()));
  std::vector<double> decisions(model.binaries.size());
  for (std::size_t p = 0; p < decisions.size(); ++p)
    decisions[p] = DecisionValue(model.binaries[p], x);
  return ResolveVotes(TallyVotes(model.num_classes(), model.pairs, decisions));
}

std::size_t AggregateFrameVotes(std::span<const std::size_t> frame_predictions,
                                std::size_t num_classes) {
  if (frame_predictions.empty()) throw InvalidInput("no frames to classify");
  std::vector<std::size_t> counts(num_classes, 0);
  for (std::size_t c : frame_predictions) {
    if (c >= num_classes) throw InvalidInput("frame prediction out of range");
    ++counts[c];
  }
  const std::size_t top = *std::max_element(counts.begin(), counts.end());
  // Walk outward from the middle frame: mid, mid-1, mid+1, mid-2, ...
  const auto n = static_cast<std::ptrdiff_t>(frame_predictions.size());
  const std::ptrdiff_t mid = (n - 1) / 2;
  for (std::ptrdiff_t offset = 0; offset < n; ++offset) {
    for (std::ptrdiff_t t : {mid - offset, mid + offset}) {
      if (t < 0 || t >= n) continue;
      const std::size_t c = frame_predictions[static_cast<std::size_t>(t)];
      if (counts[c] == top) return c;
    }
  }
  return 0;  // unreachable: some frame carries a top-count class
}

std::size_t PredictPhoneme(const OvOModel &model, const Matrix &frames) {
  if (frames.empty()) throw InvalidInput("no frames to classify");
  std::vector<std::size_t> predictions(frames.rows());
  for (std::size_t r = 0; r < frames.rows(); ++r) predictions[r] = PredictOvO(model, frames.row(r));
  return AggregateFrameVotes(predictions, model.num_classes());
}

nlohmann::json ToJson(const Provenance &provenance) {
  const auto &f = provenance.frontend;
  const auto &s = provenance.selection;
  return {
      {"frontend",
       {{"feature", ToString(f.feature_kind)},
        {"pre_emphasis", f.pre_emphasis},
        {"frame_len", f.frame_len},
        {"hop", f.hop},
        {"num_ceps", f.num_ceps},
        {"with_deltas", f.with_deltas},
        {"num_mel_filters", f.num_mel_filters},
        {"lp_order", f.lp_order}}},
      {"selection",
       {{"method", ToString(s.kind)},
        {"k", s.k},
        {"fuzzifier", s.fcm.fuzzifier},
        {"tol", s.fcm.tol},
        {"max_iter", s.fcm.max_iter},
        {"seed", s.fcm.seed}}},
  };
}

Provenance ProvenanceFromJson(const nlohmann::json &j) {
  try {
    Provenance p;
    const auto &f = j.at("frontend");
    p.frontend.feature_kind = ParseFeatureKind(f.at("feature").get<std::string>());
    p.frontend.pre_emphasis = f.at("pre_emphasis").get<double>();
    p.frontend.frame_len = f.at("frame_len").get<std::size_t>();
    p.frontend.hop = f.at("hop").get<std::size_t>();
    p.frontend.num_ceps = f.at("num_ceps").get<std::size_t>();
    p.frontend.with_deltas = f.at("with_deltas").get<bool>();
    p.frontend.num_mel_filters = f.at("num_mel_filters").get<std::size_t>();
    p.frontend.lp_order = f.at("lp_order").get<std::size_t>();
    const auto &s = j.at("selection");
    p.selection.kind = ParseSelectionKind(s.at("method").get<std::string>());
    p.selection.k = s.at("k").get<std::size_t>();
    p.selection.fcm.fuzzifier = s.at("fuzzifier").get<double>();
    p.selection.fcm.tol = s.at("tol").get<double>();
    p.selection.fcm.max_iter = s.at("max_iter").get<std::size_t>();
    p.selection.fcm.seed = s.at("seed").get<std::uint64_t>();
    p.frontend.Validate();
    p.selection.Validate();
    return p;
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(std::string("bad provenance block: ") + e.what());
  } catch (const InvalidInput &e) {
    throw FormatError(std::string("bad provenance block: ") + e.what());
  }
}

std::string SerializeModel(const OvOModel &model) {
  nlohmann::json j;
  j["format"] = "vowelkit-svmodel";
  j["format_version"] = kModelFormatVersion;
  j["label_names"] = model.label_names;
  j["kernel"] = model.binaries.empty() ? nlohmann::json(nullptr) : ToJson(model.binaries.front().kernel);
  j["provenance"] = ToJson(model.provenance);
  std::ostringstream fp;
  fp << std::hex << model.provenance.Fingerprint();
  j["fingerprint"] = fp.str();
  j["scaler"] = {{"mins", model.scaler.mins}, {"maxs", model.scaler.maxs}};
  nlohmann::json pairs = nlohmann::json::array();
  for (std::size_t p = 0; p < model.binaries.size(); ++p) {
    const auto &b = model.binaries[p];
    nlohmann::json svs = nlohmann::json::array();
    for (std::size_t r = 0; r < b.support_vectors.rows(); ++r) {
      auto row = b.support_vectors.row(r);
      svs.push_back(std::vector<double>(row.begin(), row.end()));
    }
    pairs.push_back({{"i", model.pairs[p].first},
                     {"j", model.pairs[p].second},
                     {"b", b.bias},
                     {"converged", b.converged},
                     {"iterations", b.iterations},
                     {"sv_count", b.size()},
                     {"alphas", b.alphas},
                     {"labels", b.labels},
                     {"support_vectors", svs}});
  }
  j["pairs"] = std::move(pairs);
  return j.dump(1) + "\n";
}

OvOModel DeserializeModel(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw FormatError(std::string("model file is not valid: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "vowelkit-svmodel")
      throw FormatError("not a vowelkit model file");
    const int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion)
      throw FormatError("unsupported model format version " + std::to_string(version));
    OvOModel model;
    model.label_names = j.at("label_names").get<std::vector<std::string>>();
    model.provenance = ProvenanceFromJson(j.at("provenance"));
    model.scaler.mins = j.at("scaler").at("mins").get<std::vector<double>>();
    model.scaler.maxs = j.at("scaler").at("maxs").get<std::vector<double>>();
    if (model.scaler.mins.size() != model.scaler.maxs.size())
      throw FormatError("scaler mins and maxs differ in length");
    const auto &pairs = j.at("pairs");
    const std::size_t k = model.label_names.size();
    if (k < 2 || pairs.size() != k * (k - 1) / 2)
      throw FormatError("pair count does not match k(k-1)/2");
    const KernelSpec kernel = KernelSpecFromJson(j.at("kernel"));
    const auto expected = PairIndex(k);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const auto &e = pairs[p];
      const std::pair<std::size_t, std::size_t> ij{e.at("i").get<std::size_t>(),
                                                   e.at("j").get<std::size_t>()};
      if (ij != expected[p]) throw FormatError("pair list out of order");
      BinaryModel b;
      b.kernel = kernel;
      b.bias = e.at("b").get<double>();
      b.converged = e.at("converged").get<bool>();
      b.iterations = e.at("iterations").get<std::size_t>();
      b.alphas = e.at("alphas").get<std::vector<double>>();
      b.labels = e.at("labels").get<std::vector<int>>();
      const auto sv_count = e.at("sv_count").get<std::size_t>();
      const auto &svs = e.at("support_vectors");
      if (b.alphas.size() != sv_count || b.labels.size() != sv_count || svs.size() != sv_count)
        throw FormatError("support vector count mismatch in pair " + std::to_string(p));
      for (const auto &row : svs) {
        const auto values = row.get<std::vector<double>>();
        if (model.scaler.dimension() != 0 && values.size() != model.scaler.dimension())
          throw FormatError("support vector dimension mismatch in pair " + std::to_string(p));
        b.support_vectors.AppendRow(values);
      }
      model.pairs.push_back(ij);
      model.binaries.push_back(std::move(b));
    }
    return model;
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(std::string("malformed model file: ") + e.what());
  }
}

void SaveModel(const OvOModel &model, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << SerializeModel(model);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

OvOModel LoadModel(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return DeserializeModel(buf.str());
}

}  // namespace vowelkit
