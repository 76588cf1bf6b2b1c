// core/src/dataset.cc

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

#include "vowelkit/dataset.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <set>

#include "vowelkit/parallel.h"

namespace vowelkit {

std::optional<Matrix> TokenFeatures(const RawSignal &signal, const PhonemeToken &token,
                                    const Provenance &provenance) {
  if (token.begin < 0 || token.end <= token.begin ||
      static_cast<std::size_t>(token.end) > signal.samples.size())
    throw InvalidInput("token span outside the signal");
  RawSignal slice{{signal.samples.begin() + token.begin, signal.samples.begin() + token.end},
                  signal.sample_rate};
  try {
    return SelectFrames(ExtractFeatures(slice, provenance.frontend), provenance.selection);
  } catch (const TooShort &) {
    return std::nullopt;
  } catch (const DegenerateSpectrum &) {
    return std::nullopt;
  }
}

FeatureSet ExtractFeatureSet(const Corpus &corpus, const Provenance &provenance, std::size_t workers,
                             const std::optional<std::vector<std::string>> &label_names) {
  provenance.frontend.Validate();
  provenance.selection.Validate();
  FeatureSet set;
  set.provenance = provenance;

  struct Job {
    const Utterance *utterance;
    const PhonemeToken *token;
  };
  std::vector<Job> jobs;
  for (const auto &u : corpus.utterances)
    for (const auto &t : u.tokens) jobs.push_back({&u, &t});

  std::vector<std::optional<Matrix>> frames(jobs.size());
  ParallelFor(jobs.size(), workers, [&](std::size_t i) {
    frames[i] = TokenFeatures(jobs[i].utterance->signal, *jobs[i].token, provenance);
  });

  if (label_names) {
    set.label_names = *label_names;
  } else {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < jobs.size(); ++i)
      if (frames[i] && jobs[i].token->split == Split::kTrain) seen.insert(jobs[i].token->label);
    set.label_names.assign(seen.begin(), seen.end());
  }

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const PhonemeToken &t = *jobs[i].token;
    const bool train = t.split == Split::kTrain;
    const auto label = std::lower_bound(set.label_names.begin(), set.label_names.end(), t.label);
    if (!frames[i] || label == set.label_names.end() || *label != t.label) {
      ++(train ? set.skipped_train : set.skipped_test);
      continue;
    }
    TokenFrames tf{t.utterance, t.begin, t.end,
                   static_cast<std::size_t>(label - set.label_names.begin()), std::move(*frames[i])};
    (train ? set.train : set.test).push_back(std::move(tf));
  }
  return set;
}

std::vector<TokenFrames> ScaleTokens(const ScalerParams &scaler, const std::vector<TokenFrames> &tokens) {
  std::vector<TokenFrames> out;
  out.reserve(tokens.size());
  for (const auto &t : tokens) {
    TokenFrames scaled = t;
    scaled.frames = ApplyScaler(scaler, t.frames);
    out.push_back(std::move(scaled));
  }
  return out;
}

PreparedData BuildDataset(const FeatureSet &features) {
  if (features.train.empty()) throw InvalidInput("no usable training tokens");
  Matrix raw;
  std::vector<std::size_t> labels;
  for (const auto &t : features.train) {
    raw.AppendRows(t.frames);
    labels.insert(labels.end(), t.frames.rows(), t.label);
  }
  PreparedData data;
  data.scaler = FitScaler(raw);
  data.train.x = ApplyScaler(data.scaler, raw);
  data.train.labels = std::move(labels);
  data.train.label_names = features.label_names;
  data.test = ScaleTokens(data.scaler, features.test);
  data.fingerprint = features.provenance.Fingerprint();
  return data;
}

EvalResult Evaluate(const OvOModel &model, const std::vector<TokenFrames> &test,
                    std::uint64_t fingerprint, std::size_t workers) {
  if (fingerprint != model.provenance.Fingerprint())
    throw InvalidInput("test features were not produced with the model's feature configuration");
  if (test.empty()) throw InvalidInput("empty test set");
  const std::size_t k = model.num_classes();

  std::vector<std::vector<std::size_t>> frame_preds(test.size());
  ParallelFor(test.size(), workers, [&](std::size_t i) {
    const Matrix &frames = test[i].frames;
    frame_preds[i].resize(frames.rows());
    for (std::size_t r = 0; r < frames.rows(); ++r) frame_preds[i][r] = PredictOvO(model, frames.row(r));
  });

  EvalResult result;
  result.confusion.assign(k, std::vector<std::size_t>(k, 0));
  std::size_t correct_frames = 0, correct_tokens = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (test[i].label >= k) throw InvalidInput("test label out of the model's range");
    for (std::size_t p : frame_preds[i]) correct_frames += p == test[i].label;
    result.n_frames += frame_preds[i].size();
    const std::size_t token_pred = AggregateFrameVotes(frame_preds[i], k);
    result.token_predictions.push_back(token_pred);
    correct_tokens += token_pred == test[i].label;
    ++result.confusion[test[i].label][token_pred];
  }
  result.n_tokens = test.size();
  result.frame_accuracy = 100.0 * static_cast<double>(correct_frames) / static_cast<double>(result.n_frames);
  result.phoneme_accuracy = 100.0 * static_cast<double>(correct_tokens) / static_cast<double>(result.n_tokens);
  return result;
}

namespace {

nlohmann::json TokensToJson(const std::vector<TokenFrames> &tokens,
                            const std::vector<std::string> &label_names) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto &t : tokens) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < t.frames.rows(); ++r) {
      auto row = t.frames.row(r);
      rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    out.push_back({{"utterance", t.utterance},
                   {"begin", t.begin},
                   {"end", t.end},
                   {"label", label_names.at(t.label)},
                   {"frames", std::move(rows)}});
  }
  return out;
}

std::vector<TokenFrames> TokensFromJson(const nlohmann::json &j,
                                        const std::vector<std::string> &label_names) {
  std::vector<TokenFrames> out;
  for (const auto &e : j) {
    TokenFrames t;
    t.utterance = e.at("utterance").get<std::string>();
    t.begin = e.at("begin").get<std::int64_t>();
    t.end = e.at("end").get<std::int64_t>();
    const auto label = e.at("label").get<std::string>();
    const auto it = std::lower_bound(label_names.begin(), label_names.end(), label);
    if (it == label_names.end() || *it != label) throw FormatError("token label '" + label + "' not in label_names");
    t.label = static_cast<std::size_t>(it - label_names.begin());
    for (const auto &row : e.at("frames")) t.frames.AppendRow(row.get<std::vector<double>>());
    if (t.frames.empty()) throw FormatError("token without frames");
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

std::string SerializeFeatureSet(const FeatureSet &features) {
  nlohmann::json j;
  j["format"] = "vowelkit-features";
  j["format_version"] = 1;
  j["provenance"] = ToJson(features.provenance);
  j["label_names"] = features.label_names;
  j["skipped_train"] = features.skipped_train;
  j["skipped_test"] = features.skipped_test;
  j["train"] = TokensToJson(features.train, features.label_names);
  j["test"] = TokensToJson(features.test, features.label_names);
  return j.dump() + "\n";
}

FeatureSet DeserializeFeatureSet(const std::string &text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != "vowelkit-features" || j.at("format_version").get<int>() != 1)
      throw FormatError("not a version-1 vowelkit feature file");
    FeatureSet set;
    set.provenance = ProvenanceFromJson(j.at("provenance"));
    set.label_names = j.at("label_names").get<std::vector<std::string>>();
    if (!std::is_sorted(set.label_names.begin(), set.label_names.end()))
      throw FormatError("label_names must be sorted");
    set.skipped_train = j.at("skipped_train").get<std::size_t>();
    set.skipped_test = j.at("skipped_test").get<std::size_t>();
    set.train = TokensFromJson(j.at("train"), set.label_names);
    set.test = TokensFromJson(j.at("test"), set.label_names);
    return set;
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(std::string("malformed feature file: ") + e.what());
  } catch (const InvalidInput &e) {
    throw FormatError(std::string("malformed feature file: ") + e.what());
  }
}

void SaveFeatureSet(const FeatureSet &features, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << SerializeFeatureSet(features);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

FeatureSet LoadFeatureSet(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return DeserializeFeatureSet(buf.str());
}

}  // namespace vowelkit
