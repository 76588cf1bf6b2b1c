// core/include/vowelkit/dataset.h

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

#ifndef VOWELKIT_DATASET_H_
#define VOWELKIT_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vowelkit/corpus.h"
#include "vowelkit/multiclass.h"

namespace vowelkit {

// Selected frames of one phoneme token.
struct TokenFrames {
  std::string utterance;
  std::int64_t begin = 0;
  std::int64_t end = 0;
  std::size_t label = 0;  // index into the owning set's label_names
  Matrix frames;
};

// Unscaled selected frames for both splits of a corpus.
struct FeatureSet {
  Provenance provenance;
  std::vector<std::string> label_names;
  std::vector<TokenFrames> train;
  std::vector<TokenFrames> test;
  std::size_t skipped_train = 0;  // too short, degenerate spectrum
  std::size_t skipped_test = 0;   // as above, or label unseen in training

  std::size_t skipped() const { return skipped_train + skipped_test; }
};

// Runs the front end and frame selection on every token. Label names are
// the sorted labels of the usable training tokens unless |label_names| is
// given. Tokens shorter than a frame, with a degenerate LP spectrum, or with
// a label outside the label set are skipped and counted.
FeatureSet ExtractFeatureSet(const Corpus &corpus, const Provenance &provenance,
                             std::size_t workers = 1,
                             const std::optional<std::vector<std::string>> &label_names = std::nullopt);

// Frames of one token, or nullopt if the token is skipped.
std::optional<Matrix> TokenFeatures(const RawSignal &signal, const PhonemeToken &token,
                                    const Provenance &provenance);

// JSON feature cache written by `vowelkit extract`; doubles round-trip
// exactly.
std::string SerializeFeatureSet(const FeatureSet &features);
FeatureSet DeserializeFeatureSet(const std::string &text);
void SaveFeatureSet(const FeatureSet &features, const std::filesystem::path &path);
FeatureSet LoadFeatureSet(const std::filesystem::path &path);

// Training rows scaled into [0, 1] with a scaler fit on the training split
// only; test tokens scaled with the same parameters.
struct PreparedData {
  LabeledDataset train;
  ScalerParams scaler;
  std::vector<TokenFrames> test;
  std::uint64_t fingerprint = 0;
};

PreparedData BuildDataset(const FeatureSet &features);

std::vector<TokenFrames> ScaleTokens(const ScalerParams &scaler, const std::vector<TokenFrames> &tokens);

struct EvalResult {
  double frame_accuracy = 0.0;    // percent
  double phoneme_accuracy = 0.0;  // percent
  std::size_t n_frames = 0;
  std::size_t n_tokens = 0;
  // rows: true class, columns: predicted class, counted per token
  std::vector<std::vector<std::size_t>> confusion;
  std::vector<std::size_t> token_predictions;
};

// Scores scaled test tokens. Throws InvalidInput when |fingerprint| differs
// from the model's provenance fingerprint.
EvalResult Evaluate(const OvOModel &model, const std::vector<TokenFrames> &test,
                    std::uint64_t fingerprint, std::size_t workers = 1);

}  // namespace vowelkit

#endif  // VOWELKIT_DATASET_H_
