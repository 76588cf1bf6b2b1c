// core/include/vowelkit/multiclass.h

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

#ifndef VOWELKIT_MULTICLASS_H_
#define VOWELKIT_MULTICLASS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "vowelkit/frame_select.h"
#include "vowelkit/preprocessing.h"
#include "vowelkit/signal_frontend.h"
#include "vowelkit/parallel.h"
#include "vowelkit/svm_core.h"

namespace vowelkit {

struct LabeledDataset {
  Matrix x;
  std::vector<std::size_t> labels;
  std::vector<std::string> label_names;  // sorted, unique

  std::size_t num_classes() const { return label_names.size(); }
  void Validate() const;
};

// Feature pipeline a model was trained with. The fingerprint ties test data
// to the training configuration.
struct Provenance {
  FrontendConfig frontend;
  SelectionMethod selection;

  std::string Describe() const;
  std::uint64_t Fingerprint() const;
};

// Class i maps to +1 and class j to -1 in the binary model of pair (i, j).
struct OvOModel {
  std::vector<std::string> label_names;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<BinaryModel> binaries;
  ScalerParams scaler;
  Provenance provenance;

  std::size_t num_classes() const { return label_names.size(); }
  std::size_t converged_pairs() const;
};

// All (i, j) with i < j, in lexicographic order.
std::vector<std::pair<std::size_t, std::size_t>> PairIndex(std::size_t k);

// Trains the k(k-1)/2 pairwise classifiers, up to |workers| at a time.
// The result does not depend on the worker count. The returned model has an
// empty scaler and provenance; callers fill those in.
OvOModel TrainOvO(const LabeledDataset &data, const SvmParams &params, std::size_t workers = 1);

struct VoteTally {
  std::vector<std::size_t> votes;
  std::vector<double> confidence;  // sum of |f| over the binaries each class won
};

// Counts votes for a set of oriented pairs: pair (a, b) votes for a when
// f >= 0 and for b otherwise.
VoteTally TallyVotes(std::size_t k, std::span<const std::pair<std::size_t, std::size_t>> pairs,
                     std::span<const double> decisions);

// Most votes, then largest confidence, then lowest class id.
std::size_t ResolveVotes(const VoteTally &tally);

// Predicts one (already scaled) feature vector.
std::size_t PredictOvO(const OvOModel &model, std::span<const double> x);

// Majority over per-frame predictions; ties go to the tied class predicted
// closest to the middle frame floor((n-1)/2), earlier frames first.
std::size_t PredictPhoneme(const OvOModel &model, const Matrix &frames);
std::size_t AggregateFrameVotes(std::span<const std::size_t> frame_predictions,
                                std::size_t num_classes);

nlohmann::json ToJson(const Provenance &provenance);
Provenance ProvenanceFromJson(const nlohmann::json &j);

inline constexpr int kModelFormatVersion = 1;

std::string SerializeModel(const OvOModel &model);
OvOModel DeserializeModel(const std::string &text);
void SaveModel(const OvOModel &model, const std::filesystem::path &path);
OvOModel LoadModel(const std::filesystem::path &path);

}  // namespace vowelkit

#endif  // VOWELKIT_MULTICLASS_H_
