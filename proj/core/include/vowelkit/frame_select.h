// core/include/vowelkit/frame_select.h

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

#ifndef VOWELKIT_FRAME_SELECT_H_
#define VOWELKIT_FRAME_SELECT_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "vowelkit/matrix.h"

namespace vowelkit {

struct FcmOptions {
  double fuzzifier = 2.0;
  double tol = 1e-5;
  std::size_t max_iter = 300;
  std::uint64_t seed = 1;
};

enum class SelectionKind { kMiddle, kFcm };

// How a phoneme's frames are reduced to at most K representatives.
struct SelectionMethod {
  SelectionKind kind = SelectionKind::kMiddle;
  std::size_t k = 3;
  FcmOptions fcm;

  void Validate() const;
  // "middle:3" or "fcm:5".
  std::string Name() const;
  std::string Describe() const;
};

// Parses "middle:K" / "fcm:K"; FCM options are taken from |fcm|.
SelectionMethod ParseSelection(const std::string &text, const FcmOptions &fcm = {});

std::string ToString(SelectionKind kind);
SelectionKind ParseSelectionKind(const std::string &name);

struct FcmState {
  Matrix centers;     // c x D
  Matrix membership;  // N x c, rows sum to 1
  double objective = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  // Objective after initialization and after every iteration.
  std::vector<double> objective_history;
};

// Contiguous centered window of min(K, N) rows, starting at floor((N-K)/2).
Matrix SelectMiddle(const Matrix &features, std::size_t k);
std::vector<std::size_t> MiddleIndices(std::size_t n, std::size_t k);

// Fuzzy c-means with alternating membership/center updates. Centers start at
// c distinct rows drawn with a seeded generator. Stops when the largest
// center displacement drops below tol or after max_iter iterations.
FcmState FcmCluster(const Matrix &features, std::size_t clusters, const FcmOptions &options);

// For each cluster, the frame of maximal membership (lowest index on ties);
// sorted, duplicates removed.
std::vector<std::size_t> FcmIndices(const Matrix &features, std::size_t k,
                                    const FcmOptions &options);
Matrix FcmSelect(const Matrix &features, std::size_t k, const FcmOptions &options);

Matrix SelectFrames(const Matrix &features, const SelectionMethod &method);

}  // namespace vowelkit

#endif  // VOWELKIT_FRAME_SELECT_H_
