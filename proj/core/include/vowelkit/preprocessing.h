// core/include/vowelkit/preprocessing.h

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

#ifndef VOWELKIT_PREPROCESSING_H_
#define VOWELKIT_PREPROCESSING_H_

#include <span>
#include <vector>

#include "vowelkit/matrix.h"

namespace vowelkit {

// Per-attribute min-max scaling to [0, 1].
struct ScalerParams {
  std::vector<double> mins;
  std::vector<double> maxs;

  std::size_t dimension() const { return mins.size(); }
  bool operator==(const ScalerParams &) const = default;
};

ScalerParams FitScaler(const Matrix &train);

// (x - min) / (max - min), clamped to [0, 1]. Constant attributes map to 0.
Matrix ApplyScaler(const ScalerParams &params, const Matrix &x);
std::vector<double> ApplyScaler(const ScalerParams &params, std::span<const double> x);

}  // namespace vowelkit

#endif  // VOWELKIT_PREPROCESSING_H_
