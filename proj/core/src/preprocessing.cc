// core/src/preprocessing.cc

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

#include "vowelkit/preprocessing.h"

#include <algorithm>
#include <string>

namespace vowelkit {

ScalerParams FitScaler(const Matrix &train) {
  if (train.empty() || train.cols() == 0) throw InvalidInput("cannot fit a scaler on an empty matrix");
  ScalerParams p;
  p.mins.assign(train.row(0).begin(), train.row(0).end());
  p.maxs = p.mins;
  for (std::size_t r = 1; r < train.rows(); ++r) {
    auto row = train.row(r);
    for (std::size_t d = 0; d < row.size(); ++d) {
      p.mins[d] = std::min(p.mins[d], row[d]);
      p.maxs[d] = std::max(p.maxs[d], row[d]);
    }
  }
  return p;
}

std::vector<double> ApplyScaler(const ScalerParams &params, std::span<const double> x) {
  if (x.size() != params.dimension())
    throw InvalidInput("scaler fit on " + std::to_string(params.dimension()) +
                       " attributes applied to " + std::to_string(x.size()));
  std::vector<double> y(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double range = params.maxs[d] - params.mins[d];
    y[d] = range > 0.0 ? std::clamp((x[d] - params.mins[d]) / range, 0.0, 1.0) : 0.0;
  }
  return y;
}

Matrix ApplyScaler(const ScalerParams &params, const Matrix &x) {
  if (x.cols() != params.dimension() && !x.empty())
    throw InvalidInput("scaler fit on " + std::to_string(params.dimension()) +
                       " attributes applied to " + std::to_string(x.cols()));
  Matrix out(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto y = ApplyScaler(params, x.row(r));
    std::copy(y.begin(), y.end(), out.row(r).begin());
  }
  return out;
}

}  // namespace vowelkit
