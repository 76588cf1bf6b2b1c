// core/src/frame_select.cc

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

#include "vowelkit/frame_select.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace vowelkit {

namespace {

double Objective(const Matrix &x, const Matrix &centers, const Matrix &u, double m) {
  double j = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t c = 0; c < centers.rows(); ++c)
      j += std::pow(u(i, c), m) * SquaredDistance(x.row(i), centers.row(c));
  return j;
}

void UpdateMembership(const Matrix &x, const Matrix &centers, double m, Matrix &u) {
  const std::size_t c_count = centers.rows();
  const double exponent = 1.0 / (m - 1.0);
  std::vector<double> d2(c_count);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    std::size_t zero_at = c_count;
    for (std::size_t c = 0; c < c_count; ++c) {
      d2[c] = SquaredDistance(x.row(i), centers.row(c));
      if (d2[c] == 0.0 && zero_at == c_count) zero_at = c;
    }
    if (zero_at != c_count) {
      for (std::size_t c = 0; c < c_count; ++c) u(i, c) = c == zero_at ? 1.0 : 0.0;
      continue;
    }
    // u_ic = 1 / sum_k (d_ic / d_ik)^(2/(m-1)), with squared distances.
    double row_sum = 0.0;
    for (std::size_t c = 0; c < c_count; ++c) {
      double s = 0.0;
      for (std::size_t k = 0; k < c_count; ++k) s += std::pow(d2[c] / d2[k], exponent);
      u(i, c) = 1.0 / s;
      row_sum += u(i, c);
    }
    for (std::size_t c = 0; c < c_count; ++c) u(i, c) /= row_sum;
  }
}

void UpdateCenters(const Matrix &x, const Matrix &u, double m, Matrix &centers) {
  for (std::size_t c = 0; c < centers.rows(); ++c) {
    auto center = centers.row(c);
    std::fill(center.begin(), center.end(), 0.0);
    double weight_sum = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
      const double w = std::pow(u(i, c), m);
      if (w == 0.0) continue;
      weight_sum += w;
      auto xi = x.row(i);
      for (std::size_t d = 0; d < center.size(); ++d) center[d] += w * xi[d];
    }
    // Every cluster owns at least one point with positive weight unless all
    // memberships underflowed; keep the old center in that case.
    if (weight_sum > 0.0)
      for (double &v : center) v /= weight_sum;
  }
}

// Partial Fisher-Yates on raw 64-bit draws, so the choice is stable across
// standard library implementations.
std::vector<std::size_t> SeededDistinctRows(std::size_t n, std::size_t c, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < c; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(c);
  return idx;
}

}  // namespace

std::string ToString(SelectionKind kind) {
  return kind == SelectionKind::kMiddle ? "middle" : "fcm";
}

SelectionKind ParseSelectionKind(const std::string &name) {
  if (name == "middle") return SelectionKind::kMiddle;
  if (name == "fcm") return SelectionKind::kFcm;
  throw InvalidInput("unknown frame selection method '" + name + "'");
}

void SelectionMethod::Validate() const {
  if (k < 1) throw InvalidInput("K must be >= 1");
  if (kind == SelectionKind::kFcm) {
    if (!(fcm.fuzzifier > 1.0)) throw InvalidInput("fuzzifier must exceed 1");
    if (!(fcm.tol > 0.0)) throw InvalidInput("FCM tolerance must be positive");
  }
}

std::string SelectionMethod::Name() const { return ToString(kind) + ":" + std::to_string(k); }

std::string SelectionMethod::Describe() const {
  std::ostringstream os;
  os.precision(17);
  os << Name();
  if (kind == SelectionKind::kFcm)
    os << " m=" << fcm.fuzzifier << " tol=" << fcm.tol << " max_iter=" << fcm.max_iter
       << " seed=" << fcm.seed;
  return os.str();
}

SelectionMethod ParseSelection(const std::string &text, const FcmOptions &fcm) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw InvalidInput("frame selection '" + text + "' must look like middle:3 or fcm:3");
  SelectionMethod method;
  method.kind = ParseSelectionKind(text.substr(0, colon));
  try {
    std::size_t used = 0;
    const auto k = std::stoul(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw InvalidInput("trailing characters");
    method.k = k;
  } catch (const std::exception &) {
    throw InvalidInput("bad K in frame selection '" + text + "'");
  }
  method.fcm = fcm;
  method.Validate();
  return method;
}

std::vector<std::size_t> MiddleIndices(std::size_t n, std::size_t k) {
  if (n == 0) throw InvalidInput("frame selection on an empty feature matrix");
  if (k == 0) throw InvalidInput("K must be >= 1");
  const std::size_t take = std::min(n, k);
  const std::size_t start = n >= k ? (n - k) / 2 : 0;
  std::vector<std::size_t> idx(take);
  std::iota(idx.begin(), idx.end(), start);
  return idx;
}

Matrix SelectMiddle(const Matrix &features, std::size_t k) {
  const auto idx = MiddleIndices(features.rows(), k);
  return features.SelectRows(idx);
}

FcmState FcmCluster(const Matrix &features, std::size_t clusters, const FcmOptions &options) {
  const std::size_t n = features.rows();
  if (clusters < 1) throw InvalidInput("FCM needs at least one cluster");
  if (n < clusters) throw InvalidInput("FCM needs at least as many points as clusters");
  if (!(options.fuzzifier > 1.0)) throw InvalidInput("fuzzifier must exceed 1");
  if (!(options.tol > 0.0)) throw InvalidInput("FCM tolerance must be positive");

  const double m = options.fuzzifier;
  FcmState state;
  const auto seeds = SeededDistinctRows(n, clusters, options.seed);
  state.centers = features.SelectRows(seeds);
  state.membership = Matrix(n, clusters);
  UpdateMembership(features, state.centers, m, state.membership);
  state.objective = Objective(features, state.centers, state.membership, m);
  state.objective_history.push_back(state.objective);

  Matrix previous;
  for (std::size_t it = 0; it < options.max_iter; ++it) {
    previous = state.centers;
    UpdateCenters(features, state.membership, m, state.centers);
    UpdateMembership(features, state.centers, m, state.membership);
    state.objective = Objective(features, state.centers, state.membership, m);
    state.objective_history.push_back(state.objective);
    state.iterations = it + 1;

    double shift = 0.0;
    for (std::size_t c = 0; c < clusters; ++c)
      shift = std::max(shift, std::sqrt(SquaredDistance(previous.row(c), state.centers.row(c))));
    if (shift < options.tol) {
      state.converged = true;
      break;
    }
  }
  return state;
}

std::vector<std::size_t> FcmIndices(const Matrix &features, std::size_t k,
                                    const FcmOptions &options) {
  if (features.empty()) throw InvalidInput("frame selection on an empty feature matrix");
  if (k == 0) throw InvalidInput("K must be >= 1");
  const std::size_t clusters = std::min(k, features.rows());
  const FcmState state = FcmCluster(features, clusters, options);
  std::vector<std::size_t> picked;
  for (std::size_t c = 0; c < clusters; ++c) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < features.rows(); ++i)
      if (state.membership(i, c) > state.membership(best, c)) best = i;
    picked.push_back(best);
  }
  std::sort(picked.begin(), picked.end());
  picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
  return picked;
}

Matrix FcmSelect(const Matrix &features, std::size_t k, const FcmOptions &options) {
  const auto idx = FcmIndices(features, k, options);
  return features.SelectRows(idx);
}

Matrix SelectFrames(const Matrix &features, const SelectionMethod &method) {
  method.Validate();
  return method.kind == SelectionKind::kMiddle ? SelectMiddle(features, method.k)
                                               : FcmSelect(features, method.k, method.fcm);
}

}  // namespace vowelkit
