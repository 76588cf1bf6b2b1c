// core/include/vowelkit/svm_core.h

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

#ifndef VOWELKIT_SVM_CORE_H_
#define VOWELKIT_SVM_CORE_H_

#include <cstddef>
#include <functional>
#include <list>
#include <span>
#include <unordered_map>
#include <vector>

#include "vowelkit/kernels.h"
#include "vowelkit/matrix.h"

namespace vowelkit {

// Training set of a two-class problem; labels are -1 or +1.
struct BinaryProblem {
  Matrix x;
  std::vector<int> y;

  // Throws InvalidInput unless l >= 2, both labels occur and rows are finite.
  void Validate() const;
};

struct SvmParams {
  double c = 1.0;
  KernelSpec kernel;
  double kkt_tol = 1e-3;
  double alpha_eps = 1e-12;
  std::size_t max_passes = 10;
  // 0 selects 100 * l.
  std::size_t max_iter = 0;
  // Problems up to this many rows get the whole Gram matrix cached; larger
  // ones use a row LRU cache bounded by cache_bytes.
  std::size_t full_cache_rows = 4000;
  std::size_t cache_bytes = std::size_t{256} << 20;

  void Validate() const;
};

// f(x) = sum_i alpha_i y_i K(sv_i, x) + bias, over support vectors only.
struct BinaryModel {
  Matrix support_vectors;
  std::vector<double> alphas;
  std::vector<int> labels;
  double bias = 0.0;
  KernelSpec kernel;
  // False when training stopped at max_iter; the model is still usable.
  bool converged = true;
  std::size_t iterations = 0;

  std::size_t size() const { return alphas.size(); }
};

// Kernel values over one training set. Either the full symmetric Gram
// matrix or an LRU cache of rows; both return identical values.
class KernelCache {
 public:
  KernelCache(const Matrix &x, const KernelSpec &kernel, std::size_t full_cache_rows,
              std::size_t cache_bytes);

  // Row i of the Gram matrix. The span stays valid until two further Row()
  // calls have been made.
  std::span<const double> Row(std::size_t i);
  double Diagonal(std::size_t i) const { return diagonal_[i]; }
  bool is_full() const { return full_; }

 private:
  const Matrix &x_;
  KernelSpec kernel_;
  bool full_ = false;
  Matrix gram_;
  std::vector<double> diagonal_;
  std::size_t capacity_ = 2;
  std::list<std::pair<std::size_t, std::vector<double>>> lru_;
  std::unordered_map<std::size_t, decltype(lru_)::iterator> index_;
};

// Dual solution over the whole training set.
struct DualSolution {
  std::vector<double> alphas;
  double bias = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  std::size_t full_passes = 0;
};

// Called after every accepted pairwise update with all multipliers and the
// current bias.
using SmoObserver = std::function<void(std::span<const double> alphas, double bias)>;

// Platt's sequential minimal optimization with the |E1 - E2| second-choice
// heuristic. Stops after max_passes consecutive sweeps over all examples in
// which no multiplier moved by more than alpha_eps (or immediately after a
// sweep with no update at all), or after max_iter accepted updates.
DualSolution SolveDual(const BinaryProblem &problem, const SvmParams &params,
                       const SmoObserver &observer = {});

BinaryModel SmoTrain(const BinaryProblem &problem, const SvmParams &params);

double DecisionValue(const BinaryModel &model, std::span<const double> x);

// +1 when f(x) >= 0.
int PredictBinary(const BinaryModel &model, std::span<const double> x);

// xi_i = max(0, 1 - y_i f(x_i)).
std::vector<double> ComputeSlacks(const BinaryModel &model, const BinaryProblem &problem);

// sum alpha - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij over the model's
// support vectors.
double DualObjective(const BinaryModel &model);
// Same quantity for a full multiplier vector over |problem|.
double DualObjective(const BinaryProblem &problem, const KernelSpec &kernel,
                     std::span<const double> alphas);

}  // namespace vowelkit

#endif  // VOWELKIT_SVM_CORE_H_
