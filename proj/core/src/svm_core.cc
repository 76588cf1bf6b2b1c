// core/src/svm_core.cc

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

#include "vowelkit/svm_core.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace vowelkit {

void BinaryProblem::Validate() const {
  if (x.rows() != y.size()) throw InvalidInput("label count does not match row count");
  if (x.rows() < 2) throw InvalidInput("a binary problem needs at least 2 samples");
  bool pos = false, neg = false;
  for (int label : y) {
    if (label == 1) pos = true;
    else if (label == -1) neg = true;
    else throw InvalidInput("binary labels must be -1 or +1");
  }
  if (!pos || !neg) throw InvalidInput("a binary problem needs both classes");
  for (double v : x.data())
    if (!std::isfinite(v)) throw InvalidInput("training data contains non-finite values");
}

void SvmParams::Validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidInput("C must be positive");
  if (!(kkt_tol > 0.0)) throw InvalidInput("kkt_tol must be positive");
  if (!(alpha_eps >= 0.0)) throw InvalidInput("alpha_eps must be non-negative");
  if (max_passes == 0) throw InvalidInput("max_passes must be positive");
  kernel.Validate();
}

KernelCache::KernelCache(const Matrix &x, const KernelSpec &kernel,
                         std::size_t full_cache_rows, std::size_t cache_bytes)
    : x_(x), kernel_(kernel), full_(x.rows() <= full_cache_rows) {
  const std::size_t n = x.rows();
  diagonal_.resize(n);
  for (std::size_t i = 0; i < n; ++i) diagonal_[i] = KernelEval(kernel_, x.row(i), x.row(i));
  if (full_) {
    gram_ = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      gram_(i, i) = diagonal_[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = KernelEval(kernel_, x.row(i), x.row(j));
        gram_(i, j) = v;
        gram_(j, i) = v;
      }
    }
  } else {
    capacity_ = std::max<std::size_t>(2, cache_bytes / (sizeof(double) * std::max<std::size_t>(n, 1)));
  }
}

std::span<const double> KernelCache::Row(std::size_t i) {
  if (full_) return gram_.row(i);
  if (auto it = index_.find(i); it != index_.end()) {
    lru_.splice(lru_.begin(), lru_, it->second);
    return lru_.front().second;
  }
  if (lru_.size() >= capacity_) {
    index_.erase(lru_.back().first);
    lru_.pop_back();
  }
  std::vector<double> values(x_.rows());
  for (std::size_t j = 0; j < values.size(); ++j)
    values[j] = j == i ? diagonal_[i] : KernelEval(kernel_, x_.row(i), x_.row(j));
  lru_.emplace_front(i, std::move(values));
  index_[i] = lru_.begin();
  return lru_.front().second;
}

namespace {

class SmoSolver {
 public:
  SmoSolver(const BinaryProblem &problem, const SvmParams &params, const SmoObserver &observer)
      : problem_(problem),
        params_(params),
        observer_(observer),
        n_(problem.x.rows()),
        c_(params.c),
        cache_(problem.x, params.kernel, params.full_cache_rows, params.cache_bytes),
        alpha_(n_, 0.0),
        error_(n_),
        rng_(0) {
    for (std::size_t i = 0; i < n_; ++i) error_[i] = -problem.y[i];
    max_iter_ = params.max_iter ? params.max_iter : 100 * n_;
  }

  DualSolution Run() {
    DualSolution sol;
    bool examine_all = true;
    std::size_t quiet_passes = 0;
    while (true) {
      std::size_t changed = 0;
      largest_step_ = 0.0;
      const std::size_t start = rng_() % n_;
      for (std::size_t k = 0; k < n_ && iterations_ < max_iter_; ++k) {
        const std::size_t i = (start + k) % n_;
        if (examine_all || IsFree(i)) changed += ExamineExample(i);
      }
      if (iterations_ >= max_iter_) break;
      if (examine_all) {
        ++sol.full_passes;
        if (changed == 0) {
          sol.converged = true;
          break;
        }
        quiet_passes = largest_step_ <= params_.alpha_eps ? quiet_passes + 1 : 0;
        if (quiet_passes >= params_.max_passes) {
          sol.converged = true;
          break;
        }
        examine_all = false;
      } else if (changed == 0) {
        examine_all = true;
      }
    }
    FinalizeBias();
    sol.alphas = alpha_;
    sol.bias = bias_;
    sol.iterations = iterations_;
    return sol;
  }

 private:
  bool IsFree(std::size_t i) const { return alpha_[i] > 0.0 && alpha_[i] < c_; }

  int ExamineExample(std::size_t i2) {
    const double y2 = problem_.y[i2];
    const double a2 = alpha_[i2];
    const double e2 = error_[i2];
    const double r2 = e2 * y2;
    const double tol = params_.kkt_tol;
    if (!((r2 < -tol && a2 < c_) || (r2 > tol && a2 > 0.0))) return 0;

    // Second choice: the free example maximizing |E1 - E2|.
    std::size_t best = n_;
    double best_gap = -1.0;
    std::size_t free_count = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!IsFree(i)) continue;
      ++free_count;
      const double gap = std::abs(error_[i] - e2);
      if (gap > best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    if (free_count > 1 && best != n_ && TakeStep(best, i2)) return 1;

    std::size_t start = rng_() % n_;
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t i1 = (start + k) % n_;
      if (IsFree(i1) && TakeStep(i1, i2)) return 1;
    }
    start = rng_() % n_;
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t i1 = (start + k) % n_;
      if (TakeStep(i1, i2)) return 1;
    }
    return 0;
  }

  // Terms of the dual objective that depend on the pair (a1, a2).
  double PairObjective(double a1, double a2, double k11, double k12, double k22, double s,
                       double v1, double v2, double y1, double y2) const {
    return a1 + a2 - 0.5 * (a1 * a1 * k11 + a2 * a2 * k22 + 2.0 * s * a1 * a2 * k12) -
           y1 * a1 * v1 - y2 * a2 * v2;
  }

  bool TakeStep(std::size_t i1, std::size_t i2) {
    if (i1 == i2) return false;
    const double y1 = problem_.y[i1], y2 = problem_.y[i2];
    const double a1 = alpha_[i1], a2 = alpha_[i2];
    const double e1 = error_[i1], e2 = error_[i2];
    const double s = y1 * y2;
    double lo, hi;
    if (s < 0) {
      lo = std::max(0.0, a2 - a1);
      hi = std::min(c_, c_ + a2 - a1);
    } else {
      lo = std::max(0.0, a1 + a2 - c_);
      hi = std::min(c_, a1 + a2);
    }
    if (lo >= hi) return false;

    const double k11 = cache_.Diagonal(i1), k22 = cache_.Diagonal(i2);
    const double k12 = cache_.Row(i1)[i2];
    const double eta = k11 + k22 - 2.0 * k12;

    double a2_new;
    if (eta > 0.0) {
      a2_new = std::clamp(a2 + y2 * (e1 - e2) / eta, lo, hi);
    } else {
      // Non-positive curvature along the constraint line (indefinite
      // kernels, duplicate points): take the better end of the segment.
      const double v1 = e1 + y1 - bias_ - a1 * y1 * k11 - a2 * y2 * k12;
      const double v2 = e2 + y2 - bias_ - a1 * y1 * k12 - a2 * y2 * k22;
      const double w_lo = PairObjective(a1 + s * (a2 - lo), lo, k11, k12, k22, s, v1, v2, y1, y2);
      const double w_hi = PairObjective(a1 + s * (a2 - hi), hi, k11, k12, k22, s, v1, v2, y1, y2);
      const double slack = 1e-12 * (1.0 + std::abs(w_lo) + std::abs(w_hi));
      if (w_lo > w_hi + slack) a2_new = lo;
      else if (w_hi > w_lo + slack) a2_new = hi;
      else a2_new = a2;
    }
    const double snap = params_.alpha_eps * c_;
    if (a2_new < snap) a2_new = 0.0;
    else if (a2_new > c_ - snap) a2_new = c_;

    if (std::abs(a2_new - a2) < 1e-15 * (a2_new + a2 + 1e-15)) return false;

    double a1_new = a1 + s * (a2 - a2_new);
    if (a1_new < 0.0) {
      a2_new += s * a1_new;
      a1_new = 0.0;
    } else if (a1_new > c_) {
      a2_new += s * (a1_new - c_);
      a1_new = c_;
    }

    const double d1 = y1 * (a1_new - a1);
    const double d2 = y2 * (a2_new - a2);
    const double b1 = bias_ - e1 - d1 * k11 - d2 * k12;
    const double b2 = bias_ - e2 - d1 * k12 - d2 * k22;
    const bool free1 = a1_new > 0.0 && a1_new < c_;
    const bool free2 = a2_new > 0.0 && a2_new < c_;
    double b_new;
    if (free1 && free2) b_new = 0.5 * (b1 + b2);
    else if (free1) b_new = b1;
    else if (free2) b_new = b2;
    else b_new = 0.5 * (b1 + b2);

    const auto row1 = cache_.Row(i1);
    const auto row2 = cache_.Row(i2);
    const double db = b_new - bias_;
    for (std::size_t i = 0; i < n_; ++i) error_[i] += d1 * row1[i] + d2 * row2[i] + db;

    largest_step_ = std::max({largest_step_, std::abs(a1_new - a1), std::abs(a2_new - a2)});
    alpha_[i1] = a1_new;
    alpha_[i2] = a2_new;
    bias_ = b_new;
    ++iterations_;
    if (observer_) observer_(alpha_, bias_);
    return true;
  }

  // Recomputes b from the KKT conditions: the mean over free examples, or
  // the midpoint of the feasible interval when none is free.
  void FinalizeBias() {
    double sum = 0.0;
    std::size_t free_count = 0;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_; ++i) {
      const double yi = problem_.y[i];
      const double bi = bias_ - error_[i];  // y_i - sum_j alpha_j y_j K_ij
      if (IsFree(i)) {
        sum += bi;
        ++free_count;
      } else if ((yi > 0) == (alpha_[i] == 0.0)) {
        lower = std::max(lower, bi);
      } else {
        upper = std::min(upper, bi);
      }
    }
    double b;
    if (free_count > 0) b = sum / static_cast<double>(free_count);
    else if (std::isfinite(lower) && std::isfinite(upper)) b = 0.5 * (lower + upper);
    else if (std::isfinite(lower)) b = lower;
    else if (std::isfinite(upper)) b = upper;
    else b = bias_;
    for (double &e : error_) e += b - bias_;
    bias_ = b;
  }

  const BinaryProblem &problem_;
  const SvmParams &params_;
  const SmoObserver &observer_;
  std::size_t n_;
  double c_;
  KernelCache cache_;
  std::vector<double> alpha_;
  std::vector<double> error_;  // f(x_i) - y_i
  double bias_ = 0.0;
  std::size_t iterations_ = 0;
  std::size_t max_iter_ = 0;
  double largest_step_ = 0.0;
  std::mt19937_64 rng_;
};

}  // namespace

DualSolution SolveDual(const BinaryProblem &problem, const SvmParams &params,
                       const SmoObserver &observer) {
  problem.Validate();
  params.Validate();
  return SmoSolver(problem, params, observer).Run();
}

BinaryModel SmoTrain(const BinaryProblem &problem, const SvmParams &params) {
  const DualSolution sol = SolveDual(problem, params);
  BinaryModel model;
  model.kernel = params.kernel;
  model.bias = sol.bias;
  model.converged = sol.converged;
  model.iterations = sol.iterations;
  for (std::size_t i = 0; i < sol.alphas.size(); ++i) {
    if (sol.alphas[i] <= 0.0) continue;
    model.support_vectors.AppendRow(problem.x.row(i));
    model.alphas.push_back(sol.alphas[i]);
    model.labels.push_back(problem.y[i]);
  }
  return model;
}

double DecisionValue(const BinaryModel &model, std::span<const double> x) {
  if (model.size() > 0 && x.size() != model.support_vectors.cols())
    throw InvalidInput("input dimension " + std::to_string(x.size()) +
                       " does not match the model's " +
                       std::to_string(model.support_vectors.cols()));
  double f = model.bias;
  for (std::size_t i = 0; i < model.size(); ++i)
    f += model.alphas[i] * model.labels[i] * KernelEval(model.kernel, model.support_vectors.row(i), x);
  return f;
}

int PredictBinary(const BinaryModel &model, std::span<const double> x) {
  return DecisionValue(model, x) >= 0.0 ? 1 : -1;
}

std::vector<double> ComputeSlacks(const BinaryModel &model, const BinaryProblem &problem) {
  std::vector<double> xi(problem.x.rows());
  for (std::size_t i = 0; i < xi.size(); ++i)
    xi[i] = std::max(0.0, 1.0 - problem.y[i] * DecisionValue(model, problem.x.row(i)));
  return xi;
}

double DualObjective(const BinaryModel &model) {
  double linear = 0.0, quad = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    linear += model.alphas[i];
    for (std::size_t j = 0; j < model.size(); ++j)
      quad += model.alphas[i] * model.alphas[j] * model.labels[i] * model.labels[j] *
              KernelEval(model.kernel, model.support_vectors.row(i), model.support_vectors.row(j));
  }
  return linear - 0.5 * quad;
}

double DualObjective(const BinaryProblem &problem, const KernelSpec &kernel,
                     std::span<const double> alphas) {
  if (alphas.size() != problem.x.rows()) throw InvalidInput("one multiplier per sample expected");
  double linear = 0.0, quad = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    linear += alphas[i];
    if (alphas[i] == 0.0) continue;
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      if (alphas[j] == 0.0) continue;
      quad += alphas[i] * alphas[j] * problem.y[i] * problem.y[j] *
              KernelEval(kernel, problem.x.row(i), problem.x.row(j));
    }
  }
  return linear - 0.5 * quad;
}

}  // namespace vowelkit
