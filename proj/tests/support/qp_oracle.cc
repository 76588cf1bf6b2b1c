// tests/support/qp_oracle.cc

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

#include "qp_oracle.h"

#include <algorithm>
#include <cmath>

namespace vowelkit::testing {

namespace {

std::vector<double> Project(const std::vector<double> &v, const std::vector<int> &y, double c) {
  const std::size_t n = v.size();
  auto at = [&](double lambda, std::vector<double> &out) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = std::clamp(v[i] - lambda * y[i], 0.0, c);
      s += y[i] * out[i];
    }
    return s;
  };
  std::vector<double> out(n);
  // s(lambda) is non-increasing in lambda.
  double lo = -1.0, hi = 1.0;
  while (at(lo, out) < 0.0) lo *= 2.0;
  while (at(hi, out) > 0.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (at(mid, out) > 0.0) lo = mid;
    else hi = mid;
  }
  at(0.5 * (lo + hi), out);
  return out;
}

}  // namespace

QpSolution SolveDualQp(const Matrix &x, const std::vector<int> &y, const KernelSpec &kernel,
                       double c, int iterations) {
  const std::size_t n = x.rows();
  std::vector<double> q(n * n);
  double frob = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      q[i * n + j] = y[i] * y[j] * KernelEval(kernel, x.row(i), x.row(j));
      frob += q[i * n + j] * q[i * n + j];
    }
  const double step = 1.0 / std::max(std::sqrt(frob), 1e-12);
  auto objective = [&](const std::vector<double> &a) {
    double s = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s += a[i];
      for (std::size_t j = 0; j < n; ++j) quad += a[i] * a[j] * q[i * n + j];
    }
    return s - 0.5 * quad;
  };

  std::vector<double> a(n, 0.0), prev = a, z = a, grad(n), trial(n);
  double t = 1.0;
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double g = 1.0;
      for (std::size_t j = 0; j < n; ++j) g -= q[i * n + j] * z[j];
      trial[i] = z[i] + step * g;
    }
    prev = a;
    a = Project(trial, y, c);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    for (std::size_t i = 0; i < n; ++i) z[i] = a[i] + (t - 1.0) / t_next * (a[i] - prev[i]);
    t = t_next;
    // Restart momentum when the objective drops.
    if (objective(a) < objective(prev)) {
      z = a;
      t = 1.0;
    }
  }
  return {a, objective(a)};
}

}  // namespace vowelkit::testing
