// core/include/vowelkit/kernels.h

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

#ifndef VOWELKIT_KERNELS_H_
#define VOWELKIT_KERNELS_H_

#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "vowelkit/matrix.h"

namespace vowelkit {

enum class KernelKind { kLinear, kPolynomial, kRbf, kSigmoid };

std::string ToString(KernelKind kind);
KernelKind ParseKernelKind(const std::string &name);

// Kernel choice with its parameters. |sigma| is the scale shared by all
// three non-linear kernels: polynomial slope, RBF width, sigmoid scale.
//   polynomial: (sigma * <x,y> + r)^d
//   rbf:        exp(-sigma * |x - y|^2)
//   sigmoid:    tanh(sigma * <x,y> + r)
//   linear:     <x,y>
struct KernelSpec {
  KernelKind kind = KernelKind::kRbf;
  double sigma = 1.0;
  double r = 0.0;
  int degree = 3;

  static KernelSpec Linear() { return {KernelKind::kLinear, 1.0, 0.0, 1}; }
  static KernelSpec Polynomial(double sigma, double r = 0.0, int degree = 3) {
    return {KernelKind::kPolynomial, sigma, r, degree};
  }
  static KernelSpec Rbf(double sigma) { return {KernelKind::kRbf, sigma, 0.0, 3}; }
  static KernelSpec Sigmoid(double sigma, double r = 0.0) {
    return {KernelKind::kSigmoid, sigma, r, 3};
  }

  void Validate() const;
  std::string Describe() const;
  bool operator==(const KernelSpec &) const = default;
};

// {"kind":"rbf","sigma":0.027}; only the parameters of the variant are written.
nlohmann::json ToJson(const KernelSpec &spec);
KernelSpec KernelSpecFromJson(const nlohmann::json &j);

double KernelEval(const KernelSpec &spec, std::span<const double> x, std::span<const double> y);

// G[i][j] = K(X_i, Y_j).
Matrix GramMatrix(const KernelSpec &spec, const Matrix &x, const Matrix &y);

struct PsdReport {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
};

// Smallest eigenvalue via cyclic Jacobi rotations; PSD when it is at least
// -tol * max(1, trace). Throws InvalidInput on asymmetric input.
PsdReport PsdCheck(const Matrix &gram, double tol);

// All eigenvalues of a symmetric matrix, ascending.
std::vector<double> SymmetricEigenvalues(const Matrix &a);

}  // namespace vowelkit

#endif  // VOWELKIT_KERNELS_H_
