// core/src/kernels.cc

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

#include "vowelkit/kernels.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vowelkit {

std::string ToString(KernelKind kind) {
  switch (kind) {
    case KernelKind::kLinear: return "linear";
    case KernelKind::kPolynomial: return "polynomial";
    case KernelKind::kRbf: return "rbf";
    case KernelKind::kSigmoid: return "sigmoid";
  }
  return "unknown";
}

KernelKind ParseKernelKind(const std::string &name) {
  if (name == "linear") return KernelKind::kLinear;
  if (name == "polynomial" || name == "poly") return KernelKind::kPolynomial;
  if (name == "rbf") return KernelKind::kRbf;
  if (name == "sigmoid") return KernelKind::kSigmoid;
  throw InvalidInput("unknown kernel '" + name + "'");
}

void KernelSpec::Validate() const {
  if (!std::isfinite(sigma) || !std::isfinite(r)) throw InvalidInput("kernel parameters must be finite");
  if (kind == KernelKind::kRbf && !(sigma > 0.0)) throw InvalidInput("rbf sigma must be positive");
  if (kind == KernelKind::kPolynomial) {
    if (!(sigma > 0.0)) throw InvalidInput("polynomial sigma must be positive");
    if (degree < 1) throw InvalidInput("polynomial degree must be >= 1");
  }
}

std::string KernelSpec::Describe() const { return ToJson(*this).dump(); }

nlohmann::json ToJson(const KernelSpec &spec) {
  nlohmann::json j;
  j["kind"] = ToString(spec.kind);
  switch (spec.kind) {
    case KernelKind::kLinear: break;
    case KernelKind::kPolynomial:
      j["sigma"] = spec.sigma;
      j["r"] = spec.r;
      j["d"] = spec.degree;
      break;
    case KernelKind::kRbf: j["sigma"] = spec.sigma; break;
    case KernelKind::kSigmoid:
      j["sigma"] = spec.sigma;
      j["r"] = spec.r;
      break;
  }
  return j;
}

KernelSpec KernelSpecFromJson(const nlohmann::json &j) {
  try {
    const auto kind = ParseKernelKind(j.at("kind").get<std::string>());
    KernelSpec spec;
    switch (kind) {
      case KernelKind::kLinear: spec = KernelSpec::Linear(); break;
      case KernelKind::kPolynomial:
        spec = KernelSpec::Polynomial(j.at("sigma").get<double>(), j.value("r", 0.0),
                                      j.value("d", 3));
        break;
      case KernelKind::kRbf: spec = KernelSpec::Rbf(j.at("sigma").get<double>()); break;
      case KernelKind::kSigmoid:
        spec = KernelSpec::Sigmoid(j.at("sigma").get<double>(), j.value("r", 0.0));
        break;
    }
    spec.Validate();
    return spec;
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(std::string("bad kernel spec: ") + e.what());
  } catch (const InvalidInput &e) {
    throw FormatError(std::string("bad kernel spec: ") + e.what());
  }
}

double KernelEval(const KernelSpec &spec, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidInput("kernel operands differ in dimension");
  switch (spec.kind) {
    case KernelKind::kLinear: return Dot(x, y);
    case KernelKind::kPolynomial: {
      const double base = spec.sigma * Dot(x, y) + spec.r;
      double out = 1.0;
      for (int i = 0; i < spec.degree; ++i) out *= base;
      return out;
    }
    case KernelKind::kRbf: return std::exp(-spec.sigma * SquaredDistance(x, y));
    case KernelKind::kSigmoid: return std::tanh(spec.sigma * Dot(x, y) + spec.r);
  }
  return 0.0;
}

Matrix GramMatrix(const KernelSpec &spec, const Matrix &x, const Matrix &y) {
  if (!x.empty() && !y.empty() && x.cols() != y.cols())
    throw InvalidInput("Gram operands differ in dimension");
  Matrix g(x.rows(), y.rows());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < y.rows(); ++j) g(i, j) = KernelEval(spec, x.row(i), y.row(j));
  return g;
}

std::vector<double> SymmetricEigenvalues(const Matrix &input) {
  const std::size_t n = input.rows();
  if (n != input.cols()) throw InvalidInput("eigenvalues need a square matrix");
  Matrix a = input;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        total += a(i, j) * a(i, j);
        if (i != j) off += a(i, j) * a(i, j);
      }
    if (off <= 1e-30 * std::max(total, 1e-300)) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

PsdReport PsdCheck(const Matrix &gram, double tol) {
  const std::size_t n = gram.rows();
  if (n == 0 || n != gram.cols()) throw InvalidInput("PSD check needs a non-empty square matrix");
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    trace += gram(i, i);
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(gram(i, j) - gram(j, i)) > 1e-9)
        throw InvalidInput("PSD check needs a symmetric matrix");
  }
  PsdReport report;
  report.min_eigenvalue = SymmetricEigenvalues(gram).front();
  report.is_psd = report.min_eigenvalue >= -tol * std::max(1.0, trace);
  return report;
}

}  // namespace vowelkit
