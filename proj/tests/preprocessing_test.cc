// tests/preprocessing_test.cc

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

#include <gtest/gtest.h>

#include "synth.h"
#include "vowelkit/error.h"
#include "vowelkit/preprocessing.h"

namespace vowelkit {
namespace {

TEST(Scaler, FitColumnExtremes) {
  const auto p = FitScaler(Matrix::FromRows({{2.0}, {4.0}, {6.0}}));
  EXPECT_EQ(p.mins, std::vector<double>{2.0});
  EXPECT_EQ(p.maxs, std::vector<double>{6.0});
  const auto c = FitScaler(Matrix::FromRows({{5.0}, {5.0}, {5.0}}));
  EXPECT_EQ(c.mins, c.maxs);
  const auto two = FitScaler(Matrix::FromRows({{0.0, 10.0}, {4.0, 30.0}}));
  EXPECT_EQ(two.mins, (std::vector<double>{0.0, 10.0}));
  EXPECT_EQ(two.maxs, (std::vector<double>{4.0, 30.0}));
  EXPECT_THROW(FitScaler(Matrix(0, 3)), InvalidInput);
}

TEST(Scaler, ApplyExamples) {
  const Matrix x = Matrix::FromRows({{2.0}, {4.0}, {6.0}});
  const Matrix y = ApplyScaler(FitScaler(x), x);
  EXPECT_EQ(y, Matrix::FromRows({{0.0}, {0.5}, {1.0}}));
  const Matrix c = Matrix::FromRows({{5.0}, {5.0}});
  EXPECT_EQ(ApplyScaler(FitScaler(c), c), Matrix::FromRows({{0.0}, {0.0}}));
  const auto p = FitScaler(Matrix::FromRows({{0.0}, {10.0}}));
  EXPECT_EQ(ApplyScaler(p, std::vector<double>{15.0}), std::vector<double>{1.0});
  EXPECT_EQ(ApplyScaler(p, std::vector<double>{-3.0}), std::vector<double>{0.0});
  EXPECT_THROW(ApplyScaler(p, Matrix(2, 2)), InvalidInput);
  EXPECT_THROW(ApplyScaler(p, std::vector<double>{1.0, 2.0}), InvalidInput);
}

TEST(Scaler, TrainingRowsFillUnitRange) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Matrix x = vowelkit::testing::RandomMatrix(40, 6, -50, 50, seed);
    for (std::size_t r = 0; r < x.rows(); ++r) x(r, 3) = 7.0;
    const Matrix y = ApplyScaler(FitScaler(x), x);
    for (std::size_t c = 0; c < 6; ++c) {
      double lo = 1e300, hi = -1e300;
      for (std::size_t r = 0; r < y.rows(); ++r) {
        ASSERT_GE(y(r, c), 0.0);
        ASSERT_LE(y(r, c), 1.0);
        lo = std::min(lo, y(r, c));
        hi = std::max(hi, y(r, c));
      }
      EXPECT_EQ(lo, 0.0);
      EXPECT_EQ(hi, c == 3 ? 0.0 : 1.0);
    }
  }
}

TEST(Scaler, RefitIsIdempotent) {
  const Matrix x = vowelkit::testing::RandomMatrix(30, 4, -2, 9, 5);
  const Matrix once = ApplyScaler(FitScaler(x), x);
  const Matrix twice = ApplyScaler(FitScaler(once), once);
  for (std::size_t i = 0; i < once.data().size(); ++i) EXPECT_NEAR(twice.data()[i], once.data()[i], 1e-15);
}

TEST(Scaler, FitDependsOnlyOnGivenRows) {
  const Matrix train = vowelkit::testing::RandomMatrix(30, 4, 0, 1, 1);
  const Matrix test = vowelkit::testing::RandomMatrix(30, 4, -5, 5, 2);
  Matrix both = train;
  both.AppendRows(test);
  EXPECT_NE(FitScaler(train), FitScaler(both));
  EXPECT_EQ(FitScaler(train), FitScaler(train));
}

}  // namespace
}  // namespace vowelkit
