// core/include/vowelkit/error.h

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

#ifndef VOWELKIT_ERROR_H_
#define VOWELKIT_ERROR_H_

#include <stdexcept>
#include <string>

namespace vowelkit {

// Base of every exception the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by caller-supplied data (empty input, dimension
// mismatch, out-of-range parameter).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Signal shorter than a single analysis frame.
class TooShort : public Error {
 public:
  using Error::Error;
};

// Linear prediction hit a non-positive prediction-error variance.
class DegenerateSpectrum : public Error {
 public:
  using Error::Error;
};

// Malformed or unsupported file contents.
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace vowelkit

#endif  // VOWELKIT_ERROR_H_
